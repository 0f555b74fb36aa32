"""Compare fixed-length tandem closures with the binomial bin count.

Usage: python3 scripts/tandem_oracle_sweep.py [sigma] [max_seed_length] [max_k] [max_copies]
"""

import itertools
import sys

from repcap.closure import Budget, enumerate_closure, tandem_bins_count
from repcap.rules import make_system


def main(sigma=3, max_n=5, max_k=3, max_m=4):
    cases = bad = 0
    for n in range(1, max_n + 1):
        for s in itertools.product(range(sigma), repeat=n):
            text = "".join(map(str, s))
            for k in range(1, min(max_k, n) + 1):
                prof = enumerate_closure(make_system("tan", text, k, alphabet=sigma), Budget(n + max_m * k))
                for m in range(max_m + 1):
                    cases += 1
                    got, want = prof.count(n + m * k), tandem_bins_count(s, k, m)
                    if got != want:
                        bad += 1
                        print(f"mismatch s={text} k={k} m={m}: enumerated {got}, binomial {want}")
    print(f"cases={cases} mismatches={bad}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(*[int(a) for a in sys.argv[1:5]]))
