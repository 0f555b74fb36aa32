"""Exhaustive check that a gap system branches iff its seed is not gcd(k,k')-periodic.

Usage: python3 scripts/gap_zero_sweep.py [max_seed_length] [extra_blocks]
"""

import itertools
import math
import sys

from repcap.closure import iter_levels
from repcap.rules import make_system
from repcap.words import is_periodic


def branches(system, max_length):
    return any(len(level) >= 2 for _, level in iter_levels(system, max_length))


def main(max_n=6, blocks=6):
    rows = 0
    disagreements = []
    for n in range(2, max_n + 1):
        for k in range(1, n):
            kp = n - k
            for s in map("".join, itertools.product("01", repeat=n)):
                system = make_system("gap", s, k, kp, alphabet=2)
                periodic = is_periodic(system.seed, math.gcd(k, kp))
                rows += 1
                if periodic == branches(system, n + blocks * k):
                    disagreements.append((s, k, kp))
    print(f"systems={rows} disagreements={len(disagreements)}")
    for s, k, kp in disagreements:
        print(f"  s={s} k={k} k'={kp}")
    return 1 if disagreements else 0


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    sys.exit(main(*args))
