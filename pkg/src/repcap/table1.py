"""Reversed-tandem reference counts and their recomputation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Tuple

from .closure import Budget, LevelProfile, enumerate_closure
from .rules import make_system

# (seed, k) -> N(n) for n = k, 2k, ..., 7k
REFERENCE_COUNTS = {
    ("01", 2): (1, 1, 3, 10, 37, 145, 584),
    ("010", 3): (1, 1, 3, 14, 78, 467, 2894),
    ("012", 3): (1, 1, 4, 25, 182, 1423, 11577),
}

# floor-to-two-decimals lower bounds derived from the n = 7k counts
REFERENCE_BOUNDS = {("01", 2): 0.65, ("010", 3): 0.54, ("012", 3): 0.64}


@dataclass
class TableRow:
    seed: str
    k: int
    lengths: Tuple[int, ...]
    expected: Tuple[int, ...]
    computed: Tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def profile_for(seed: str, k: int, p: int = 7) -> LevelProfile:
    return enumerate_closure(make_system("rt", seed, k), Budget(p * k))


def reproduce(enumerate_fn: Callable[[str, int], LevelProfile] = profile_for) -> List[TableRow]:
    rows = []
    for (seed, k), expected in REFERENCE_COUNTS.items():
        profile = enumerate_fn(seed, k)
        lengths = tuple(k * p for p in range(1, len(expected) + 1))
        rows.append(TableRow(seed, k, lengths, expected, tuple(profile.count(n) for n in lengths)))
    return rows


def format_rows(rows: List[TableRow]) -> str:
    out = []
    for row in rows:
        out.append(f"s={row.seed},k={row.k}")
        out.append("  n\texpected\tcomputed\tstatus")
        for n, e, c in zip(row.lengths, row.expected, row.computed):
            out.append(f"  {n}\t{e}\t{c}\t{'PASS' if e == c else 'FAIL'}")
    return "\n".join(out) + "\n"
