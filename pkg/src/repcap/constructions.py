"""Constructive procedures from the capacity proofs, as replayable traces.

Each procedure follows the explicit step sequence of its proof rather than
searching for a short derivation, so the returned trace length is what the
step-count bounds talk about. Positions below are 1-based where the comments
mirror the proofs; ``Rule.i`` is always the 0-based length of the prefix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Set

from .rules import Rule, Variant, apply
from .words import (
    Word,
    alpha_diversity,
    alpha_representation,
    hamming,
    occurrences,
)


class ConstructionError(ValueError):
    pass


@dataclass
class ConstructionResult:
    input: Word
    output: Word
    trace: List[Rule] = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.trace)


class _Builder:
    def __init__(self, x: Sequence[int]):
        self.input = tuple(x)
        self.x = tuple(x)
        self.trace: List[Rule] = []

    def do(self, rule: Rule) -> Word:
        y = apply(rule, self.x)
        if y == self.x:
            raise AssertionError(f"{rule} does not apply to a word of length {len(self.x)}")
        self.x = y
        self.trace.append(rule)
        return y

    def result(self) -> ConstructionResult:
        return ConstructionResult(self.input, self.x, self.trace)


def end_force_suffix(x: Sequence[int], k: int, w: Sequence[int]) -> ConstructionResult:
    """Append end-replication blocks until ``x`` ends with ``w`` (``|w| = k``).

    Uses at most ``2k`` steps: one prefix copy, one step for ``w_1`` and two
    steps for each later symbol.
    """
    x, w = tuple(x), tuple(w)
    if len(x) < k:
        raise ConstructionError(f"|x| = {len(x)} < k = {k}")
    if len(w) != k:
        raise ConstructionError(f"target suffix must have length k = {k}")
    if not alpha_representation(w) <= alpha_representation(x):
        raise ConstructionError("target uses symbols absent from x")
    b = _Builder(x)
    if x[len(x) - k:] == w:
        return b.result()
    base = b.do(Rule(Variant.END, 0, k))
    starts = range(len(base) - k + 1)
    # k-window of base ending with w_1 (0-based start p, so rule offset is p)
    p = next(p for p in starts if base[p + k - 1] == w[0])
    b.do(Rule(Variant.END, p, k))
    for j in range(1, k):
        p = next(p for p in starts if base[p] == w[j])
        prev_len = len(b.x)
        b.do(Rule(Variant.END, p, k))
        b.do(Rule(Variant.END, prev_len - k + 1, k))
    assert b.x[len(b.x) - k:] == w
    return b.result()


@dataclass
class CompactResult(ConstructionResult):
    window: int = 0  # 0-based start of the all-distinct window


def tandem_compact_distinct(s: Sequence[int]) -> CompactResult:
    """Tandem-copy blocks so that ``delta(s)`` distinct symbols become adjacent.

    Picks the first occurrence of each symbol; step ``j`` copies the block
    running from the ``(delta-j)``-th chosen position up to the freshly placed
    symbol, which drops one more distinct symbol right after the last chosen
    position.
    """
    s = tuple(s)
    delta = alpha_diversity(s)
    if delta < 2:
        raise ConstructionError("need at least two distinct symbols")
    seen = set()
    idx = []  # 1-based positions i_1 < ... < i_delta
    for pos, a in enumerate(s, start=1):
        if a not in seen:
            seen.add(a)
            idx.append(pos)
    b = _Builder(s)
    last = idx[-1]
    for j in range(1, delta):
        start = idx[delta - j - 1]
        b.do(Rule(Variant.TANDEM, start - 1, last - start + j))
    out = CompactResult(b.input, b.x, b.trace, window=last - 1)
    assert len(set(out.output[last - 1:last - 1 + delta])) == delta
    return out


@dataclass(frozen=True)
class RunPattern:
    """A run ``a^k`` next to a different symbol ``b``; ``start`` is 0-based."""

    start: int
    run_symbol: int
    other_symbol: int
    run_first: bool  # True for a^k b, False for b a^k


def tandem_gek_seed_prep(s: Sequence[int], k: int):
    """Apply tandem copies of the prefix with lengths ``k, k+1, ..., 2k-1``.

    Afterwards positions ``k+1..2k`` repeat the first symbol; the run they
    belong to borders a different symbol, giving ``a^k b`` or ``b a^k``.
    Returns ``(ConstructionResult, RunPattern)``.
    """
    s = tuple(s)
    if k < 1 or len(s) < k:
        raise ConstructionError(f"need |s| >= k >= 1, got |s| = {len(s)}, k = {k}")
    if alpha_diversity(s) < 2:
        raise ConstructionError("need at least two distinct symbols")
    b = _Builder(s)
    for length in range(k, 2 * k):
        b.do(Rule(Variant.TANDEM, 0, length))
    t = b.x
    a = t[0]
    assert all(c == a for c in t[k:2 * k])
    hi = 2 * k  # exclusive end of the maximal run containing positions k..2k-1
    while hi < len(t) and t[hi] == a:
        hi += 1
    if hi < len(t):
        pattern = RunPattern(hi - k, a, t[hi], True)
    else:
        lo = k
        while t[lo - 1] == a:
            lo -= 1
        pattern = RunPattern(lo - 1, a, t[lo - 1], False)
    return b.result(), pattern


def _rt_push(y: Word, k: int, a: int) -> ConstructionResult:
    b = _Builder(y)
    if y and y[-1] == a:
        return b.result()
    if len(y) < 2 * k:
        b.do(Rule(Variant.REVERSED, 0, k))
    y = b.x
    n = len(y)
    where = [p for p in range(1, n + 1) if y[p - 1] == a]
    good = [p for p in where if p >= k and n - p >= k]
    # nearest eligible copy to the end keeps derivations short
    i = good[-1] if good else where[0]
    if i < k:
        b.do(Rule(Variant.REVERSED, 0, k))
        i = 2 * k - i + 1
    elif n - i < k:
        b.do(Rule(Variant.REVERSED, i - k, k))

    def dist():
        return len(b.x) - i

    r = dist() % (k - 1)
    if k % 2 == 1 and r % 2 == 1:
        # copy the block starting at a; the original a moves k further from the end
        b.do(Rule(Variant.REVERSED, i - 1, k))
        r = dist() % (k - 1)
    if k % 2 == 0:
        shift, drop = k // 2, 1
    else:
        shift, drop = (k - 1) // 2, 2
    while r:
        b.do(Rule(Variant.REVERSED, i - shift, k))
        i += k + drop
        r -= drop
    while dist():
        b.do(Rule(Variant.REVERSED, i - 1, k))
        i += 2 * k - 1
    assert b.x[i - 1] == a and i == len(b.x)
    return b.result()


def rt_push_to_end(y: Sequence[int], k: int, a: int) -> ConstructionResult:
    """Reversed-tandem steps (block length ``k``) after which the word ends with ``a``.

    The word is first padded to length ``2k`` and a copy of ``a`` at least
    ``k`` away from both ends is secured. The distance to the end is then
    written ``q(k-1) + r``: short moves (by 1 for even ``k``, by 2 for odd
    ``k``) clear ``r``, after which each step moves ``a`` ``k-1`` closer. For
    odd ``k`` and odd ``r`` one extra copy first makes ``r`` even.
    """
    y = tuple(y)
    if k < 2:
        raise ConstructionError("symbols cannot move under block length 1")
    if len(y) < k:
        raise ConstructionError(f"|y| = {len(y)} < k = {k}")
    if a not in y:
        raise ConstructionError(f"symbol {a} does not occur in y")
    return _rt_push(y, k, a)


def rt_embed_as_suffix(y: Sequence[int], k: int, x: Sequence[int]) -> ConstructionResult:
    """Reversed-tandem derivation from ``y`` to a word ending with ``x``.

    Symbols of ``x`` are pushed right to left; once a symbol sits at the end it
    is frozen and the next one is pushed to the end of the remaining prefix.
    """
    y, x = tuple(y), tuple(x)
    if k < 2:
        raise ConstructionError("symbols cannot move under block length 1")
    if len(y) < k:
        raise ConstructionError(f"|y| = {len(y)} < k = {k}")
    for a in set(x):
        if occurrences(y, a) < occurrences(x, a):
            raise ConstructionError(f"y has fewer copies of symbol {a} than x")
    b = _Builder(y)
    if not x:
        return b.result()
    # every working prefix must keep length >= k
    while len(b.x) < k + len(x):
        b.do(Rule(Variant.REVERSED, 0, k))
    for frozen, a in enumerate(reversed(x)):
        prefix = b.x[:len(b.x) - frozen]
        for rule in _rt_push(prefix, k, a).trace:
            b.do(rule)
    assert b.x[len(b.x) - len(x):] == x
    return b.result()


def gap_push_to_end(y: Sequence[int], k: int, kprime: int, a: int) -> ConstructionResult:
    """Gap-replication steps ``(k, k')`` after which the word ends with ``a``.

    Requires ``gcd(k, k') = 1``. The distance of ``a`` from the end grows by
    ``k`` per step until ``k'`` divides it, then shrinks by ``k'`` per step.
    """
    y = tuple(y)
    if math.gcd(k, kprime) != 1:
        raise ConstructionError(f"gcd({k}, {kprime}) != 1")
    if len(y) < k + kprime:
        raise ConstructionError(f"|y| = {len(y)} < k + k' = {k + kprime}")
    if a not in y:
        raise ConstructionError(f"symbol {a} does not occur in y")
    b = _Builder(y)
    if y[-1] == a:
        return b.result()

    def gap(i):
        return Rule(Variant.GAP, i, k, kprime)

    where = [p for p in range(1, len(y) + 1) if y[p - 1] == a]
    good = [p for p in where if p >= k]
    if good:
        i = good[-1]
    else:
        # copy the prefix block past the gap; the copy of a lands beyond position k
        i = where[0]
        b.do(gap(0))
        i += k + kprime

    def dist():
        return len(b.x) - i

    while dist() % kprime:
        if dist() >= k + kprime - 1:
            b.do(gap(i - 1))
        else:
            # block too close to the end to start at a: append the last block instead
            b.do(gap(len(b.x) - k - kprime))
    while dist():
        b.do(gap(i - k))
        i += k + kprime
    assert b.x[-1] == a
    return b.result()


def gap_distinct_round(s: Sequence[int], k: int, kprime: int) -> Set[Word]:
    """One round of the gap-replication branching step.

    Copies the leading block past the gap once, then applies every offset
    ``0..k`` to the result. The number of distinct outcomes is
    ``1 + d_H(s[0:k], (ss)[k:2k])``.
    """
    s = tuple(s)
    if len(s) < k + kprime:
        raise ConstructionError(f"|s| = {len(s)} < k + k' = {k + kprime}")
    s = s[:k + kprime]
    base = apply(Rule(Variant.GAP, 0, k, kprime), s)
    return {apply(Rule(Variant.GAP, i, k, kprime), base) for i in range(k + 1)}


def hamming_defect(s: Sequence[int], k: int) -> int:
    """``d_H`` between the first k-block of ``s`` and the k-block at offset k of ``ss``."""
    ss = tuple(s) + tuple(s)
    return hamming(ss[:k], ss[k:2 * k])


PROCEDURES = {
    "end-force-suffix": end_force_suffix,
    "tandem-compact": tandem_compact_distinct,
    "tandem-seed-prep": tandem_gek_seed_prep,
    "rt-push": rt_push_to_end,
    "rt-embed": rt_embed_as_suffix,
    "gap-push": gap_push_to_end,
    "gap-round": gap_distinct_round,
}

__all__ = [
    "ConstructionError",
    "ConstructionResult",
    "CompactResult",
    "RunPattern",
    "end_force_suffix",
    "tandem_compact_distinct",
    "tandem_gek_seed_prep",
    "rt_push_to_end",
    "rt_embed_as_suffix",
    "gap_push_to_end",
    "gap_distinct_round",
    "hamming_defect",
    "PROCEDURES",
]

