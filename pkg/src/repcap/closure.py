"""Exact enumeration of string-system closures, stratified by word length.

Every effective rule strictly lengthens its input, so processing lengths in
increasing order visits each word exactly once: by the time a length is
reached, all of its predecessors have already been expanded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .rules import Mode, Rule, StringSystem, Variant, apply
from .words import Word, alpha_representation, phi_profile

UINT64_MAX = 2**64 - 1


class BudgetExceeded(RuntimeError):
    def __init__(self, max_states: int, frontier: int, length: int):
        super().__init__(
            f"state budget of {max_states} exceeded while expanding length {length} "
            f"(pending frontier: {frontier} words)"
        )
        self.max_states = max_states
        self.frontier = frontier
        self.length = length


class CountOverflow(OverflowError):
    pass


def _checked(value: int) -> int:
    if value > UINT64_MAX:
        raise CountOverflow(f"count {value} does not fit in 64 bits")
    return value


@dataclass(frozen=True)
class Budget:
    max_length: int
    max_states: int = 10**6
    store_witnesses: bool = False
    store_traces: bool = False

    def __post_init__(self):
        if self.max_states <= 0:
            raise ValueError("max_states must be positive")

    @classmethod
    def default_for(cls, system: StringSystem, **kw) -> "Budget":
        return cls(len(system.seed) + 8 * system.family.k, **kw)


@dataclass
class LevelProfile:
    system: StringSystem
    max_length: int
    counts: Dict[int, int]
    witnesses: Optional[Dict[int, List[Word]]] = None
    parents: Optional[Dict[Word, Optional[Tuple[Word, Rule]]]] = field(default=None, repr=False)

    def count(self, n: int) -> int:
        if n > self.max_length:
            raise ValueError(f"length {n} is beyond the enumeration budget {self.max_length}")
        return self.counts.get(n, 0)

    def reachable_lengths(self) -> List[int]:
        return sorted(self.counts)

    def trace(self, w: Sequence[int]) -> List[Rule]:
        if self.parents is None:
            raise ValueError("profile was built without traces")
        w = tuple(w)
        out = []
        while True:
            link = self.parents[w]
            if link is None:
                return out[::-1]
            w, rule = link
            out.append(rule)

    def all_witnesses(self) -> List[Word]:
        if self.witnesses is None:
            raise ValueError("profile was built without witnesses")
        return [w for n in sorted(self.witnesses) for w in self.witnesses[n]]


def count_at_length(profile: LevelProfile, n: int) -> int:
    return profile.count(n)


def iter_levels(system: StringSystem, max_length: int, max_states: int = 10**6,
                parents: Optional[dict] = None,
                keep: Optional[Callable[[Word], bool]] = None) -> Iterator[Tuple[int, List[Word]]]:
    """Yield ``(n, sorted words of length n)`` for every reachable n."""
    family = system.family
    seed = system.seed
    buckets: Dict[int, set] = {len(seed): {seed}}
    if parents is not None:
        parents[seed] = None
    total = 1
    for n in range(len(seed), max_length + 1):
        level = buckets.pop(n, None)
        if not level:
            continue
        ordered = sorted(level)
        yield n, ordered
        room = max_length - n
        if room < family.k:
            continue
        for x in ordered:
            for rule in family.rules_for(x):
                if rule.k > room:
                    # rules_for yields block lengths in increasing order
                    break
                y = apply(rule, x)
                if keep is not None and not keep(y):
                    continue
                bucket = buckets.setdefault(len(y), set())
                if y in bucket:
                    continue
                bucket.add(y)
                total += 1
                if parents is not None:
                    parents[y] = (x, rule)
                if total > max_states:
                    raise BudgetExceeded(max_states, sum(map(len, buckets.values())), n)


def enumerate_closure(system: StringSystem, budget: Budget) -> LevelProfile:
    if budget.max_length < len(system.seed):
        raise ValueError("max_length is shorter than the seed")
    parents = {} if budget.store_traces else None
    witnesses = {} if budget.store_witnesses else None
    counts = {}
    for n, level in iter_levels(system, budget.max_length, budget.max_states, parents):
        counts[n] = _checked(len(level))
        if witnesses is not None:
            witnesses[n] = level
    return LevelProfile(system, budget.max_length, counts, witnesses, parents)


@dataclass(frozen=True)
class Membership:
    found: bool
    trace: Optional[List[Rule]] = None


def membership(system: StringSystem, target: Sequence[int], budget: Budget) -> Membership:
    """Decide ``target`` in the closure by bounded search.

    Raises :class:`BudgetExceeded` when the search could not finish, which is
    an inconclusive answer rather than a negative one.
    """
    target = tuple(target)
    seed = system.seed
    family = system.family
    if len(target) > budget.max_length:
        raise ValueError("target is longer than the enumeration budget")
    if target == seed:
        return Membership(True, [])
    if len(target) < len(seed) or alpha_representation(target) != alpha_representation(seed):
        return Membership(False)
    if family.mode is Mode.FIXED and (len(target) - len(seed)) % family.k:
        return Membership(False)
    keep = None
    if family.variant is Variant.END:
        # end replication only appends, so every ancestor of target is a prefix of it
        keep = lambda y: target[:len(y)] == y  # noqa: E731
    parents = {} if budget.store_traces else None
    for n, level in iter_levels(system, len(target), budget.max_states, parents, keep):
        if n == len(target):
            if target not in level:
                return Membership(False)
            if parents is None:
                return Membership(True)
            trace = []
            w = target
            while parents[w] is not None:
                w, rule = parents[w]
                trace.append(rule)
            return Membership(True, trace[::-1])
    return Membership(False)


def tandem_bins_count(s: Sequence[int], k: int, m: int) -> int:
    """Number of distinct words after exactly ``m`` fixed-length tandem copies."""
    if m < 0:
        raise ValueError("m must be non-negative")
    b = phi_profile(s, k).bins
    return _checked(math.comb(b + m - 1, b - 1))


def profile_tsv(profile: LevelProfile) -> str:
    lines = ["n\tcount"]
    lines += [f"{n}\t{profile.counts[n]}" for n in sorted(profile.counts)]
    return "\n".join(lines) + "\n"


def witnesses_text(profile: LevelProfile) -> str:
    render = profile.system.render
    words = sorted(render(w) for w in profile.all_witnesses())
    return "".join(w + "\n" for w in words)


def traces_text(profile: LevelProfile) -> str:
    """One line per witness (same order as :func:`witnesses_text`): the word,
    a tab, then its semicolon-separated derivation."""
    render = profile.system.render
    rows = sorted((render(w), w) for w in profile.all_witnesses())
    return "".join(f"{text}\t{';'.join(map(str, profile.trace(w)))}\n" for text, w in rows)
