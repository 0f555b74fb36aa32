"""Capacity values and bounds as tagged reports.

Every function returns a :class:`CapacityReport` whose ``kind`` says how much
the number is worth: an exact value, a proven lower bound, a zero-capacity
characterisation, a strict-upper-bound flag, or a finite-length estimate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .closure import Budget, BudgetExceeded, LevelProfile, enumerate_closure
from .constructions import hamming_defect
from .rules import RuleFamily, StringSystem, Variant
from .spectral import gek_polynomial, largest_real_root, lb1_characteristic
from .words import (
    Alphabet,
    Word,
    alpha_diversity,
    is_periodic,
    phi_profile,
    residue_profile,
    reverse,
    windows,
)


class Kind(str, enum.Enum):
    EXACT = "exact"
    LOWER_BOUND = "lower-bound"
    ZERO_EXACT = "zero-exact"
    STRICTLY_BELOW_MAX = "strictly-below-max"
    EMPIRICAL_LOWER_BOUND = "empirical-lower-bound"
    EMPIRICAL_ESTIMATE = "empirical-estimate"


class CapacityError(ValueError):
    pass


@dataclass
class CapacityReport:
    value: float
    kind: Kind
    provenance: str
    system: str = ""
    witness: Dict[str, object] = field(default_factory=dict)
    flag: Optional[bool] = None  # only for STRICTLY_BELOW_MAX

    def record(self) -> str:
        parts = [f'system="{self.system}"', f"kind={self.kind.value}",
                 f"value={self.value:.6f}", f"provenance={self.provenance}"]
        if self.flag is not None:
            parts.append(f"flag={str(self.flag).lower()}")
        if self.witness:
            body = ",".join(f"{k}:{_fmt(v)}" for k, v in self.witness.items())
            parts.append(f"witness={body}")
        return " ".join(parts)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6f}"
    if isinstance(v, tuple):
        return "".join(map(str, v))
    return str(v)


def floor2(value: float) -> float:
    """Truncate to two decimals (printed bounds are truncated, not rounded)."""
    return math.floor(value * 100) / 100


def _describe(variant: str, s: Sequence[int], k: int, kprime: Optional[int] = None,
              mode: str = "fixed") -> str:
    alpha = Alphabet(max(max(s, default=0) + 1, 1))
    parts = [f"variant:{variant}", f"k={k}"]
    if kprime is not None:
        parts.append(f"kprime={kprime}")
    parts += [f"mode={mode}", f"seed={alpha.render(s)}", f"alphabet={alpha.size}"]
    return "; ".join(parts)


def end_capacity(s: Sequence[int], k: int, at_least: bool = False) -> CapacityReport:
    s = tuple(s)
    if len(s) < k:
        raise CapacityError(f"|s| = {len(s)} < k = {k}: the closure is only the seed")
    delta = alpha_diversity(s)
    return CapacityReport(
        math.log2(delta), Kind.EXACT,
        "end-ge-k-exact" if at_least else "end-k-exact",
        _describe("end", s, k, mode="atleast" if at_least else "fixed"),
        {"delta": delta},
    )


def tandem_fixed_capacity(s: Sequence[int], k: int) -> CapacityReport:
    s = tuple(s)
    if len(s) < k:
        raise CapacityError(f"|s| = {len(s)} < k = {k}")
    return CapacityReport(0.0, Kind.ZERO_EXACT, "tandem-k-zero", _describe("tan", s, k),
                          {"bins": phi_profile(s, k).bins})


def tandem_ge1_lower(s: Sequence[int]) -> CapacityReport:
    s = tuple(s)
    delta = alpha_diversity(s)
    if delta < 2:
        raise CapacityError("need at least two distinct symbols")
    r = largest_real_root(lb1_characteristic(delta), 1.0, 2.0)
    kind = Kind.EXACT if delta == 2 else Kind.LOWER_BOUND
    # for two symbols the bound meets the trivial log2|alphabet| = 1 ceiling
    prov = "tandem-ge1-binary-exact" if delta == 2 else "tandem-ge1-automaton"
    return CapacityReport(math.log2(1 + r), kind, prov, _describe("tan", s, 1, mode="atleast"),
                          {"delta": delta, "root": r})


def tandem_gek_lower(s: Sequence[int], k: int) -> CapacityReport:
    """Lower bound ``log2 r`` with ``r`` the root of ``x^(k+1) - x - 1``.

    The construction only needs two distinct symbols, so any seed with
    ``delta >= 2`` is accepted, not just binary ones; the provenance says so.
    """
    s = tuple(s)
    if len(s) < k:
        raise CapacityError(f"|s| = {len(s)} < k = {k}")
    if alpha_diversity(s) < 2:
        raise CapacityError("need at least two distinct symbols")
    r = largest_real_root(gek_polynomial(k), 1.0, 2.0)
    assert r > 1
    prov = "tandem-ge-k-automaton" if alpha_diversity(s) == 2 else "tandem-ge-k-automaton(delta>=2)"
    return CapacityReport(math.log2(r), Kind.LOWER_BOUND, prov,
                          _describe("tan", s, k, mode="atleast"), {"root": r})


def _is_relabeled_reverse(s: Sequence[int]) -> bool:
    fwd, bwd = {}, {}
    for a, b in zip(reverse(s), s):
        if fwd.setdefault(a, b) != b or bwd.setdefault(b, a) != a:
            return False
    return True


def rt_alternating_lower(s: Sequence[int], k: int) -> CapacityReport:
    s = tuple(s)
    if len(s) != k:
        raise CapacityError(f"seed must have length k = {k}")
    if s == reverse(s):
        raise CapacityError("seed is a palindrome")
    return CapacityReport(1.0 / k, Kind.LOWER_BOUND, "rt-alternating-blocks", _describe("rt", s, k))


def rt_empirical_lower(s: Sequence[int], k: int, p: int, profile: LevelProfile) -> CapacityReport:
    """``log2 N(pk) / (pk)``, valid because concatenated copies of the seed
    develop independently when the seed equals a relabelling of its reverse."""
    s = tuple(s)
    if len(s) != k:
        raise CapacityError(f"seed must have length k = {k}")
    if not _is_relabeled_reverse(s):
        raise CapacityError("seed is not a bijective relabelling of its reverse")
    fam = profile.system.family
    if profile.system.seed != s or fam.variant is not Variant.REVERSED or fam.k != k:
        raise CapacityError("profile belongs to a different system")
    n = p * k
    if n > profile.max_length:
        raise CapacityError(f"profile stops at length {profile.max_length} < {n}")
    count = profile.count(n)
    return CapacityReport(math.log2(count) / n, Kind.EMPIRICAL_LOWER_BOUND, "rt-concatenation-bound",
                          _describe("rt", s, k), {"n": n, "N": count})


def rt_zero_iff(s: Sequence[int], k: int, p_max: int = 6) -> CapacityReport:
    """Zero exactly for unary seeds; otherwise the best positive bound at hand.

    Tries a non-palindromic k-window first (``1/k``); if every window is a
    palindrome, enumerates a two-symbol window's closure up to length
    ``p_max * k`` and uses the concatenation bound.
    """
    s = tuple(s)
    if len(s) < k:
        raise CapacityError(f"|s| = {len(s)} < k = {k}")
    desc = _describe("rt", s, k)
    if alpha_diversity(s) == 1:
        return CapacityReport(0.0, Kind.ZERO_EXACT, "rt-zero-iff-unary", desc)
    if k == 1:
        # a reversed single symbol is itself: this is tandem duplication with k = 1
        return CapacityReport(0.0, Kind.ZERO_EXACT, "rt-k1-equals-tandem", desc,
                              {"bins": phi_profile(s, 1).bins})
    for start, w in enumerate(windows(s, k)):
        if w != reverse(w):
            rep = rt_alternating_lower(w, k)
            rep.system, rep.witness = desc, {"window": start + 1}
            return rep
    # every k-window is a palindrome and k >= 2, so some window mixes symbols
    start, w = next((i, w) for i, w in enumerate(windows(s, k)) if alpha_diversity(w) >= 2)
    sub = StringSystem(Alphabet(max(w) + 1), w, RuleFamily(Variant.REVERSED, k))
    while True:
        try:
            profile = enumerate_closure(sub, Budget(p_max * k))
            break
        except BudgetExceeded:
            if p_max == 1:
                raise
            p_max -= 1
    best = max((rt_empirical_lower(w, k, p, profile) for p in range(1, p_max + 1)),
               key=lambda r: r.value)
    best.system = desc
    best.witness = {"window": start + 1, **best.witness}
    return best


def gap_hamming_lower(s: Sequence[int], k: int, kprime: int) -> CapacityReport:
    s = tuple(s)
    if len(s) < k + kprime:
        raise CapacityError(f"|s| = {len(s)} < k + k' = {k + kprime}")
    dh = hamming_defect(s, k)
    return CapacityReport(math.log2(1 + dh) / k, Kind.LOWER_BOUND, "gap-hamming",
                          _describe("gap", s, k, kprime), {"d_H": dh})


def _best_window_hamming(s: Word, k: int, kprime: int):
    best = (0, None)
    for start, w in enumerate(windows(s, k + kprime)):
        dh = hamming_defect(w, k)
        if dh > best[0]:
            best = (dh, start)
    return best


def gap_zero_iff_periodic(s: Sequence[int], k: int, kprime: int,
                          budget: Optional[Budget] = None) -> CapacityReport:
    """Zero exactly when ``s`` has period ``gcd(k, k')``.

    Otherwise a positive lower bound is reported: the Hamming bound of the
    best ``(k+k')``-window of ``s``, or, if all of those vanish, of the best
    window of some word derived from ``s`` (found by enumeration).
    """
    s = tuple(s)
    if len(s) < k + kprime:
        raise CapacityError(f"|s| = {len(s)} < k + k' = {k + kprime}")
    d = math.gcd(k, kprime)
    desc = _describe("gap", s, k, kprime)
    if is_periodic(s, d):
        return CapacityReport(0.0, Kind.ZERO_EXACT, "gap-zero-iff-periodic", desc, {"period": d})
    dh, start = _best_window_hamming(s, k, kprime)
    if dh:
        return CapacityReport(math.log2(1 + dh) / k, Kind.LOWER_BOUND, "gap-hamming(window)", desc,
                              {"d_H": dh, "window": start + 1})
    system = StringSystem(Alphabet(max(s) + 1), s, RuleFamily(Variant.GAP, k, kprime=kprime))
    budget = budget or Budget(len(s) + 6 * k, store_witnesses=True)
    try:
        profile = enumerate_closure(system, Budget(budget.max_length, budget.max_states, True))
    except BudgetExceeded:
        profile = None
    if profile is not None:
        for t in profile.all_witnesses():
            dh, start = _best_window_hamming(t, k, kprime)
            if dh:
                return CapacityReport(
                    math.log2(1 + dh) / k, Kind.LOWER_BOUND, "gap-hamming(derived)", desc,
                    {"d_H": dh, "derived": t, "window": start + 1})
        est = empirical_estimate(profile)
        return CapacityReport(est.value, Kind.EMPIRICAL_ESTIMATE, "gap-zero-iff-periodic(positive)", desc)
    return CapacityReport(0.0, Kind.EMPIRICAL_ESTIMATE, "gap-zero-iff-periodic(positive)", desc)


def strict_upper_witness(s: Sequence[int], d: int):
    """First symbol pair (sorted) whose residue set mod ``d`` misses a class."""
    rho = residue_profile(s, d)
    for pair in sorted(rho):
        if len(rho[pair]) < d:
            return pair, rho[pair]
    return None


def gap_strict_upper_flag(s: Sequence[int], k: int, kprime: int) -> CapacityReport:
    s = tuple(s)
    if len(s) < k + kprime:
        raise CapacityError(f"|s| = {len(s)} < k + k' = {k + kprime}")
    d = math.gcd(k, kprime)
    hit = strict_upper_witness(s, d)
    witness = {"d": d}
    if hit is not None:
        (a, b), res = hit
        witness.update(pair=f"({a},{b})", residues="{" + ",".join(map(str, sorted(res))) + "}")
    return CapacityReport(math.log2(alpha_diversity(s)), Kind.STRICTLY_BELOW_MAX, "gap-residue-classes",
                          _describe("gap", s, k, kprime), witness, flag=hit is not None)


def empirical_estimate(profile: LevelProfile) -> CapacityReport:
    """``max_n log2 N(n) / n`` over the profile; a finite view, not a bound."""
    best, at = 0.0, None
    for n, count in sorted(profile.counts.items()):
        if n > 0 and count > 0:
            v = math.log2(count) / n
            if v > best:
                best, at = v, n
    witness = {"n": at} if at is not None else {}
    return CapacityReport(best, Kind.EMPIRICAL_ESTIMATE, "finite-profile", profile.system.descriptor(), witness)


def reports_for(system: StringSystem) -> List[CapacityReport]:
    """Every report that applies to ``system``."""
    s, f = system.seed, system.family
    at_least = f.mode.value == "atleast"
    out: List[CapacityReport] = []
    if f.variant is Variant.END:
        if len(s) >= f.k:
            out.append(end_capacity(s, f.k, at_least))
    elif f.variant is Variant.TANDEM:
        if not at_least:
            if len(s) >= f.k:
                out.append(tandem_fixed_capacity(s, f.k))
        elif alpha_diversity(s) >= 2 and len(s) >= f.k:
            if f.k == 1:
                out.append(tandem_ge1_lower(s))
            out.append(tandem_gek_lower(s, f.k))
    elif f.variant is Variant.REVERSED:
        if len(s) >= f.k:
            out.append(rt_zero_iff(s, f.k))
            if len(s) == f.k and s != reverse(s):
                out.append(rt_alternating_lower(s, f.k))
    else:
        if len(s) >= f.k + f.kprime:
            out.append(gap_zero_iff_periodic(s, f.k, f.kprime))
            out.append(gap_hamming_lower(s, f.k, f.kprime))
            out.append(gap_strict_upper_flag(s, f.k, f.kprime))
    desc = system.descriptor()
    for rep in out:
        rep.system = desc
    return out


__all__ = [
    "Kind",
    "CapacityReport",
    "CapacityError",
    "floor2",
    "end_capacity",
    "tandem_fixed_capacity",
    "tandem_ge1_lower",
    "tandem_gek_lower",
    "rt_zero_iff",
    "rt_alternating_lower",
    "rt_empirical_lower",
    "gap_hamming_lower",
    "gap_zero_iff_periodic",
    "gap_strict_upper_flag",
    "strict_upper_witness",
    "empirical_estimate",
    "reports_for",
]
