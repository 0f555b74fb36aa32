"""The four replication rules, rule families and string systems."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Set

from .words import Alphabet, Word, WordError, infer_alphabet, reverse


class Variant(str, enum.Enum):
    END = "end"
    TANDEM = "tan"
    REVERSED = "rt"
    GAP = "gap"


class Mode(str, enum.Enum):
    FIXED = "fixed"
    AT_LEAST = "atleast"


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    """One parameterised rule: offset ``i`` (= length of the untouched prefix),
    block length ``k`` and, for gap replication, gap length ``kprime``."""

    variant: Variant
    i: int
    k: int
    kprime: Optional[int] = None

    def __post_init__(self):
        if self.k < 1:
            raise RuleError("block length k must be >= 1")
        if self.i < 0:
            raise RuleError("offset i must be >= 0")
        if self.variant is Variant.GAP:
            if self.kprime is None or self.kprime < 1:
                raise RuleError("gap rules need kprime >= 1")
        elif self.kprime is not None:
            raise RuleError("kprime only applies to gap rules")

    @property
    def span(self) -> int:
        """Length of the pattern the rule has to match starting at ``i``."""
        return self.k + (self.kprime or 0)

    def applies(self, x: Sequence[int]) -> bool:
        return self.i + self.span <= len(x)

    def __str__(self) -> str:
        if self.variant is Variant.GAP:
            return f"gap({self.i},{self.k},{self.kprime})"
        return f"{self.variant.value}({self.i},{self.k})"


def apply(rule: Rule, x: Sequence[int]) -> Word:
    x = tuple(x)
    if not rule.applies(x):
        return x
    i, k = rule.i, rule.k
    v = x[i:i + k]
    if rule.variant is Variant.END:
        return x + v
    if rule.variant is Variant.TANDEM:
        return x[:i + k] + v + x[i + k:]
    if rule.variant is Variant.REVERSED:
        return x[:i + k] + reverse(v) + x[i + k:]
    cut = i + k + rule.kprime
    return x[:cut] + v + x[cut:]


def trace_replay(x0: Sequence[int], trace: Iterable[Rule]) -> Word:
    x = tuple(x0)
    for rule in trace:
        x = apply(rule, x)
    return x


_RULE_RE = re.compile(r"^(end|tan|rt|gap)\((\d+),(\d+)(?:,(\d+))?\)$")


def parse_rule(text: str) -> Rule:
    m = _RULE_RE.match(text.strip())
    if not m:
        raise RuleError(f"cannot parse rule {text!r}")
    variant, i, k, kp = m.groups()
    return Rule(Variant(variant), int(i), int(k), int(kp) if kp is not None else None)


def format_trace(trace: Sequence[Rule]) -> str:
    return ";".join(str(r) for r in trace)


def parse_trace(text: str) -> List[Rule]:
    text = text.strip()
    if not text:
        return []
    return [parse_rule(t) for t in text.split(";")]


@dataclass(frozen=True)
class RuleFamily:
    variant: Variant
    k: int
    mode: Mode = Mode.FIXED
    kprime: Optional[int] = None

    def __post_init__(self):
        if self.k < 1:
            raise RuleError("k must be >= 1")
        if self.variant is Variant.GAP:
            if self.kprime is None or self.kprime < 1:
                raise RuleError("gap families need kprime >= 1")
            if self.mode is Mode.AT_LEAST:
                raise RuleError("gap replication has no at-least family")
        elif self.kprime is not None:
            raise RuleError("kprime only applies to gap families")
        if self.mode is Mode.AT_LEAST and self.variant not in (Variant.END, Variant.TANDEM):
            raise RuleError("at-least families exist only for end and tandem replication")

    @property
    def fixed_step(self) -> Optional[int]:
        """Length increment of every effective rule, if the family has one."""
        return self.k if self.mode is Mode.FIXED else None

    def rules_for(self, x: Sequence[int]) -> Iterable[Rule]:
        """Every rule of the family that changes ``x``.

        At-least families are infinite; block lengths above ``|x|`` never match,
        so truncating there loses nothing.
        """
        n = len(x)
        if self.mode is Mode.FIXED:
            lengths = [self.k]
        else:
            lengths = range(self.k, n + 1)
        for k in lengths:
            span = k + (self.kprime or 0)
            for i in range(n - span + 1):
                yield Rule(self.variant, i, k, self.kprime)


def successors(family: RuleFamily, x: Sequence[int]) -> Set[Word]:
    x = tuple(x)
    return {apply(r, x) for r in family.rules_for(x)}


@dataclass(frozen=True)
class StringSystem:
    alphabet: Alphabet
    seed: Word
    family: RuleFamily

    def __post_init__(self):
        self.alphabet.check(self.seed)

    @property
    def min_seed_length(self) -> int:
        return self.family.k + (self.family.kprime or 0)

    def warnings(self) -> List[str]:
        """Capacity-result preconditions the seed violates (flagged, never fixed)."""
        if len(self.seed) < self.min_seed_length:
            return [f"seed length {len(self.seed)} < {self.min_seed_length}: closure is just the seed"]
        return []

    def descriptor(self) -> str:
        f = self.family
        parts = [f"variant:{f.variant.value}", f"k={f.k}"]
        if f.kprime is not None:
            parts.append(f"kprime={f.kprime}")
        parts += [f"mode={f.mode.value}", f"seed={self.alphabet.render(self.seed)}",
                  f"alphabet={self.alphabet.size}"]
        return "; ".join(parts)

    def render(self, w: Sequence[int]) -> str:
        return self.alphabet.render(w)


def make_system(variant, seed: str, k: int, kprime: Optional[int] = None,
                at_least: bool = False, alphabet: Optional[int] = None) -> StringSystem:
    """Build a system from textual parts, e.g. ``make_system("rt", "01", 2)``."""
    alpha = infer_alphabet(seed, alphabet)
    family = RuleFamily(Variant(variant), k, Mode.AT_LEAST if at_least else Mode.FIXED, kprime)
    return StringSystem(alpha, alpha.parse(seed), family)


def parse_descriptor(text: str) -> StringSystem:
    fields = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, sep, value = part.partition("=")
        if not sep:
            key, sep, value = part.partition(":")
        if not sep:
            raise RuleError(f"malformed descriptor field {part!r}")
        fields[key.strip()] = value.strip()
    try:
        return make_system(
            fields["variant"],
            fields["seed"],
            int(fields["k"]),
            int(fields["kprime"]) if "kprime" in fields else None,
            at_least=Mode(fields.get("mode", "fixed")) is Mode.AT_LEAST,
            alphabet=int(fields["alphabet"]) if "alphabet" in fields else None,
        )
    except KeyError as exc:
        raise RuleError(f"descriptor is missing {exc.args[0]!r}") from None
    except (ValueError, WordError) as exc:
        raise RuleError(str(exc)) from None
