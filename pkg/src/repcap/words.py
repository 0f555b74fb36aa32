"""Word primitives over a small integer alphabet.

A word is a plain tuple of symbol indices ``0..sigma-1``. Printable labels
live on :class:`Alphabet` and are only used for parsing and display.
Positions are 0-based in code; anything rendered for humans is 1-based.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

Word = Tuple[int, ...]

EMPTY: Word = ()


class WordError(ValueError):
    """Raised when a word-level operation gets an input outside its domain."""


@dataclass(frozen=True)
class Alphabet:
    size: int
    display: Optional[str] = None

    def __post_init__(self):
        if self.size < 1:
            raise WordError(f"alphabet size must be >= 1, got {self.size}")
        if self.display is not None:
            if len(self.display) != self.size:
                raise WordError("display map must label every symbol")
            if len(set(self.display)) != self.size:
                raise WordError("display map must be injective")

    def label(self, a: int) -> str:
        if self.display is not None:
            return self.display[a]
        return str(a)

    def render(self, w: Sequence[int]) -> str:
        if self.display is None and self.size > 10:
            return ".".join(str(a) for a in w)
        return "".join(self.label(a) for a in w)

    def parse(self, text: str) -> Word:
        if self.display is not None:
            index = {c: i for i, c in enumerate(self.display)}
            try:
                return tuple(index[c] for c in text)
            except KeyError as exc:
                raise WordError(f"symbol {exc.args[0]!r} not in alphabet {self.display!r}")
        if "." in text:
            w = tuple(int(t) for t in text.split("."))
        else:
            w = tuple(int(c) for c in text)
        self.check(w)
        return w

    def check(self, w: Sequence[int]) -> None:
        for a in w:
            if not 0 <= a < self.size:
                raise WordError(f"symbol {a} outside alphabet of size {self.size}")


def infer_alphabet(text: str, size: Optional[int] = None) -> Alphabet:
    """Guess an alphabet for a textual word.

    Digit strings (and dotted index lists) are read as raw indices. Anything
    else is labelled in sorted character order, so ``TCATGC`` uses ``ACGT``.
    """
    if text == "" or text.isdigit() or "." in text:
        if "." in text:
            top = max((int(t) for t in text.split(".")), default=-1)
        else:
            top = max((int(c) for c in text), default=-1)
        return Alphabet(size if size is not None else max(top + 1, 1))
    labels = "".join(sorted(set(text)))
    if size is not None and size != len(labels):
        if size < len(labels):
            raise WordError(f"seed uses {len(labels)} symbols but alphabet size is {size}")
        raise WordError("letter seeds need alphabet size equal to the number of distinct letters")
    return Alphabet(len(labels), labels)


def word(text: str) -> Word:
    """Shorthand for digit words: ``word("0101") == (0, 1, 0, 1)``."""
    return infer_alphabet(text).parse(text)


def alpha_representation(w: Sequence[int]) -> FrozenSet[int]:
    return frozenset(w)


def alpha_diversity(w: Sequence[int]) -> int:
    return len(set(w))


def occurrences(w: Sequence[int], a: int) -> int:
    return sum(1 for c in w if c == a)


def reverse(w: Sequence[int]) -> Word:
    return tuple(reversed(w))


def hamming(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise WordError(f"hamming distance needs equal lengths, got {len(u)} and {len(v)}")
    return sum(1 for a, b in zip(u, v) if a != b)


def cyclic_shift(w: Sequence[int], j: int) -> Word:
    """Rotate left by ``j`` positions (``E^j``)."""
    if not w:
        raise WordError("cannot rotate the empty word")
    j %= len(w)
    return tuple(w[j:]) + tuple(w[:j])


def cyclic_class(w: Sequence[int]) -> Word:
    """Canonical representative of the rotation class: least rotation."""
    if not w:
        raise WordError("rotation class of the empty word is undefined")
    return min(cyclic_shift(w, j) for j in range(len(w)))


def is_periodic(w: Sequence[int], p: int) -> bool:
    if not 1 <= p <= len(w):
        raise WordError(f"period {p} out of range for word of length {len(w)}")
    return all(w[i] == w[i + p] for i in range(len(w) - p))


@dataclass(frozen=True)
class PhiProfile:
    first_window: Word
    classes: Tuple[Word, ...]

    @property
    def bins(self) -> int:
        return 1 + sum(1 for a, b in zip(self.classes, self.classes[1:]) if a != b)


def windows(w: Sequence[int], k: int) -> Iterable[Word]:
    for i in range(len(w) - k + 1):
        yield tuple(w[i:i + k])


def phi_profile(w: Sequence[int], k: int) -> PhiProfile:
    if k < 1:
        raise WordError("window length must be positive")
    if len(w) < k:
        raise WordError(f"word of length {len(w)} is shorter than window {k}")
    return PhiProfile(tuple(w[:k]), tuple(cyclic_class(x) for x in windows(w, k)))


def reconstruct_from_phi(first_window: Sequence[int], classes: Sequence[Word]) -> Word:
    """Invert :func:`phi_profile`.

    Each step slides the current window by one symbol; the appended symbol is
    forced because the next window's rotation class determines it (the
    window's first k-1 symbols are known, and the class fixes the multiset).
    """
    first_window = tuple(first_window)
    if not classes:
        raise WordError("class sequence is empty")
    if cyclic_class(first_window) != tuple(classes[0]):
        raise WordError("first window does not belong to the first class")
    out = list(first_window)
    current = first_window
    alphabet = sorted({a for c in classes for a in c} | set(first_window))
    for step, target in enumerate(classes[1:], start=1):
        target = tuple(target)
        nxt = [current[1:] + (a,) for a in alphabet if cyclic_class(current[1:] + (a,)) == target]
        if not nxt:
            raise WordError(f"no one-symbol slide reaches class {step} ({target})")
        # at most one symbol can complete a fixed multiset of size k
        current = nxt[0]
        out.append(current[-1])
    return tuple(out)


@dataclass(frozen=True)
class PositionProfile:
    modulus: int
    differences: Dict[Tuple[int, int], FrozenSet[int]]

    def residues(self, a: int, b: int) -> FrozenSet[int]:
        return frozenset(j % self.modulus for j in self.differences.get((a, b), ()))

    def all_residues(self) -> Dict[Tuple[int, int], FrozenSet[int]]:
        return {pair: self.residues(*pair) for pair in self.differences}


def position_differences(w: Sequence[int]) -> Dict[Tuple[int, int], FrozenSet[int]]:
    """All ``j`` with ``w[i] = a`` and ``w[i+j] = b``, keyed by ``(a, b)``."""
    where = defaultdict(list)
    for i, a in enumerate(w):
        where[a].append(i)
    out = {}
    for a, pa in where.items():
        for b, pb in where.items():
            out[(a, b)] = frozenset(j - i for i in pa for j in pb)
    return out


def position_profile(w: Sequence[int], modulus: int) -> PositionProfile:
    if modulus < 1:
        raise WordError("modulus must be positive")
    return PositionProfile(modulus, position_differences(w))


def residue_profile(w: Sequence[int], modulus: int) -> Dict[Tuple[int, int], FrozenSet[int]]:
    """Only the residue sets; cheaper than building the full difference sets."""
    where = defaultdict(set)
    for i, a in enumerate(w):
        where[a].add(i % modulus)
    return {
        (a, b): frozenset((j - i) % modulus for i in ra for j in rb)
        for a, ra in where.items()
        for b, rb in where.items()
    }
