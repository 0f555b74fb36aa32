"""Automata, adjacency matrices, spectral radii and polynomial roots."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse.csgraph import connected_components

from .closure import CountOverflow, UINT64_MAX
from .words import Word, residue_profile

MAX_VERTICES = 4096


class SpectralError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


@dataclass
class LabeledGraph:
    n: int
    edges: List[Tuple[int, int, int]]  # (source, target, symbol label)
    start: Tuple[int, ...] = ()
    words: Optional[List[Word]] = None  # vertex names, when vertices are words
    label_names: Optional[Sequence[str]] = field(default=None, repr=False)

    def __post_init__(self):
        for u, v, _ in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise SpectralError(f"edge {u}->{v} out of range for {self.n} vertices")
        if not self.start:
            self.start = tuple(range(self.n))

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v, _ in self.edges:
            A[u, v] += 1
        return A

    def vertex_name(self, v: int) -> str:
        if self.words is not None:
            return "".join(map(str, self.words[v]))
        return str(v)

    def label_name(self, c: int) -> str:
        if self.label_names is not None:
            return self.label_names[c]
        return str(c)


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial, coefficients in ascending degree order."""

    coeffs: Tuple[float, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] == 0:
            raise SpectralError("leading coefficient must be non-zero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        for p, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "" if p == 0 else ("x" if p == 1 else f"x^{p}")
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag:g}{mono}")
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        return out + "".join(f" {s} {b}" for s, b in terms[1:])


def lb1_matrix(delta: int) -> np.ndarray:
    """Adjacency matrix of the automaton for the nested-run language on ``delta`` symbols.

    Rows ``0..delta-2`` have a self-loop and an edge to the next state; the last
    row is all ones.
    """
    if delta < 2:
        raise SpectralError("need delta >= 2")
    A = np.zeros((delta, delta), dtype=np.int64)
    for i in range(delta - 1):
        A[i, i] = A[i, i + 1] = 1
    A[-1, :] = 1
    return A


def lb1_automaton(delta: int) -> LabeledGraph:
    """Graph of :func:`lb1_matrix`; state ``j`` means symbol ``a_{delta-j}`` was
    read last, and every edge is labelled with its target state's symbol.
    Words start in state 0."""
    A = lb1_matrix(delta)
    edges = [(u, v, delta - v) for u in range(delta) for v in range(delta) if A[u, v]]
    names = [f"a{i}" for i in range(delta + 1)]
    return LabeledGraph(delta, edges, start=(0,), label_names=names)


def lb1_characteristic(delta: int) -> Polynomial:
    """``x^delta - (1 + x + ... + x^(delta-2))``."""
    if delta < 2:
        raise SpectralError("need delta >= 2")
    return Polynomial(tuple([-1.0] * (delta - 1) + [0.0, 1.0]))


def gek_polynomial(k: int) -> Polynomial:
    """``x^(k+1) - x - 1``."""
    if k < 1:
        raise SpectralError("need k >= 1")
    return Polynomial(tuple([-1.0, -1.0] + [0.0] * (k - 1) + [1.0]))


def largest_real_root(f: Polynomial, lo: float = 1.0, hi: float = 2.0, tol: float = 1e-12) -> float:
    """Bisection for the root of ``f`` in ``[lo, hi]``.

    The caller guarantees ``f(lo) <= 0 < f(hi)`` and that ``f`` stays positive
    between the root and ``hi``, which makes the bracketed root the largest one.
    """
    flo, fhi = f(lo), f(hi)
    if not lo < hi or flo > 0 or fhi <= 0:
        raise SpectralError(f"invalid bracket [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}")
    if flo == 0:
        return float(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if fm > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _power_iteration(B: np.ndarray, tol: float, max_iter: int) -> float:
    # for irreducible B and positive x, min(Bx/x) <= lambda <= max(Bx/x)
    x = np.ones(B.shape[0])
    for _ in range(max_iter):
        y = B @ x
        if not y.any():
            return 0.0
        ratios = y / x
        lo, hi = ratios.min(), ratios.max()
        if hi - lo <= tol * hi:
            return float(0.5 * (lo + hi))
        x = y / y.max()
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations")


def spectral_radius(A, tol: float = 1e-12, max_iter: int = 10**6) -> float:
    """Perron root of a non-negative matrix.

    The matrix is split into strongly connected components and the largest
    component root is returned. Components without a self-loop may be
    periodic, so they are iterated as ``C + I`` (primitive, same Perron
    vector) and shifted back.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise SpectralError("need a non-empty square matrix")
    if (A < 0).any():
        raise SpectralError("matrix has negative entries")
    ncomp, labels = connected_components(A > 0, directed=True, connection="strong")
    best = 0.0
    for c in range(ncomp):
        idx = np.flatnonzero(labels == c)
        C = A[np.ix_(idx, idx)]
        if len(idx) == 1:
            lam = float(C[0, 0])
        elif np.diag(C).any():
            lam = _power_iteration(C, tol, max_iter)
        else:
            lam = _power_iteration(C + np.eye(len(idx)), tol, max_iter) - 1.0
        best = max(best, lam)
    return best


def debruijn_graph(sigma: int, d: int) -> LabeledGraph:
    """All ``(d+1)``-words, with an edge for each one-symbol slide."""
    if sigma < 1 or d < 1:
        raise SpectralError("need sigma >= 1 and d >= 1")
    if sigma ** (d + 1) > MAX_VERTICES:
        raise SpectralError(f"{sigma}^{d + 1} vertices exceeds the guard of {MAX_VERTICES}")
    words = list(itertools.product(range(sigma), repeat=d + 1))
    index = {w: i for i, w in enumerate(words)}
    edges = [(i, index[w[1:] + (c,)], c) for i, w in enumerate(words) for c in range(sigma)]
    return LabeledGraph(len(words), edges, words=words)


def prune_debruijn(g: LabeledGraph, allowed: Iterable[int], d: int) -> LabeledGraph:
    """Drop every edge ``v -> u`` whose endpoints, taken together, show a
    position-difference residue (mod ``d``) outside ``allowed`` for some
    symbol pair."""
    allowed = frozenset(allowed)
    if g.words is None:
        raise SpectralError("pruning needs a graph whose vertices are words")
    if not allowed <= set(range(d)):
        raise SpectralError(f"residues must lie in 0..{d - 1}")
    if len(allowed) >= d:
        raise SpectralError("the allowed residue set must be a proper subset")
    profiles = [residue_profile(w, d) for w in g.words]

    def keep(u, v):
        pu, pv = profiles[u], profiles[v]
        for pair in pu.keys() | pv.keys():
            if not (pu.get(pair, frozenset()) | pv.get(pair, frozenset())) <= allowed:
                return False
        return True

    edges = [e for e in g.edges if keep(e[0], e[1])]
    return LabeledGraph(g.n, edges, start=g.start, words=g.words, label_names=g.label_names)


def count_labeled_paths(g: LabeledGraph, n: int, accept: Optional[Iterable[int]] = None) -> int:
    """Number of length-``n`` edge paths leaving the start set (ending in
    ``accept`` if given), as an exact integer."""
    if n < 0:
        raise SpectralError("path length must be non-negative")
    counts = [0] * g.n
    for v in g.start:
        counts[v] += 1
    for _ in range(n):
        nxt = [0] * g.n
        for u, v, _ in g.edges:
            if counts[u]:
                nxt[v] += counts[u]
        counts = nxt
    ends = range(g.n) if accept is None else accept
    total = sum(counts[v] for v in ends)
    if total > UINT64_MAX:
        raise CountOverflow(f"path count {total} does not fit in 64 bits")
    return total


def to_dot(g: LabeledGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(g.n):
        lines.append(f'  v{v} [label="{g.vertex_name(v)}"];')
    for u, v, c in g.edges:
        lines.append(f'  v{u} -> v{v} [label="{g.label_name(c)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def matrix_tsv(A) -> str:
    A = np.asarray(A)
    return "".join("\t".join(str(int(x)) for x in row) + "\n" for row in A)
