"""
Chromatic quasisymmetric functions of indifference graphs.

Colorings are enumerated by a compiled kernel over maps ``[n] -> [n]`` whose
image is an initial segment ``{1..k}``; each such map contributes to the
monomial quasisymmetric function of its content composition.  The result is
checked to be symmetric before being read off in the monomial basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .hecke import ConsistencyError
from .laurent import LaurentScalar, q_factorial
from .perm import DomainError, HessenbergFunction
from .symfunc import SymmetricFunction

__all__ = [
    "Graph", "indifference_graph", "WeightedGraphMap", "csf_q", "weighted_csf_q",
    "clique_expand", "quasisymmetric_expansion", "quotient_pair",
]


@dataclass(frozen=True)
class Graph:
    """Simple graph on ``1..n``; edges stored as pairs ``(i, j)`` with ``i < j``."""

    n: int
    edges: frozenset

    def __post_init__(self):
        for i, j in self.edges:
            if not 1 <= i < j <= self.n:
                raise ValueError(f"bad edge {(i, j)} for n={self.n}")

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def is_indifference(self) -> bool:
        """Edges are interval closed in the natural order."""
        for i, k in self.edges:
            for j in range(i + 1, k):
                if (j, k) not in self.edges or (i, j) not in self.edges:
                    return False
        return True

    def hessenberg(self) -> HessenbergFunction:
        if not self.is_indifference():
            raise DomainError("graph is not an indifference graph in its vertex order")
        return HessenbergFunction(max([i] + [j for a, j in self.edges if a == i])
                                  for i in range(1, self.n + 1))

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges:
            A[i - 1, j - 1] = A[j - 1, i - 1] = True
        return A


def indifference_graph(m: Sequence[int]) -> Graph:
    """``G_m``: edges ``{i, j}`` with ``i < j <= m(i)``."""
    m = HessenbergFunction(m)
    return Graph(len(m), frozenset((i, j) for i in range(1, len(m) + 1)
                                   for j in range(i + 1, m[i - 1] + 1)))


@dataclass(frozen=True)
class WeightedGraphMap:
    graph: Graph
    f: tuple

    def __post_init__(self):
        f = tuple(int(x) for x in self.f)
        object.__setattr__(self, "f", f)
        if any(b < a for a, b in zip(f, f[1:])):
            raise DomainError(f"f={f} is not weakly increasing")
        if set(f) != set(range(1, self.graph.n + 1)):
            raise DomainError(f"f={f} is not onto 1..{self.graph.n}")

    @property
    def n(self) -> int:
        return len(self.f)

    def fiber_sizes(self) -> tuple:
        return tuple(self.f.count(j) for j in range(1, self.graph.n + 1))

    @classmethod
    def parse(cls, text: str) -> "WeightedGraphMap":
        """``"G=2,3,4,4;f=1,1,2,3"``."""
        parts = dict(p.split("=", 1) for p in text.replace(" ", "").split(";"))
        G = indifference_graph(HessenbergFunction.parse(parts["G"]))
        return cls(G, tuple(int(x) for x in parts["f"].split(",")))


def quasisymmetric_expansion(n: int, proper, ascent, increasing) -> dict:
    """``{composition: LaurentScalar}`` over colorings with image ``{1..k}``."""
    keys, ascs = kernels.coloring_stats(n, n, proper, ascent, increasing)
    sel = keys >= 0
    out: dict = {}
    if not sel.any():
        return out
    pairs = np.stack([keys[sel], ascs[sel]], axis=1)
    uniq, counts = np.unique(pairs, axis=0, return_counts=True)
    for (key, a), c in zip(uniq, counts):
        comp = []
        key = int(key)
        for _ in range(n):
            comp.append(key % (n + 1))
            key //= n + 1
        comp = tuple(x for x in comp if x)
        out[comp] = out.get(comp, LaurentScalar()) + LaurentScalar.q(int(a)) * int(c)
    return out


def _symmetric_from_quasi(n: int, quasi: dict) -> SymmetricFunction:
    terms: dict = {}
    for comp, c in quasi.items():
        lam = tuple(sorted(comp, reverse=True))
        if lam in terms and terms[lam] != c:
            raise ConsistencyError(f"not symmetric: M{comp} has {c}, M{lam} has {terms[lam]}")
        terms[lam] = c
    for lam in terms:
        for comp in set(permutations(lam)):
            if comp not in quasi:
                raise ConsistencyError(f"not symmetric: M{comp} missing")
    return SymmetricFunction("m", n, terms)


def csf_q(G: Graph) -> SymmetricFunction:
    """Sum of ``q^asc(kappa) x^kappa`` over proper colorings, in the m basis."""
    n = G.n
    A = np.triu(G.adjacency(), 1)
    quasi = quasisymmetric_expansion(n, A, A, np.zeros_like(A))
    return _symmetric_from_quasi(n, quasi)


def _weighted_masks(GF: WeightedGraphMap):
    n = GF.n
    f = GF.f
    proper = np.zeros((n, n), dtype=bool)
    ascent = np.zeros_like(proper)
    increasing = np.zeros_like(proper)
    for i in range(n):
        for j in range(i + 1, n):
            if f[i] == f[j]:
                increasing[i, j] = True
            elif GF.graph.adjacent(f[i], f[j]):
                proper[i, j] = True
                ascent[i, j] = True
    return proper, ascent, increasing


def weighted_csf_q(GF: WeightedGraphMap, check: bool = True) -> SymmetricFunction:
    """Colorings strictly increasing along each fiber and proper across
    adjacent fibers; ascents are counted only between adjacent fibers.

    With ``check`` the identity ``result * prod [|fiber|]_q! = csf_q(G^f)``
    is verified.
    """
    proper, ascent, increasing = _weighted_masks(GF)
    res = _symmetric_from_quasi(GF.n, quasisymmetric_expansion(GF.n, proper, ascent, increasing))
    if check:
        denom = LaurentScalar.const(1)
        for k in GF.fiber_sizes():
            denom = denom * q_factorial(k)
        other = csf_q(clique_expand(GF)).divide_coeffs(denom)
        if other != res:
            raise ConsistencyError(f"division identity fails for {GF}")
    return res


def clique_expand(GF: WeightedGraphMap) -> Graph:
    """Replace each vertex ``j`` of ``G`` by a clique on ``f^-1(j)``."""
    f = GF.f
    n = len(f)
    edges = {(i + 1, j + 1) for i in range(n) for j in range(i + 1, n)
             if f[i] == f[j] or GF.graph.adjacent(f[i], f[j])}
    return Graph(n, frozenset(edges))


def quotient_pair(m: Iterable[int]) -> tuple[frozenset, WeightedGraphMap]:
    """Merge ``j, j+1`` whenever ``j`` is not a value of ``m`` and
    ``m(j) = m(j+1)``.  Returns the merged set ``J`` and ``(G, f)`` with
    ``G`` the quotient indifference graph, so that ``G^f = G_m``."""
    m = HessenbergFunction(m)
    n = len(m)
    image = set(m)
    J = frozenset(j for j in range(1, n) if j not in image and m[j - 1] == m[j])
    f, cur = [], 0
    for i in range(1, n + 1):
        if i - 1 not in J:
            cur += 1
        f.append(cur)
    qm = [0] * cur
    for i in range(1, n + 1):
        qm[f[i - 1] - 1] = max(qm[f[i - 1] - 1], f[m[i - 1] - 1])
    G = indifference_graph(qm)
    return J, WeightedGraphMap(G, tuple(f))
