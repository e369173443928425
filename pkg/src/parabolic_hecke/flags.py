"""
Exact linear algebra over Q for partial flags in Q^n.

Subspaces are stored by their reduced row echelon basis, so equal subspaces
compare and hash equal.  All arithmetic uses ``fractions.Fraction``.

>>> X = Matrix.diagonal([1, 2, -1, -2])
>>> V2 = Subspace.span([(1, 1, 1, 1), (1, -1, 0, 0)])
>>> (V2 & V2.image(X)).dim
0
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from pathlib import Path
from typing import Iterable, Sequence

from .hecke import ConsistencyError
from .parabolic import AdmissibleSequence, gamma
from .perm import (DomainError, Permutation, SizeMismatchError, all_perms, conjugation_stable,
                   double_quotient, format_subset, intersect_conjugate, is_min_left, rank_matrix,
                   validate_subset)

__all__ = [
    "Matrix", "Subspace", "PartialFlag", "rref", "rank", "relative_position", "permutation_from_ranks",
    "coalesce_refine", "type_sequence", "cell_membership", "random_regular_semisimple",
    "random_flag", "read_matrix", "read_flag", "intersection_dims", "brute_force_position",
]

Vector = tuple  # of Fractions


def rref(rows: Iterable[Sequence]) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Reduced row echelon form (nonzero rows) and pivot columns."""
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return (), ()
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return tuple(tuple(row) for row in A[:r]), tuple(pivots)


def rank(rows: Iterable[Sequence]) -> int:
    """Rank by fraction-free elimination on integer-scaled rows."""
    A = []
    for r in rows:
        r = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in r)) if r else 1
        A.append([int(x * den) for x in r])
    rk = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rk], A[piv] = A[piv], A[rk]
        p = A[rk]
        for i in range(rk + 1, len(A)):
            if A[i][c]:
                f, g = A[i][c], p[c]
                row = [g * x - f * y for x, y in zip(A[i], p)]
                d = gcd(*row)
                A[i] = [x // d for x in row] if d > 1 else row
        rk += 1
        if rk == len(A):
            break
    return rk


@dataclass(frozen=True)
class Matrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.rows)
        if len({len(r) for r in rows}) > 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != len(self.rows[0]):
            raise SizeMismatchError("matrix/vector size mismatch")
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        cols = list(zip(*other.rows))
        return Matrix(tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols)
                            for r in self.rows))

    def rank(self) -> int:
        return rank(self.rows)

    def is_invertible(self) -> bool:
        return len(self.rows) == len(self.rows[0]) and self.rank() == self.n


@dataclass(frozen=True)
class Subspace:
    n: int
    basis: tuple  # canonical RREF rows

    @classmethod
    def span(cls, vectors: Iterable[Sequence], n: int | None = None) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        if n is None:
            if not vectors:
                raise ValueError("ambient dimension needed for an empty span")
            n = len(vectors[0])
        if any(len(v) != n for v in vectors):
            raise SizeMismatchError(f"vectors not all of length {n}")
        return cls(n, rref(vectors)[0])

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls.span(Matrix.identity(n).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other):
        if self.n != other.n:
            raise SizeMismatchError(f"ambient dimensions {self.n} and {other.n}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.n)

    def __and__(self, other: "Subspace") -> "Subspace":
        """Intersection via the null space of ``[A; -B]``."""
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.n)
        a, b = len(self.basis), len(other.basis)
        # columns: coefficients x (for A) and y (for B); equations sum x_i A_i - sum y_j B_j = 0
        M = [[self.basis[i][c] for i in range(a)] + [-other.basis[j][c] for j in range(b)]
             for c in range(self.n)]
        R, piv = rref(M)
        free = [c for c in range(a + b) if c not in piv]
        vecs = []
        for fcol in free:
            sol = [Fraction(0)] * (a + b)
            sol[fcol] = Fraction(1)
            for row, pc in zip(R, piv):
                sol[pc] = -row[fcol]
            vecs.append(tuple(sum((sol[i] * self.basis[i][c] for i in range(a)), Fraction(0))
                              for c in range(self.n)))
        return Subspace.span(vecs, self.n)

    def image(self, X: Matrix) -> "Subspace":
        if X.n != self.n:
            raise SizeMismatchError("matrix/subspace size mismatch")
        return Subspace.span([X.apply(v) for v in self.basis], self.n)

    def join_dim(self, other: "Subspace") -> int:
        self._check(other)
        return rank(self.basis + other.basis)

    def meet_dim(self, other: "Subspace") -> int:
        return self.dim + other.dim - self.join_dim(other)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return self.join_dim(other) == other.dim

    def contains(self, v: Sequence) -> bool:
        return Subspace.span([v], self.n) <= self


def _dims(J: frozenset, n: int) -> tuple:
    return tuple(i for i in range(1, n) if i not in J)


@dataclass(frozen=True)
class PartialFlag:
    """``V_{i_1} < ... < V_{i_k}`` with ``{i_1..i_k} = {1..n-1} \\ J``."""

    n: int
    J: frozenset
    subspaces: tuple

    def __post_init__(self):
        J = validate_subset(self.J, self.n)
        object.__setattr__(self, "J", J)
        dims = _dims(J, self.n)
        if tuple(V.dim for V in self.subspaces) != dims:
            raise DomainError(f"subspace dimensions {[V.dim for V in self.subspaces]} != {list(dims)}")
        for A, B in zip(self.subspaces, self.subspaces[1:]):
            if not A <= B:
                raise DomainError("subspaces are not nested")

    @classmethod
    def from_chain(cls, n: int, chain: Iterable[Subspace]) -> "PartialFlag":
        chain = [V for V in chain if 0 < V.dim < n]
        J = frozenset(range(1, n)) - {V.dim for V in chain}
        return cls(n, J, tuple(chain))

    @classmethod
    def from_basis(cls, rows: Sequence[Sequence], J: Iterable[int]) -> "PartialFlag":
        """``V_i`` spanned by the first ``i`` rows."""
        n = len(rows)
        J = validate_subset(J, n)
        return cls(n, J, tuple(Subspace.span(rows[:i], n) for i in _dims(J, n)))

    def V(self, i: int) -> Subspace:
        if i == 0:
            return Subspace.zero(self.n)
        if i == self.n:
            return Subspace.whole(self.n)
        dims = _dims(self.J, self.n)
        if i not in dims:
            raise DomainError(f"no subspace of dimension {i} in this flag")
        return self.subspaces[dims.index(i)]

    def image(self, X: Matrix) -> "PartialFlag":
        return PartialFlag(self.n, self.J, tuple(V.image(X) for V in self.subspaces))


def intersection_dims(V: PartialFlag, X: Matrix) -> dict:
    """``{(i, j): dim(X V_i ∩ V_j)}`` over ``i, j`` in ``{0, dims, n}``."""
    idx = (0,) + _dims(V.J, V.n) + (V.n,)
    XV = {i: V.V(i).image(X) for i in idx}
    Vs = {j: V.V(j) for j in idx}
    # dim(A ∩ B) = dim A + dim B - dim(A + B)
    return {(i, j): XV[i].meet_dim(Vs[j]) for i in idx for j in idx}


def _rank_entry(r, i, j):
    return 0 if i == 0 or j == 0 else int(r[i - 1, j - 1])


def _matches(r, dims: dict) -> bool:
    return all(_rank_entry(r, i, j) == k for (i, j), k in dims.items())


def relative_position(J: Iterable[int], V: PartialFlag, X: Matrix) -> Permutation:
    """The unique ``w`` in ``^J W^J`` with ``r_{i,j}(w) = dim(X V_i ∩ V_j)``."""
    J = validate_subset(J, V.n)
    if J != V.J:
        raise DomainError(f"flag has type {format_subset(V.J)}, expected {format_subset(J)}")
    if not X.is_invertible():
        raise DomainError("X is not invertible")
    d = intersection_dims(V, X)
    found = [w for w in double_quotient(J, V.n) if _matches(rank_matrix(w), d)]
    if len(found) != 1:
        raise ConsistencyError(f"{len(found)} permutations match the intersection dimensions")
    return found[0]


def permutation_from_ranks(dims: dict, n: int) -> Permutation:
    """Full-flag case: ``w(i) = min{j : r_{i,j} > r_{i-1,j}}`` read off a
    table ``{(i, j): r_{i,j}}``."""
    return Permutation(min(j for j in range(1, n + 1) if dims[i, j] > dims[i - 1, j])
                       for i in range(1, n + 1))


def coalesce_refine(J: Iterable[int], V: PartialFlag, X: Matrix) -> tuple[frozenset, PartialFlag]:
    """The refined flag built from ``V_{i_j} + (V_{i_{j+1}} ∩ X V_{i_l})``
    with equal-dimension repeats removed, and its type ``J'``."""
    J = validate_subset(J, V.n)
    n = V.n
    idx = (0,) + _dims(J, n) + (n,)
    XV = [V.V(i).image(X) for i in idx[1:-1]]
    chain = []
    for a, b in zip(idx, idx[1:]):
        lo, hi = V.V(a), V.V(b)
        chain.append(lo)
        for XVi in XV:
            chain.append(lo + (hi & XVi))
    chain.append(Subspace.whole(n))
    uniq = []
    for S in chain:
        if uniq and S.dim == uniq[-1].dim:
            if S != uniq[-1]:
                raise ConsistencyError("coalesced chain is not nested")
            continue
        if uniq and not uniq[-1] <= S:
            raise ConsistencyError("coalesced chain is not nested")
        uniq.append(S)
    flag = PartialFlag.from_chain(n, uniq)
    return flag.J, flag


def type_sequence(J: Iterable[int], V: PartialFlag, X: Matrix) -> AdmissibleSequence:
    """Iterate relative position and refinement until ``w J w^-1 = J``."""
    J = validate_subset(J, V.n)
    pairs = []
    for _ in range(len(J) + 2):
        w = relative_position(J, V, X)
        pairs.append((J, w))
        if conjugation_stable(w, J):
            seq = AdmissibleSequence(tuple(pairs))
            seq.check()
            return seq
        Jn, V = coalesce_refine(J, V, X)
        if Jn != intersect_conjugate(J, w):
            raise ConsistencyError(f"refined type {format_subset(Jn)} != J ∩ wJw^-1")
        J = Jn
    raise ConsistencyError("type sequence did not stabilize")


def cell_membership(w: Permutation, J: Iterable[int], V: PartialFlag, X: Matrix) -> bool:
    """Whether ``(X, V)`` lies in the open cell labelled by ``w``."""
    J = validate_subset(J, w.n)
    if not is_min_left(w, J):
        raise DomainError(f"{w} is not minimal in W_J {w}")
    return gamma(type_sequence(J, V, X)) == w


# sampling ---------------------------------------------------------------------

def random_regular_semisimple(n: int, rng: random.Random, spread: int = 3) -> Matrix:
    """Diagonal matrix with distinct nonzero small integer entries."""
    pool = [x for x in range(-spread * n, spread * n + 1) if x]
    return Matrix.diagonal(rng.sample(pool, n))


def random_flag(n: int, J: Iterable[int], rng: random.Random, X: Matrix | None = None) -> PartialFlag:
    """Flag from a random invertible sparse integer basis.

    Sparse entries (and, when ``X`` is given, occasional Krylov bases
    ``v, Xv, X^2 v, ...``) make the non-generic cells reachable.
    """
    J = validate_subset(J, n)
    while True:
        mode = rng.random()
        if X is not None and mode < 0.3:
            v = tuple(rng.choice((0, 1, 1, -1, 2)) for _ in range(n))
            rows = [v]
            for _ in range(n - 1):
                rows.append(X.apply(rows[-1]))
            if mode < 0.1:
                rng.shuffle(rows)
        else:
            rows = [tuple(rng.choice((0, 0, 0, 1, -1, 1, 2)) for _ in range(n)) for _ in range(n)]
        if Matrix(tuple(rows)).is_invertible():
            return PartialFlag.from_basis(rows, J)


# file formats -----------------------------------------------------------------

def _parse_row(line: str) -> tuple:
    return tuple(Fraction(tok) for tok in line.split())


def read_matrix(path: str | Path) -> Matrix:
    """One row per line, entries like ``3`` or ``-1/2`` separated by spaces."""
    rows = [_parse_row(line) for line in Path(path).read_text().splitlines() if line.strip()]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ValueError(f"{path}: expected a square matrix")
    return Matrix(tuple(rows))


def read_flag(path: str | Path) -> PartialFlag:
    """Blocks of vectors separated by blank lines; block ``k`` together with
    the earlier blocks spans the ``k``-th subspace."""
    blocks, cur = [], []
    for line in Path(path).read_text().splitlines():
        if line.strip():
            cur.append(_parse_row(line))
        elif cur:
            blocks.append(cur)
            cur = []
    if cur:
        blocks.append(cur)
    if not blocks:
        raise ValueError(f"{path}: empty flag")
    n = len(blocks[0][0])
    chain, acc = [], []
    for b in blocks:
        acc.extend(b)
        chain.append(Subspace.span(acc, n))
    return PartialFlag.from_chain(n, chain)


def brute_force_position(V: PartialFlag, X: Matrix) -> Permutation:
    """Search all of S_n for the rank-matrix match (full flags)."""
    d = intersection_dims(V, X)
    for w in all_perms(V.n):
        if _matches(rank_matrix(w), d):
            return w
    raise ConsistencyError("no permutation matches")
