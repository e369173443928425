"""
Hecke algebra of S_n over Z[v, 1/v] with v = q^(1/2).

Quadratic relation ``T_s^2 = (q-1) T_s + q``.  Elements are dictionaries
``{Permutation: LaurentScalar}``.  Kazhdan-Lusztig polynomials are computed
for the whole group at once by a dense table kernel and cached per ``n``.

>>> from parabolic_hecke.perm import Permutation
>>> s = T(Permutation.simple(1, 2))
>>> print(s * s)
qT[12]+(-1+q)T[21]
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from ._memo import once
from .laurent import LaurentScalar
from .perm import Permutation, SizeMismatchError, all_perms, left_quotient
from .symfunc import SymmetricFunction, as_partition, kostka, partitions

__all__ = [
    "HeckeElement", "T", "hecke_multiply", "iota", "KLData", "kl_data", "kl_basis",
    "kl_poly", "InducedModule", "induced_module", "induced_trace", "irreducible_character",
    "frobenius_char", "char_of_T", "ConsistencyError",
]

Q = LaurentScalar.q()
QM1 = Q - 1


class ConsistencyError(RuntimeError):
    """An internal identity failed; indicates a bug rather than bad input."""


# elements ------------------------------------------------------------------

class HeckeElement:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Permutation, object] | None = None):
        self.n = n
        clean: dict = {}
        for w, c in (terms or {}).items():
            if w.n != n:
                raise SizeMismatchError(f"{w} is not in S_{n}")
            c = LaurentScalar.coerce(c)
            if c:
                clean[w] = c
        self.terms = clean

    @classmethod
    def _raw(cls, n, terms):
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = {w: c for w, c in terms.items() if c}
        return obj

    @classmethod
    def one(cls, n: int) -> "HeckeElement":
        return cls._raw(n, {Permutation.identity(n): LaurentScalar.const(1)})

    def __add__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        _check_n(self, other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement._raw(self.n, out)

    def __neg__(self):
        return HeckeElement._raw(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HeckeElement":
        c = LaurentScalar.coerce(c)
        return HeckeElement._raw(self.n, {w: x * c for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return hecke_multiply(self, other)
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def coefficient(self, w: Permutation) -> LaurentScalar:
        return self.terms.get(w, LaurentScalar())

    def map_coeffs(self, fn) -> "HeckeElement":
        return HeckeElement._raw(self.n, {w: fn(c) for w, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0])

    def __repr__(self):
        return f"HeckeElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for w, c in self.sorted_terms():
            body = f"T[{w}]"
            if c == LaurentScalar.const(1):
                out.append("+" + body)
            elif c == LaurentScalar.const(-1):
                out.append("-" + body)
            elif len(c.coeffs) == 1:
                txt = c.format()
                out.append(("" if txt.startswith("-") else "+") + txt + body)
            else:
                out.append(f"+({c.format()}){body}")
        text = "".join(out)
        return text[1:] if text.startswith("+") else text

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [{"perm": str(w), "coeff": c.to_json()}
                                       for w, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "HeckeElement":
        n = data["n"]
        return cls(n, {Permutation.parse(t["perm"], n): LaurentScalar.from_json(t["coeff"])
                       for t in data["terms"]})


def T(w: Permutation, coeff=1) -> HeckeElement:
    return HeckeElement(w.n, {w: coeff})


def _check_n(a, b):
    if a.n != b.n:
        raise SizeMismatchError(f"Hecke elements of S_{a.n} and S_{b.n}")


def _right_mul_simple(terms: dict, i: int) -> dict:
    out: dict = {}
    for x, c in terms.items():
        xs = x.right_mul_simple(i)
        if xs.length > x.length:
            out[xs] = out[xs] + c if xs in out else c
        else:
            out[x] = out[x] + c * QM1 if x in out else c * QM1
            out[xs] = out[xs] + c * Q if xs in out else c * Q
    return {w: c for w, c in out.items() if c}


def hecke_multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product in the T basis, pushing each ``T_z`` of ``b`` through a
    reduced word of ``z``."""
    _check_n(a, b)
    out: dict = {}
    for z, cz in b.terms.items():
        part = dict(a.terms)
        for i in z.reduced_word():
            part = _right_mul_simple(part, i)
        for w, c in part.items():
            c = c * cz
            out[w] = out[w] + c if w in out else c
    return HeckeElement._raw(a.n, out)


def _inverse_simple(n: int, i: int) -> HeckeElement:
    """``T_s^{-1} = q^{-1} T_s - (1 - q^{-1}) T_e``."""
    qi = LaurentScalar.q(-1)
    return HeckeElement._raw(n, {Permutation.simple(i, n): qi,
                                 Permutation.identity(n): qi - 1})


def iota(a: HeckeElement) -> HeckeElement:
    """Ring involution with ``T_w -> T_{w^-1}^-1`` and ``v -> 1/v``."""
    n = a.n
    out = HeckeElement(n)
    for w, c in a.terms.items():
        img = HeckeElement.one(n)
        for i in w.reduced_word():
            img = hecke_multiply(img, _inverse_simple(n, i))
        out = out + img.scale(c.bar())
    return out


# Kazhdan-Lusztig polynomials ------------------------------------------------

@dataclass(frozen=True)
class KLData:
    w: Permutation
    polys: dict = field(repr=False)
    mu: dict = field(repr=False)


@dataclass(frozen=True)
class _Group:
    n: int
    perms: tuple
    index: dict
    lengths: np.ndarray
    left_mul: np.ndarray
    left_desc: np.ndarray
    right_mul: np.ndarray


@once
def _group(n: int) -> _Group:
    perms = all_perms(n)
    index = {w: k for k, w in enumerate(perms)}
    N = len(perms)
    lengths = np.array([w.length for w in perms], dtype=np.int64)
    left_mul = np.zeros((N, max(n - 1, 1)), dtype=np.int64)
    right_mul = np.zeros_like(left_mul)
    left_desc = np.zeros((N, max(n - 1, 1)), dtype=np.bool_)
    for k, w in enumerate(perms):
        for i in range(1, n):
            sw = w.left_mul_simple(i)
            left_mul[k, i - 1] = index[sw]
            right_mul[k, i - 1] = index[w.right_mul_simple(i)]
            left_desc[k, i - 1] = lengths[index[sw]] < lengths[k]
    return _Group(n, perms, index, lengths, left_mul, left_desc, right_mul)


def _cache_file(n: int) -> Path | None:
    d = os.environ.get("HECKE_CACHE_DIR")
    return Path(d) / f"kl_{n}.txt" if d else None


def _load_cache(path: Path, g: _Group, D: int) -> np.ndarray | None:
    N = len(g.perms)
    P = np.zeros((N, N, D), dtype=np.int64)
    try:
        lines = path.read_text().splitlines()
    except OSError:
        return None
    try:
        for line in lines:
            if not line.strip():
                continue
            nn, w, z, coeffs = line.split(":")
            if int(nn) != g.n:
                return None
            cs = [int(c) for c in coeffs.split(",")]
            a = g.index[Permutation.parse(w, g.n)]
            b = g.index[Permutation.parse(z, g.n)]
            P[a, b, :len(cs)] = cs
    except (ValueError, KeyError, IndexError):
        return None
    return P


def _save_cache(path: Path, g: _Group, P: np.ndarray) -> None:
    lines = []
    for a, b in zip(*np.nonzero(P.any(axis=2))):
        cs = P[a, b]
        top = int(np.nonzero(cs)[0].max()) + 1
        lines.append(f"{g.n}:{g.perms[a]}:{g.perms[b]}:{','.join(str(int(c)) for c in cs[:top])}")
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    tmp.replace(path)


@once
def _kl_table(n: int) -> np.ndarray:
    """``P[w, x, k]``: coefficient of ``q^k`` in ``P_{x,w}`` (indices into
    ``all_perms(n)``)."""
    g = _group(n)
    D = n * (n - 1) // 4 + 1
    path = _cache_file(n)
    if path is not None and path.exists():
        P = _load_cache(path, g, D)
        if P is not None:
            return P
    if n == 1:
        P = np.ones((1, 1, 1), dtype=np.int64)
    else:
        first = np.array([int(np.argmax(row)) for row in g.left_desc], dtype=np.int64)
        P = kernels.kl_table(g.left_mul, g.lengths, g.left_desc, first, D)
    if path is not None:
        _save_cache(path, g, P)
    return P


def kl_poly(z: Permutation, w: Permutation) -> LaurentScalar:
    """``P_{z,w}`` as a polynomial in q."""
    if z.n != w.n:
        raise SizeMismatchError("KL polynomial of permutations of different sizes")
    g = _group(w.n)
    row = _kl_table(w.n)[g.index[w], g.index[z]]
    return LaurentScalar.from_q_coeffs(int(c) for c in row)


def kl_data(w: Permutation) -> KLData:
    g = _group(w.n)
    P = _kl_table(w.n)[g.index[w]]
    lw = w.length
    polys, mu = {}, {}
    for b in np.nonzero(P.any(axis=1))[0]:
        z = g.perms[b]
        polys[z] = LaurentScalar.from_q_coeffs(int(c) for c in P[b])
        d = lw - z.length - 1
        if d >= 0 and d % 2 == 0 and P[b, d // 2]:
            mu[z] = int(P[b, d // 2])
    return KLData(w, polys, mu)


def kl_basis(w: Permutation) -> HeckeElement:
    """``q^{l(w)/2} C'_w = sum_z P_{z,w} T_z``."""
    return HeckeElement._raw(w.n, kl_data(w).polys)


# induced modules and characters ---------------------------------------------

@dataclass(frozen=True)
class InducedModule:
    """Module induced from the q-trivial character of ``H_J``.

    Basis vectors ``m_y`` are labelled by ``y`` in the quotient ``^J W``; the
    vector ``m_y`` stands for ``T_x (x) 1`` with ``x = y^-1`` minimal in
    ``x W_J``.  ``cases[g, b]``/``tgts[g, b]`` describe ``T_{s_{g+1}} m_b``.
    """

    mu: tuple
    J: frozenset
    basis: tuple
    cases: np.ndarray = field(repr=False)
    tgts: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def act(self, i: int, vec: np.ndarray) -> np.ndarray:
        """``T_{s_i}`` on a coefficient array ``[dim, D]`` (q-polynomials)."""
        return kernels.induced_action(self.cases, self.tgts, i - 1, vec)

    def trace_word(self, word: Iterable[int]) -> LaurentScalar:
        word = np.array([i - 1 for i in word], dtype=np.int64)
        tr = kernels.induced_trace(self.cases, self.tgts, word, len(word) + 1)
        return LaurentScalar.from_q_coeffs(int(c) for c in tr)


def _composition_subset(mu: Iterable[int]) -> frozenset:
    J, pos = set(), 0
    for part in mu:
        J.update(range(pos + 1, pos + part))
        pos += part
    return frozenset(J)


@once
def induced_module(mu: tuple) -> InducedModule:
    mu = tuple(int(x) for x in mu)
    n = sum(mu)
    J = _composition_subset(mu)
    basis = left_quotient(J, n)
    index = {y: k for k, y in enumerate(basis)}
    d = len(basis)
    cases = np.zeros((max(n - 1, 1), d), dtype=np.int64)
    tgts = np.zeros_like(cases)
    for b, y in enumerate(basis):
        for i in range(1, n):
            ys = y.right_mul_simple(i)
            if ys.length > y.length:
                if ys in index:
                    cases[i - 1, b], tgts[i - 1, b] = 0, index[ys]
                else:
                    cases[i - 1, b], tgts[i - 1, b] = 1, b
            else:
                cases[i - 1, b], tgts[i - 1, b] = 2, index[ys]
    return InducedModule(mu, J, basis, cases, tgts)


def induced_trace(mu: Iterable[int], a: HeckeElement) -> LaurentScalar:
    """Trace of ``a`` on the module induced from the q-trivial character of
    the Young subgroup of shape ``mu``."""
    mu = tuple(mu)
    if sum(mu) != a.n:
        raise SizeMismatchError(f"|{mu}| != {a.n}")
    M = induced_module(mu)
    out = LaurentScalar()
    for w, c in a.terms.items():
        out = out + c * M.trace_word(w.reduced_word())
    return out


@once
def _induced_table(n: int) -> np.ndarray:
    """``I[w, m, k]``: coefficient of ``q^k`` in the induced trace of ``T_w``
    for ``m``-th partition, using trace-function reductions along cyclic
    shift classes and a direct trace only at reduction-free classes."""
    g = _group(n)
    parts = partitions(n)
    N, L = len(g.perms), len(parts)
    D = n * (n - 1) // 2 + 1
    out = np.zeros((N, L, D), dtype=np.int64)
    done = np.zeros(N, dtype=bool)
    mods = [induced_module(mu) for mu in parts]
    for w in range(N):
        if done[w]:
            continue
        lw = g.lengths[w]
        # cyclic shift class: conjugations by s that keep the length
        cls, stack, red = {w}, [w], None
        while stack and red is None:
            u = stack.pop()
            for s in range(n - 1):
                sus = g.right_mul[g.left_mul[u, s], s]
                lu = g.lengths[sus]
                if lu == lw - 2:
                    red = (u, s)
                    break
                if lu == lw and sus not in cls:
                    cls.add(sus)
                    stack.append(sus)
        if red is not None:
            u, s = red
            su = g.left_mul[u, s]
            sus = g.right_mul[su, s]
            val = np.zeros((L, D), dtype=np.int64)
            val[:, 1:] += out[su, :, :-1] + out[sus, :, :-1]
            val -= out[su]
            out[w] = val
            done[w] = True
            continue
        word = np.array([i - 1 for i in g.perms[w].reduced_word()], dtype=np.int64)
        val = np.zeros((L, D), dtype=np.int64)
        for m, M in enumerate(mods):
            tr = kernels.induced_trace(M.cases, M.tgts, word, D)
            val[m] = tr
        for u in cls:
            out[u] = val
            done[u] = True
    return out


@once
def _char_table(n: int) -> np.ndarray:
    """``X[w, l, k]``: coefficient of ``q^k`` in ``chi^lam(T_w)``."""
    parts = partitions(n)
    I = _induced_table(n)
    X = np.zeros_like(I)
    # most dominant first: reverse lexicographic order extends dominance
    for m in range(len(parts) - 1, -1, -1):
        mu = parts[m]
        acc = I[:, m].copy()
        for l in range(m + 1, len(parts)):
            K = kostka(parts[l], mu)
            if K:
                acc -= K * X[:, l]
        if kostka(mu, mu) != 1:
            raise ConsistencyError("Kostka matrix is not unitriangular")
        X[:, m] = acc
    return X


def char_of_T(w: Permutation) -> dict:
    """``{lam: chi^lam(T_w)}``."""
    g = _group(w.n)
    X = _char_table(w.n)[g.index[w]]
    return {lam: LaurentScalar.from_q_coeffs(int(c) for c in X[l])
            for l, lam in enumerate(partitions(w.n))}


def irreducible_character(lam: Iterable[int], a: HeckeElement) -> LaurentScalar:
    lam = as_partition(lam)
    if sum(lam) != a.n:
        raise SizeMismatchError(f"|{lam}| != {a.n}")
    g = _group(a.n)
    l = partitions(a.n).index(lam)
    X = _char_table(a.n)
    out = LaurentScalar()
    for w, c in a.terms.items():
        out = out + c * LaurentScalar.from_q_coeffs(int(x) for x in X[g.index[w], l])
    return out


def frobenius_char(a: HeckeElement) -> SymmetricFunction:
    """``ch(a) = sum_lam chi^lam(a) s_lam``."""
    n = a.n
    g = _group(n)
    X = _char_table(n)
    parts = partitions(n)
    acc = [LaurentScalar() for _ in parts]
    for w, c in a.terms.items():
        row = X[g.index[w]]
        for l in range(len(parts)):
            if row[l].any():
                acc[l] = acc[l] + c * LaurentScalar.from_q_coeffs(int(x) for x in row[l])
    return SymmetricFunction("s", n, dict(zip(parts, acc)))

