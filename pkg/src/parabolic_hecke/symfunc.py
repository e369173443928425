"""
Homogeneous symmetric functions with Laurent-polynomial coefficients.

Five bases are supported, tagged ``"m"``, ``"e"``, ``"h"``, ``"p"`` and
``"s"``.  All arithmetic goes through the power-sum basis with rational
coefficients; results are handed back in the caller's basis.

>>> f = SymmetricFunction.from_terms("s", {(2, 1): 1})
>>> print(f.to("h"))
h[2,1]-h[3]
>>> print(SymmetricFunction.from_terms("h", {(2,): 1}).to("p"))
(p[1,1]+p[2])/2
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Iterable, Iterator, Mapping

from ._memo import once
from .laurent import LaurentScalar

__all__ = [
    "Partition", "partitions", "conjugate", "dominates", "z_coefficient",
    "kostka", "sn_character", "character_table", "num_standard_tableaux",
    "SymmetricFunction", "BASES", "monomial_expansion",
]

BASES = ("m", "e", "h", "p", "s")
Partition = tuple  # weakly decreasing tuple of positive ints


def as_partition(parts: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted((int(p) for p in parts if p), reverse=True))
    if any(p < 0 for p in out):
        raise ValueError(f"negative part in {out}")
    return out


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """Partitions of ``n`` in increasing lexicographic order."""
    out = []

    def rec(rem, cap, prefix):
        if rem == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(rem, cap), 0, -1):
            rec(rem - p, p, prefix + [p])

    rec(n, n, [])
    return tuple(sorted(out))


def conjugate(lam: Iterable[int]) -> tuple[int, ...]:
    lam = tuple(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def dominates(lam, mu) -> bool:
    """``lam >= mu`` in dominance order (same size)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def z_coefficient(mu: Iterable[int]) -> int:
    """``z_mu = prod_i i^{m_i} m_i!``."""
    out = 1
    for part, mult in Counter(mu).items():
        out *= part ** mult * factorial(mult)
    return out


# Kostka numbers and S_n characters -----------------------------------------------

@once
def kostka(lam: tuple, mu: tuple) -> int:
    """Number of semistandard tableaux of shape ``lam`` and content ``mu``.

    Content entries are placed largest value first: removing a horizontal
    strip of size ``mu[-1]`` from ``lam`` in every possible way.
    """
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    if not mu:
        return 1
    k = mu[-1]
    rest = mu[:-1]
    total = 0
    for nu in _horizontal_strip_removals(lam, k):
        total += kostka(nu, rest)
    return total


def _horizontal_strip_removals(lam, k):
    """Partitions ``nu`` with ``lam / nu`` a horizontal strip of size ``k``."""
    lam = list(lam)
    L = len(lam)
    out = []

    def rec(i, rem, nu):
        if i == L:
            if rem == 0:
                out.append(tuple(p for p in nu if p))
            return
        lower = lam[i + 1] if i + 1 < L else 0
        for take in range(0, min(rem, lam[i] - lower) + 1):
            rec(i + 1, rem - take, nu + [lam[i] - take])

    rec(0, k, [])
    return out


def _beta(lam, length):
    return tuple(lam[i] + (length - 1 - i) if i < len(lam) else (length - 1 - i)
                 for i in range(length))


@once
def sn_character(lam: tuple, mu: tuple) -> int:
    """``chi^lam(mu)`` by the Murnaghan-Nakayama rule (border strips
    removed as moves on a beta-set)."""
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    if not mu:
        return 1
    k = mu[0]
    rest = mu[1:]
    L = len(lam)
    beta = _beta(lam, L)
    bset = set(beta)
    total = 0
    for b in beta:
        if b - k >= 0 and (b - k) not in bset:
            # height = number of beads strictly between b-k and b
            height = sum(1 for c in beta if b - k < c < b)
            new = sorted((bset - {b}) | {b - k}, reverse=True)
            nu = tuple(p for p in (new[i] - (L - 1 - i) for i in range(L)) if p)
            total += (-1) ** height * sn_character(nu, rest)
    return total


def num_standard_tableaux(lam) -> int:
    """Hook-length formula."""
    lam = tuple(lam)
    n = sum(lam)
    lamc = conjugate(lam)
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (lamc[j] - i - 1) + 1
    return factorial(n) // hooks


@once
def character_table(n: int) -> dict:
    return {(lam, mu): sn_character(lam, mu) for lam in partitions(n) for mu in partitions(n)}


# monomial expansions ----------------------------------------------------------

def monomial_expansion(power_sums: Iterable[int], nvars: int) -> dict[tuple, int]:
    """Expand ``prod_k p_k`` as a polynomial in ``nvars`` variables
    (``{exponent vector: coefficient}``)."""
    poly = {(0,) * nvars: 1}
    for k in power_sums:
        new: dict[tuple, int] = {}
        for expo, c in poly.items():
            for i in range(nvars):
                e = list(expo)
                e[i] += k
                t = tuple(e)
                new[t] = new.get(t, 0) + c
        poly = new
    return poly


@once
def _p_to_m(n: int) -> dict:
    """``p_mu = sum_lam R[mu][lam] m_lam`` via explicit monomials."""
    out = {}
    for mu in partitions(n):
        poly = monomial_expansion(mu, n)
        out[mu] = {lam: poly.get(tuple(lam) + (0,) * (n - len(lam)), 0) for lam in partitions(n)}
        out[mu] = {lam: c for lam, c in out[mu].items() if c}
    return out


def _solve_exact(rows: dict, keys: tuple) -> dict:
    """Invert the square matrix ``rows[a][b]`` (dict of dicts) exactly."""
    idx = {k: i for i, k in enumerate(keys)}
    N = len(keys)
    A = [[Fraction(rows[a].get(b, 0)) for b in keys] + [Fraction(int(i == j)) for j in range(N)]
         for i, a in enumerate(keys)]
    for col in range(N):
        piv = next(r for r in range(col, N) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(N):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    inv = {}
    for i, b in enumerate(keys):
        inv[b] = {keys[j]: A[i][N + j] for j in range(N) if A[i][N + j] != 0}
    del idx
    return inv


def _mul_p(x: dict, y: dict) -> dict:
    out: dict = {}
    for mu, a in x.items():
        for nu, b in y.items():
            key = tuple(sorted(mu + nu, reverse=True))
            out[key] = out.get(key, 0) + a * b
    return {k: v for k, v in out.items() if v}


@once
def _to_p_matrix(basis: str, n: int) -> dict:
    """``basis_lam = sum_mu M[lam][mu] p_mu``."""
    parts = partitions(n)
    if basis == "p":
        return {lam: {lam: Fraction(1)} for lam in parts}
    if basis == "s":
        return {lam: {mu: Fraction(sn_character(lam, mu), z_coefficient(mu)) for mu in parts
                      if sn_character(lam, mu)} for lam in parts}
    if basis in ("h", "e"):
        out = {}
        for lam in parts:
            acc = {(): Fraction(1)}
            for k in lam:
                acc = _mul_p(acc, _single_to_p(basis, k))
            out[lam] = acc
        return out
    if basis == "m":
        return _solve_exact(_p_to_m(n), parts)
    raise ValueError(f"unknown basis {basis!r}")


@once
def _single_to_p(basis: str, k: int) -> dict:
    out = {}
    for mu in partitions(k):
        sign = (-1) ** (k - len(mu)) if basis == "e" else 1
        out[mu] = Fraction(sign, z_coefficient(mu))
    return out


@once
def _from_p_matrix(basis: str, n: int) -> dict:
    """``p_mu = sum_lam M[mu][lam] basis_lam``."""
    parts = partitions(n)
    if basis == "p":
        return {mu: {mu: Fraction(1)} for mu in parts}
    if basis == "s":
        return {mu: {lam: Fraction(sn_character(lam, mu)) for lam in parts if sn_character(lam, mu)}
                for mu in parts}
    if basis == "m":
        return {mu: {lam: Fraction(c) for lam, c in row.items()} for mu, row in _p_to_m(n).items()}
    return _solve_exact(_to_p_matrix(basis, n), parts)


# the symmetric function type --------------------------------------------------

def _coerce_coeff(c) -> LaurentScalar:
    return LaurentScalar.coerce(c)


class SymmetricFunction:
    """A homogeneous symmetric function ``sum_lam c_lam b_lam`` in one basis."""

    __slots__ = ("basis", "degree", "terms")

    def __init__(self, basis: str, degree: int, terms: Mapping[tuple, object] | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        self.degree = int(degree)
        clean = {}
        for lam, c in (terms or {}).items():
            lam = as_partition(lam)
            if sum(lam) != self.degree:
                raise ValueError(f"partition {lam} has size != {self.degree}")
            c = _coerce_coeff(c)
            if c:
                clean[lam] = clean.get(lam, LaurentScalar()) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def from_terms(cls, basis: str, terms: Mapping[tuple, object]) -> "SymmetricFunction":
        if not terms:
            raise ValueError("degree of an empty sum is ambiguous; use the constructor")
        degree = sum(next(iter(terms)))
        return cls(basis, degree, terms)

    @classmethod
    def single(cls, basis: str, lam: Iterable[int], coeff=1) -> "SymmetricFunction":
        lam = as_partition(lam)
        return cls(basis, sum(lam), {lam: coeff})

    @classmethod
    def one(cls, basis: str = "h") -> "SymmetricFunction":
        return cls(basis, 0, {(): 1})

    # conversion ---------------------------------------------------------
    def to_p(self) -> "SymmetricFunction":
        if self.basis == "p":
            return self
        M = _to_p_matrix(self.basis, self.degree)
        out: dict = {}
        for lam, c in self.terms.items():
            for mu, a in M[lam].items():
                out[mu] = out.get(mu, LaurentScalar()) + c * a
        return SymmetricFunction("p", self.degree, out)

    def to(self, basis: str) -> "SymmetricFunction":
        """Re-express in ``basis``.  Integer coefficients stay integral for
        the bases ``m, e, h, s`` (asserted)."""
        if basis == self.basis:
            return self
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        p = self.to_p()
        if basis == "p":
            return p
        M = _from_p_matrix(basis, self.degree)
        out: dict = {}
        for mu, c in p.terms.items():
            for lam, a in M[mu].items():
                out[lam] = out.get(lam, LaurentScalar()) + c * a
        res = SymmetricFunction(basis, self.degree, out)
        if self.basis != "p" and self.is_integral():
            assert res.is_integral(), f"non-integral {basis}-expansion of integral input"
        return res

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.terms.values())

    # arithmetic ---------------------------------------------------------
    def _check_same_degree(self, other):
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other: "SymmetricFunction") -> "SymmetricFunction":
        if not isinstance(other, SymmetricFunction):
            return NotImplemented
        self._check_same_degree(other)
        other = other.to(self.basis)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, LaurentScalar()) + c
        return SymmetricFunction(self.basis, max(self.degree, other.degree) if not self.terms else self.degree, out)

    def __neg__(self):
        return SymmetricFunction(self.basis, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymmetricFunction":
        c = _coerce_coeff(c)
        return SymmetricFunction(self.basis, self.degree, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentScalar)):
            return self.scale(other)
        if not isinstance(other, SymmetricFunction):
            return NotImplemented
        a, b = self.to_p(), other.to_p()
        out: dict = {}
        for mu, x in a.terms.items():
            for nu, y in b.terms.items():
                key = tuple(sorted(mu + nu, reverse=True))
                out[key] = out.get(key, LaurentScalar()) + x * y
        return SymmetricFunction("p", self.degree + other.degree, out).to(self.basis)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def map_coeffs(self, fn) -> "SymmetricFunction":
        return SymmetricFunction(self.basis, self.degree, {k: fn(v) for k, v in self.terms.items()})

    def divide_coeffs(self, d: LaurentScalar) -> "SymmetricFunction":
        """Exact division of every coefficient (raises ``NotDivisibleError``)."""
        return self.map_coeffs(lambda c: c.exact_div(d))

    def at_q1(self) -> "SymmetricFunction":
        """Specialise the coefficients at ``v = 1``."""
        return self.map_coeffs(lambda c: LaurentScalar.const(c.at_one()))

    def omega(self) -> "SymmetricFunction":
        p = self.to_p()
        out = {mu: c * (-1) ** (self.degree - len(mu)) for mu, c in p.terms.items()}
        return SymmetricFunction("p", self.degree, out).to(self.basis)

    def plethysm_power(self, k: int) -> "SymmetricFunction":
        """``p_k[self]``: substitute ``p_m -> p_{km}``; coefficients are inert."""
        if k < 1:
            raise ValueError("plethysm by p_k needs k >= 1")
        p = self.to_p()
        out = {tuple(k * x for x in mu): c for mu, c in p.terms.items()}
        return SymmetricFunction("p", k * self.degree, out).to(self.basis)

    # comparison and output ----------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, SymmetricFunction):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        if self.degree != other.degree:
            return False
        return self.terms == other.to(self.basis).terms

    def __hash__(self):
        p = self.to_p()
        return hash((self.degree, frozenset(p.terms.items())))

    def coefficient(self, lam) -> LaurentScalar:
        return self.terms.get(as_partition(lam), LaurentScalar())

    def __repr__(self):
        return f"SymmetricFunction({self.basis!r}, {self})"

    def __str__(self):
        return self.format()

    def format(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items())
        den = lcm(*(c.denominator() for _, c in items))
        pieces = []
        for lam, c in items:
            c = c * den
            body = f"{self.basis}[{','.join(str(x) for x in lam)}]"
            pieces.append(_term(c, body))
        text = "".join(pieces)
        if text.startswith("+"):
            text = text[1:]
        if den != 1:
            text = f"({text})/{den}"
        return text

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "degree": self.degree,
            "terms": [{"partition": list(lam), "coeff": c.to_json()}
                      for lam, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SymmetricFunction":
        return cls(data["basis"], data["degree"],
                   {tuple(t["partition"]): LaurentScalar.from_json(t["coeff"]) for t in data["terms"]})

    @classmethod
    def parse(cls, text: str) -> "SymmetricFunction":
        """Parse strings such as ``"(q+q^2)h[2,2]+h[4]"`` or ``"(p[1,1]+p[2])/2"``."""
        import re
        s = text.replace(" ", "")
        den = 1
        mt = re.fullmatch(r"\((.*)\)/(\d+)", s)
        if mt and _balanced(mt.group(1)):
            s, den = mt.group(1), int(mt.group(2))
        terms: dict = {}
        basis = None
        pos = 0
        pat = re.compile(r"([+-]?)(\([^()]*\)|[^()\[\]+-]*?)([mehps])\[([\d,]*)\]")
        while pos < len(s):
            m = pat.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse symmetric function {text!r}")
            sign, coeff, b, parts = m.groups()
            if basis is None:
                basis = b
            elif basis != b:
                raise ValueError("mixed bases in one expression")
            coeff = coeff.strip("()") or "1"
            c = LaurentScalar.parse(coeff)
            if sign == "-":
                c = -c
            lam = as_partition(int(x) for x in parts.split(",") if x)
            terms[lam] = terms.get(lam, LaurentScalar()) + c
            pos = m.end()
        if basis is None:
            raise ValueError(f"cannot parse symmetric function {text!r}")
        degree = sum(next(iter(terms)))
        return cls(basis, degree, {k: v / den for k, v in terms.items()})


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def _term(c: LaurentScalar, body: str) -> str:
    coeffs = list(c.items())
    if len(coeffs) == 1:
        (k, a), = coeffs
        if k == 0:
            if a == 1:
                return "+" + body
            if a == -1:
                return "-" + body
            return ("+" if a > 0 else "-") + f"{abs(a)}" + body
        mono = c.format()
        return ("" if mono.startswith("-") else "+") + mono + body
    if all(a < 0 for _, a in coeffs):
        return f"-({(-c).format()}){body}"
    return f"+({c.format()}){body}"


def iter_terms(f: SymmetricFunction) -> Iterator[tuple[tuple, LaurentScalar]]:
    return iter(sorted(f.terms.items()))
