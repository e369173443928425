"""
Combinatorics attached to a parabolic subset ``J`` of simple reflections.

Admissible sequences
    Pairs ``(J_n, w_n)`` with ``J_{n+1} = J_n ∩ w_n J_n w_n^-1``,
    ``w_n`` minimal in its ``(W_{J_n}, W_{J_n})`` double coset and
    ``w_{n+1} in W_{J_n} w_n W_{J_n}``, together with ``w_{n+1}`` minimal in
    ``W_{J_n} w_{n+1}``.  Without the last condition distinct sequences can
    share a stable value (already for ``n = 3``, ``J = {1}``).  Sequences are
    stored up to the first pair with ``w_N J_N w_N^-1 = J_N``.

>>> from parabolic_hecke.perm import Permutation
>>> print(gamma_inverse(Permutation.parse("3142"), {1, 3}))
(({1,3},1324),({},3142))
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .hecke import ConsistencyError, HeckeElement, T, frobenius_char, hecke_multiply, kl_basis
from .laurent import LaurentScalar, parabolic_poincare, q_int
from .perm import (DomainError, Permutation, block_sizes, blocks, conjugation_stable,
                   double_coset, double_quotient, format_subset, intersect_conjugate,
                   is_max_double, is_min_double, is_min_left, left_quotient, longest_element,
                   min_double_rep, validate_subset)
from .symfunc import SymmetricFunction

__all__ = [
    "j_infinity", "AdmissibleSequence", "AdmissibilityError", "gamma", "gamma_inverse",
    "enumerate_admissible", "CentralizerDecomposition", "centralizer", "hybrid_char",
    "plethysm_rhs", "bundle_divide", "hi_char", "tail_kprime", "tail_subset",
    "hybrid_element", "stable_tail_elements",
]


def j_infinity(J: Iterable[int], w: Permutation) -> frozenset:
    """Largest ``K ⊆ J`` with ``w K w^-1 = K``."""
    K = validate_subset(J, w.n)
    winv = w.inverse()
    while True:
        new = intersect_conjugate(K, w) & intersect_conjugate(K, winv)
        if new == K:
            return K
        K = new


# admissible sequences ------------------------------------------------------

class AdmissibilityError(DomainError):
    def __init__(self, index: int, condition: str):
        super().__init__(f"pair {index}: {condition}")
        self.index = index
        self.condition = condition


@dataclass(frozen=True)
class AdmissibleSequence:
    pairs: tuple

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((frozenset(J), w) for J, w in self.pairs))

    @property
    def N(self) -> int:
        return len(self.pairs) - 1

    @property
    def n(self) -> int:
        return self.pairs[0][1].n

    def __str__(self):
        return "(" + ",".join(f"({format_subset(J)},{w})" for J, w in self.pairs) + ")"

    def to_json(self) -> list:
        return [{"J": sorted(J), "w": str(w)} for J, w in self.pairs]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "AdmissibleSequence":
        data = list(data)
        n = len(data[0]["w"]) if "," not in data[0]["w"] else len(data[0]["w"].split(","))
        return cls(tuple((frozenset(d["J"]), Permutation.parse(d["w"], n)) for d in data))

    def check(self) -> None:
        """Raise ``AdmissibilityError`` naming the first violated condition."""
        if not self.pairs:
            raise AdmissibilityError(0, "empty sequence")
        n = self.n
        for k, (J, w) in enumerate(self.pairs):
            validate_subset(J, n)
            if w.n != n:
                raise AdmissibilityError(k, "permutations of different sizes")
            if not is_min_double(w, J):
                raise AdmissibilityError(k, f"{w} is not minimal in W_J {w} W_J for J={format_subset(J)}")
            if k == 0:
                continue
            Jp, wp = self.pairs[k - 1]
            if J != intersect_conjugate(Jp, wp):
                raise AdmissibilityError(k, f"J_{k} != J_{k - 1} ∩ w_{k - 1} J_{k - 1} w_{k - 1}^-1")
            if w not in double_coset(wp, Jp):
                raise AdmissibilityError(k, f"w_{k} not in W_J{k - 1} w_{k - 1} W_J{k - 1}")
            if not is_min_left(w, Jp):
                raise AdmissibilityError(k, f"w_{k} not minimal in W_J{k - 1} w_{k}")
            if conjugation_stable(wp, Jp):
                raise AdmissibilityError(k, "sequence continues after stabilizing")
        J, w = self.pairs[-1]
        if not conjugation_stable(w, J):
            raise AdmissibilityError(len(self.pairs) - 1, "last pair is not stabilized")


def gamma(seq: AdmissibleSequence) -> Permutation:
    """The stable value ``w_infinity`` of a valid sequence."""
    seq.check()
    return seq.pairs[-1][1]


def gamma_inverse(z: Permutation, J: Iterable[int]) -> AdmissibleSequence:
    """Sequence with ``w_n`` the minimal element of ``W_{J_n} z W_{J_n}``."""
    J = validate_subset(J, z.n)
    if not is_min_left(z, J):
        raise DomainError(f"{z} is not minimal in its coset W_J {z} for J={format_subset(J)}")
    pairs = []
    while True:
        w = min_double_rep(z, J)
        pairs.append((J, w))
        if conjugation_stable(w, J):
            break
        J = intersect_conjugate(J, w)
    seq = AdmissibleSequence(tuple(pairs))
    if gamma(seq) != z:
        raise ConsistencyError(f"gamma(gamma_inverse({z})) = {gamma(seq)}")
    return seq


def enumerate_admissible(J: Iterable[int], n: int) -> list[AdmissibleSequence]:
    """All admissible sequences starting at ``J`` by brute force."""
    J = validate_subset(J, n)
    out = []

    def extend(pairs):
        Jk, wk = pairs[-1]
        if conjugation_stable(wk, Jk):
            out.append(AdmissibleSequence(tuple(pairs)))
            return
        Jn = intersect_conjugate(Jk, wk)
        for u in sorted(double_coset(wk, Jk)):
            if is_min_double(u, Jn) and is_min_left(u, Jk):
                extend(pairs + [(Jn, u)])

    for w in double_quotient(J, n):
        extend([(J, w)])
    return out


# centralizers ----------------------------------------------------------------

@dataclass(frozen=True)
class CentralizerDecomposition:
    J: frozenset
    w: Permutation
    blocks: tuple        # block sizes, a composition of n
    sigma: tuple         # sigma[i-1] = block index hit by block i (1-based)
    cycles: tuple
    factor_sizes: tuple  # common block size along each cycle
    generators: tuple = field(repr=False)

    def elements(self) -> frozenset:
        e = Permutation.identity(self.w.n)
        seen, todo = {e}, deque([e])
        while todo:
            u = todo.popleft()
            for g in self.generators:
                x = u * g
                if x not in seen:
                    seen.add(x)
                    todo.append(x)
        return frozenset(seen)

    def order(self) -> int:
        from math import factorial, prod
        return prod(factorial(k) for k in self.factor_sizes)


def _require_stable(J, w):
    J = validate_subset(J, w.n)
    if not is_min_double(w, J):
        raise DomainError(f"{w} is not minimal in W_J {w} W_J for J={format_subset(J)}")
    if not conjugation_stable(w, J):
        raise DomainError(f"{w} J {w}^-1 != J for J={format_subset(J)}")
    return J


def centralizer(J: Iterable[int], w: Permutation) -> CentralizerDecomposition:
    """``W_J^w = {u in W_J : uw = wu}`` as a product of symmetric groups."""
    J = _require_stable(J, w)
    blk = blocks(J, w.n)
    start = {a: k for k, (a, _) in enumerate(blk)}
    sigma = []
    for a, b in blk:
        img = sorted(w(i) for i in range(a, b + 1))
        k = start.get(img[0])
        if k is None or blk[k] != (img[0], img[-1]) or img != list(range(img[0], img[-1] + 1)):
            raise DomainError(f"{w} does not permute the blocks of J={format_subset(J)}")
        sigma.append(k + 1)
    seen, cycles = set(), []
    for i in range(1, len(blk) + 1):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = sigma[j - 1]
        cycles.append(tuple(cyc))
    sizes = tuple(b - a + 1 for a, b in blk)
    gens = []
    for cyc in cycles:
        size = sizes[cyc[0] - 1]
        for t in range(size - 1):
            imgs = list(range(1, w.n + 1))
            for b in cyc:
                a = blk[b - 1][0] + t
                imgs[a - 1], imgs[a] = imgs[a], imgs[a - 1]
            gens.append(Permutation(imgs))
    dec = CentralizerDecomposition(J, w, sizes, tuple(sigma), tuple(cycles),
                                   tuple(sizes[c[0] - 1] for c in cycles), tuple(gens))
    for g in gens:
        assert g * w == w * g
    return dec


# characters -----------------------------------------------------------------

def hybrid_element(Jp: Iterable[int], w: Permutation, prefactor: str = "half") -> HeckeElement:
    """``q^{l(w_J')/2} C'_{w_J'} T_w`` (``"half"``) or with ``q^{l(w_J')}``
    (``"full"``)."""
    Jp = validate_subset(Jp, w.n)
    wJ = longest_element(Jp, w.n)
    C = kl_basis(wJ)
    if prefactor == "full":
        C = C.scale(LaurentScalar.v(wJ.length))
    elif prefactor != "half":
        raise ValueError(f"unknown prefactor {prefactor!r}")
    return hecke_multiply(C, T(w))


def hybrid_char(Jp: Iterable[int], w: Permutation, prefactor: str = "half") -> SymmetricFunction:
    """``ch(q^{l(w_J')/2} C'_{w_J'} T_w) / |W_J'|_q`` (exact division)."""
    Jp = validate_subset(Jp, w.n)
    if not conjugation_stable(w, Jp):
        raise DomainError(f"{w} J' {w}^-1 != J' for J'={format_subset(Jp)}")
    if not is_min_left(w, Jp):
        raise DomainError(f"{w} is not minimal in W_J' {w}")
    ch = frobenius_char(hybrid_element(Jp, w, prefactor))
    return ch.divide_coeffs(parabolic_poincare(block_sizes(Jp, w.n)))


def plethysm_rhs(Jp: Iterable[int], w: Permutation) -> SymmetricFunction:
    """``prod_j p_{|tau_j|}[h_{lambda_{tau_j}}]`` in the p basis."""
    dec = centralizer(Jp, w)
    out = SymmetricFunction.one("p")
    for cyc, size in zip(dec.cycles, dec.factor_sizes):
        out = out * SymmetricFunction.single("h", (size,)).plethysm_power(len(cyc)).to("p")
    return out


def bundle_divide(w: Permutation, J: Iterable[int], f: SymmetricFunction) -> SymmetricFunction:
    """Divide every coefficient of ``f`` by ``|W_J|_q``; ``w`` must be the
    maximal element of ``W_J w W_J``."""
    J = validate_subset(J, w.n)
    if not is_max_double(w, J):
        raise DomainError(f"{w} is not maximal in W_J {w} W_J for J={format_subset(J)}")
    return f.divide_coeffs(parabolic_poincare(block_sizes(J, w.n)))


def hi_char(n: int, i: int, rho: SymmetricFunction) -> SymmetricFunction:
    """``[n-i]_q h_{n-i} rho``."""
    if not 0 <= i <= n - 1:
        raise DomainError(f"need 0 <= i <= n-1, got i={i}, n={n}")
    if rho.degree != i:
        raise DomainError(f"character has degree {rho.degree}, expected {i}")
    return (SymmetricFunction.single("h", (n - i,)) * rho.to("h")).scale(q_int(n - i))


def tail_subset(n: int, k: int) -> frozenset:
    """``{n-k+1, ..., n-1}``."""
    return frozenset(range(n - k + 1, n))


def tail_kprime(J: Iterable[int], z: Permutation, k: int | None = None) -> tuple[int, frozenset]:
    """``k'`` = largest ``k'' <= k`` with ``z`` fixing ``n-k''+1..n``, and
    ``J_z = {n-k'+1..n-1}``.  ``k`` defaults to ``n - min(J) + 1`` (to 1 when
    ``J`` is empty)."""
    n = z.n
    J = validate_subset(J, n)
    if k is None:
        k = n - min(J) + 1 if J else 1
    if J != tail_subset(n, k):
        raise DomainError(f"J={format_subset(J)} is not {{n-k+1..n-1}} for k={k}")
    if not is_min_left(z, J):
        raise DomainError(f"{z} is not minimal in W_J {z}")
    kp = 0
    while kp < k and z(n - kp) == n - kp:
        kp += 1
    return kp, tail_subset(n, kp)


def stable_tail_elements(n: int, k: int) -> frozenset:
    """``{w in ^J W : w J w^-1 = J}`` for the tail subset of size ``k``."""
    J = tail_subset(n, k)
    return frozenset(w for w in left_quotient(J, n) if conjugation_stable(w, J))
