"""
Permutations of ``[n] = {1, ..., n}`` in one-line notation, Bruhat order via
rank matrices, parabolic subgroups ``W_J`` and their coset representatives,
and the bijection between Hessenberg functions and codominant permutations.

Conventions: values and positions are 1-based, and composition is
``(w * z)(i) = w(z(i))``.  So ``s_i * w`` swaps the *values* ``i, i+1`` of
``w`` and ``w * s_i`` swaps the *positions* ``i, i+1``.

>>> w = Permutation.parse("3412")
>>> w.length, w.cycle_type()
(4, (2, 2))
>>> bruhat_leq(Permutation.parse("1324"), w)
True
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import permutations as _iter_perms
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels

__all__ = [
    "Permutation", "SizeMismatchError", "DomainError",
    "parse_subset", "format_subset", "validate_subset", "blocks", "block_sizes",
    "conjugate_subset", "intersect_conjugate", "conjugation_stable",
    "bruhat_leq", "bruhat_leq_subword", "rank_matrix",
    "is_min_left", "is_min_right", "is_min_double",
    "min_left_rep", "max_left_rep", "min_right_rep", "max_right_rep",
    "min_double_rep", "max_double_rep", "is_max_double",
    "parabolic_subgroup", "longest_element", "left_quotient", "right_quotient",
    "double_quotient", "double_coset", "all_perms",
    "HessenbergFunction", "codominant_from_hessenberg", "hessenberg_from_codominant",
    "is_codominant", "all_hessenberg",
]


class SizeMismatchError(ValueError):
    """Two permutations (or a permutation and a subset) live in different S_n."""


class DomainError(ValueError):
    """An input violates an operation's precondition."""


class Permutation:
    """A permutation of ``[n]`` stored as its one-line tuple ``(w(1), ..., w(n))``."""

    __slots__ = ("images", "_len", "_hash", "_inv")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise DomainError(f"{images} is not a permutation of [1..{len(images)}]")
        self.images = images
        self._len = None
        self._hash = hash(images)
        self._inv = None

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        obj = cls.__new__(cls)
        obj.images = images
        obj._len = None
        obj._hash = hash(images)
        obj._inv = None
        return obj

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._trusted(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls._trusted(tuple(range(n, 0, -1)))

    @classmethod
    def simple(cls, i: int, n: int) -> "Permutation":
        if not 1 <= i < n:
            raise DomainError(f"s_{i} is not a simple transposition of S_{n}")
        im = list(range(1, n + 1))
        im[i - 1], im[i] = im[i], im[i - 1]
        return cls._trusted(tuple(im))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse ``"3412"`` or ``"10,3,1,..."``."""
        text = text.strip()
        if "," in text or " " in text:
            vals = [int(t) for t in text.replace(",", " ").split()]
        else:
            if not text.isdigit():
                raise ValueError(f"bad permutation string {text!r}")
            vals = [int(ch) for ch in text]
        w = cls(vals)
        if n is not None and w.n != n:
            raise SizeMismatchError(f"{text!r} has size {w.n}, expected {n}")
        return w

    @classmethod
    def from_word(cls, word: Sequence[int], n: int) -> "Permutation":
        """``s_{word[0]} * s_{word[1]} * ...``."""
        w = cls.identity(n)
        for i in word:
            w = w.right_mul_simple(i)
        return w

    # protocol -----------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        # (length, lexicographic): the printing order of Hecke elements
        return (self.length, self.images) < (other.length, other.images)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Permutation('{self}')"

    def __str__(self):
        if self.n <= 9:
            return "".join(str(x) for x in self.images)
        return ",".join(str(x) for x in self.images)

    # group structure ----------------------------------------------------
    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise SizeMismatchError(f"cannot compose S_{self.n} with S_{other.n}")
        im = self.images
        return Permutation._trusted(tuple(im[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        if self._inv is None:
            inv = [0] * self.n
            for i, x in enumerate(self.images, 1):
                inv[x - 1] = i
            self._inv = Permutation._trusted(tuple(inv))
            self._inv._inv = self
        return self._inv

    @property
    def length(self) -> int:
        if self._len is None:
            im = self.images
            n = len(im)
            self._len = sum(1 for i in range(n) for j in range(i + 1, n) if im[i] > im[j])
        return self._len

    def left_mul_simple(self, i: int) -> "Permutation":
        """``s_i * self``: swap the values ``i`` and ``i+1``."""
        im = tuple(i + 1 if x == i else i if x == i + 1 else x for x in self.images)
        out = Permutation._trusted(im)
        if self._len is not None:
            out._len = self._len + (1 if self.inverse().images[i - 1] < self.inverse().images[i] else -1)
        return out

    def right_mul_simple(self, i: int) -> "Permutation":
        """``self * s_i``: swap the positions ``i`` and ``i+1``."""
        im = list(self.images)
        im[i - 1], im[i] = im[i], im[i - 1]
        out = Permutation._trusted(tuple(im))
        if self._len is not None:
            out._len = self._len + (1 if self.images[i - 1] < self.images[i] else -1)
        return out

    def has_left_descent(self, i: int) -> bool:
        """``l(s_i w) < l(w)``, i.e. ``i+1`` appears before ``i``."""
        inv = self.inverse().images
        return inv[i - 1] > inv[i]

    def has_right_descent(self, i: int) -> bool:
        """``l(w s_i) < l(w)``."""
        return self.images[i - 1] > self.images[i]

    def left_descents(self) -> frozenset[int]:
        return frozenset(i for i in range(1, self.n) if self.has_left_descent(i))

    def right_descents(self) -> frozenset[int]:
        return frozenset(i for i in range(1, self.n) if self.has_right_descent(i))

    def reduced_word(self) -> list[int]:
        """A reduced word ``[i_1, ..., i_l]`` with ``self = s_{i_1} ... s_{i_l}``."""
        word = []
        w = self
        while True:
            for i in range(1, w.n):
                if w.has_right_descent(i):
                    word.append(i)
                    w = w.right_mul_simple(i)
                    break
            else:
                break
        word.reverse()
        return word

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(1, self.n + 1):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, 1))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)


def _check_same(a: Permutation, b: Permutation):
    if a.n != b.n:
        raise SizeMismatchError(f"S_{a.n} vs S_{b.n}")


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Permutation, ...]:
    """All of S_n sorted by (length, lexicographic)."""
    perms = [Permutation._trusted(p) for p in _iter_perms(range(1, n + 1))]
    perms.sort()
    return tuple(perms)


# rank matrices and Bruhat order -------------------------------------------

def rank_matrix(w: Permutation) -> np.ndarray:
    """``r[i-1, j-1] = #{k <= i : w(k) <= j}``."""
    return kernels.rank_matrix(w.as_array())


def bruhat_leq(z: Permutation, w: Permutation) -> bool:
    """``z <= w`` in Bruhat order (rank-matrix criterion)."""
    _check_same(z, w)
    if z.length > w.length:
        return False
    return bool(np.all(rank_matrix(z) >= rank_matrix(w)))


def bruhat_leq_subword(z: Permutation, w: Permutation) -> bool:
    """Bruhat order via the subword property; independent of :func:`bruhat_leq`."""
    _check_same(z, w)
    word = w.reduced_word()
    target = z.images
    n = w.n
    seen = set()

    def search(pos: int, cur: tuple) -> bool:
        if cur == target:
            return True
        if pos == len(word) or (pos, cur) in seen:
            return False
        seen.add((pos, cur))
        if search(pos + 1, cur):
            return True
        i = word[pos]
        nxt = list(cur)
        nxt[i - 1], nxt[i] = nxt[i], nxt[i - 1]
        return search(pos + 1, tuple(nxt))

    return search(0, tuple(range(1, n + 1)))


# subsets of simple transpositions ----------------------------------------------

def validate_subset(J: Iterable[int], n: int) -> frozenset[int]:
    J = frozenset(int(j) for j in J)
    bad = [j for j in J if not 1 <= j <= n - 1]
    if bad:
        raise DomainError(f"J={sorted(J)} is not a subset of {{1..{n - 1}}}")
    return J


def parse_subset(text: str, n: int | None = None) -> frozenset[int]:
    text = text.strip().strip("{}[]")
    J = frozenset(int(t) for t in text.replace(",", " ").split()) if text else frozenset()
    return validate_subset(J, n) if n is not None else J


def format_subset(J: Iterable[int]) -> str:
    return "{" + ",".join(str(j) for j in sorted(J)) + "}"


def blocks(J: Iterable[int], n: int) -> list[tuple[int, int]]:
    """Blocks of ``W_J`` as inclusive position ranges ``(start, end)``."""
    J = set(J)
    out = []
    start = 1
    for i in range(1, n + 1):
        if i not in J:
            out.append((start, i))
            start = i + 1
    return out


def block_sizes(J: Iterable[int], n: int) -> tuple[int, ...]:
    return tuple(b - a + 1 for a, b in blocks(J, n))


def conjugate_subset(w: Permutation, J: Iterable[int]) -> frozenset[int]:
    """The simple transpositions among ``w s_j w^-1``, ``j in J``."""
    out = set()
    for j in J:
        a, b = w(j), w(j + 1)
        if abs(a - b) == 1:
            out.add(min(a, b))
    return frozenset(out)


def conjugation_stable(w: Permutation, J: Iterable[int]) -> bool:
    """``w J w^-1 = J`` as sets of reflections."""
    J = frozenset(J)
    for j in J:
        a, b = w(j), w(j + 1)
        if abs(a - b) != 1 or min(a, b) not in J:
            return False
    return True


def intersect_conjugate(J: Iterable[int], w: Permutation) -> frozenset[int]:
    """``J ∩ w J w^-1``."""
    J = frozenset(J)
    return J & conjugate_subset(w, J)


# parabolic cosets ---------------------------------------------------------------

def is_min_left(w: Permutation, J: Iterable[int]) -> bool:
    """``w`` is minimal in ``W_J w`` (``w in ^J W``)."""
    inv = w.inverse().images
    return all(inv[j - 1] < inv[j] for j in J)


def is_min_right(w: Permutation, J: Iterable[int]) -> bool:
    """``w`` is minimal in ``w W_J`` (``w in W^J``)."""
    im = w.images
    return all(im[j - 1] < im[j] for j in J)


def is_min_double(w: Permutation, J: Iterable[int], K: Iterable[int] | None = None) -> bool:
    J = tuple(J)
    return is_min_left(w, J) and is_min_right(w, J if K is None else K)


def is_max_double(w: Permutation, J: Iterable[int]) -> bool:
    J = tuple(J)
    return all(w.has_left_descent(j) and w.has_right_descent(j) for j in J)


def _sort_positions(vals: list, J, reverse: bool) -> list:
    for a, b in blocks(J, len(vals)):
        vals[a - 1:b] = sorted(vals[a - 1:b], reverse=reverse)
    return vals


def min_right_rep(w: Permutation, J: Iterable[int]) -> Permutation:
    """Minimal element of ``w W_J``: sort each J-block of positions increasingly."""
    return Permutation._trusted(tuple(_sort_positions(list(w.images), J, False)))


def max_right_rep(w: Permutation, J: Iterable[int]) -> Permutation:
    return Permutation._trusted(tuple(_sort_positions(list(w.images), J, True)))


def min_left_rep(w: Permutation, J: Iterable[int]) -> Permutation:
    """Minimal element of ``W_J w``."""
    return min_right_rep(w.inverse(), J).inverse()


def max_left_rep(w: Permutation, J: Iterable[int]) -> Permutation:
    return max_right_rep(w.inverse(), J).inverse()


def min_double_rep(w: Permutation, J: Iterable[int], K: Iterable[int] | None = None) -> Permutation:
    """Minimal element of ``W_J w W_K`` (``K = J`` by default)."""
    J = tuple(J)
    K = J if K is None else tuple(K)
    u = min_right_rep(min_left_rep(w, J), K)
    # one pass each way suffices in type A, but iterate defensively
    while not (is_min_left(u, J) and is_min_right(u, K)):
        u = min_right_rep(min_left_rep(u, J), K)
    return u


def max_double_rep(w: Permutation, J: Iterable[int], K: Iterable[int] | None = None) -> Permutation:
    J = tuple(J)
    K = J if K is None else tuple(K)
    u = max_right_rep(max_left_rep(w, J), K)
    while not all(u.has_left_descent(j) for j in J) or not all(u.has_right_descent(k) for k in K):
        u = max_right_rep(max_left_rep(u, J), K)
    return u


@lru_cache(maxsize=None)
def _parabolic_subgroup(J: frozenset, n: int) -> tuple[Permutation, ...]:
    e = Permutation.identity(n)
    seen = {e}
    todo = deque([e])
    while todo:
        u = todo.popleft()
        for j in J:
            x = u.right_mul_simple(j)
            if x not in seen:
                seen.add(x)
                todo.append(x)
    return tuple(sorted(seen))


def parabolic_subgroup(J: Iterable[int], n: int) -> tuple[Permutation, ...]:
    """All elements of ``W_J``, sorted by (length, lex)."""
    return _parabolic_subgroup(validate_subset(J, n), n)


def longest_element(J: Iterable[int], n: int) -> Permutation:
    """The longest element ``w_J`` of ``W_J``."""
    return max_right_rep(Permutation.identity(n), validate_subset(J, n))


def left_quotient(J: Iterable[int], n: int) -> tuple[Permutation, ...]:
    """``^J W``: elements minimal in their coset ``W_J w``."""
    J = validate_subset(J, n)
    return tuple(w for w in all_perms(n) if is_min_left(w, J))


def right_quotient(J: Iterable[int], n: int) -> tuple[Permutation, ...]:
    J = validate_subset(J, n)
    return tuple(w for w in all_perms(n) if is_min_right(w, J))


def double_quotient(J: Iterable[int], n: int) -> tuple[Permutation, ...]:
    J = validate_subset(J, n)
    return tuple(w for w in all_perms(n) if is_min_left(w, J) and is_min_right(w, J))


def double_coset(w: Permutation, J: Iterable[int], K: Iterable[int] | None = None) -> frozenset[Permutation]:
    J = tuple(J)
    K = J if K is None else tuple(K)
    WJ = parabolic_subgroup(J, w.n)
    WK = parabolic_subgroup(K, w.n)
    return frozenset(a * w * b for a in WJ for b in WK)


# Hessenberg functions and codominant permutations ------------------------------

class HessenbergFunction(tuple):
    """``(m(1), ..., m(n))`` with ``m(i) >= i``, weakly increasing, ``m(n) = n``."""

    def __new__(cls, values: Iterable[int]):
        values = tuple(int(x) for x in values)
        n = len(values)
        if n == 0:
            raise DomainError("empty Hessenberg function")
        ok = values[-1] == n and all(values[i] >= i + 1 for i in range(n)) and \
            all(values[i] <= values[i + 1] for i in range(n - 1))
        if not ok:
            raise DomainError(f"{values} is not a Hessenberg function")
        return super().__new__(cls, values)

    @classmethod
    def parse(cls, text: str) -> "HessenbergFunction":
        return cls(int(t) for t in text.replace(",", " ").split())

    @property
    def n(self) -> int:
        return len(self)

    def __str__(self):
        return ",".join(str(x) for x in self)


def codominant_from_hessenberg(m: Sequence[int]) -> Permutation:
    """Greedy rule: ``w(i)`` is the largest unused value ``<= m(i)``."""
    m = HessenbergFunction(m)
    used = set()
    out = []
    for mi in m:
        x = mi
        while x in used:
            x -= 1
        if x < 1:
            raise DomainError(f"greedy construction failed for {tuple(m)}")
        used.add(x)
        out.append(x)
    return Permutation(out)


def is_codominant(w: Permutation) -> bool:
    """312-avoidance: no ``i<j<k`` with ``w(j) < w(k) < w(i)``."""
    im = w.images
    n = len(im)
    return not any(im[j] < im[k] < im[i]
                   for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n))


def hessenberg_from_codominant(w: Permutation) -> HessenbergFunction:
    if not is_codominant(w):
        raise DomainError(f"{w} is not codominant (contains 312)")
    m = []
    prev = 0
    run = 0
    for i, x in enumerate(w.images, 1):
        run = max(run, x)
        prev = max(run, prev, i)
        m.append(prev)
    return HessenbergFunction(m)


def all_hessenberg(n: int) -> Iterator[HessenbergFunction]:
    def rec(prefix):
        i = len(prefix) + 1
        if i > n:
            if prefix[-1] == n:
                yield HessenbergFunction(prefix)
            return
        lo = max(i, prefix[-1] if prefix else 1)
        for v in range(lo, n + 1):
            yield from rec(prefix + [v])
    yield from rec([])
