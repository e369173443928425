"""
Laurent polynomials in ``v = q^(1/2)``.

Coefficients are Python integers; ``Fraction`` coefficients are tolerated so
that the power-sum basis of the symmetric-function module can reuse this type,
and are normalised back to ``int`` whenever the denominator is 1.

>>> q = LaurentScalar.q()
>>> (1 + q) * (1 + q)
LaurentScalar('1+2q+q^2')
>>> (1 + q**3 + q).at_one()
3
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentScalar", "NotDivisibleError",
    "q_int", "q_factorial", "q_binomial", "parabolic_poincare",
]

Number = Union[int, Fraction]


class NotDivisibleError(ArithmeticError):
    """Raised by :meth:`LaurentScalar.exact_div` when the quotient is not a
    Laurent polynomial.  ``remainder`` holds what was left over."""

    def __init__(self, dividend, divisor, remainder):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f"{dividend} is not divisible by {divisor} "
                         f"(remainder {remainder})")


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentScalar:
    """An immutable Laurent polynomial ``sum c_k v^k``.

    Construct from a mapping ``{exponent of v: coefficient}``.  Zero
    coefficients are dropped.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Number] | None = None):
        c = {}
        if coeffs:
            for k, a in coeffs.items():
                if a:
                    c[int(k)] = _norm(a)
        self._c = c
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def _raw(cls, c: dict) -> "LaurentScalar":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, a: Number) -> "LaurentScalar":
        return cls._raw({0: _norm(a)} if a else {})

    @classmethod
    def v(cls, k: int = 1) -> "LaurentScalar":
        return cls._raw({k: 1})

    @classmethod
    def q(cls, k: int = 1) -> "LaurentScalar":
        """``q^k = v^(2k)``."""
        return cls._raw({2 * k: 1})

    @classmethod
    def from_q_coeffs(cls, coeffs: Iterable[Number], shift: int = 0) -> "LaurentScalar":
        """``sum_i coeffs[i] q^(i+shift)``."""
        return cls._raw({2 * (i + shift): _norm(a) for i, a in enumerate(coeffs) if a})

    @classmethod
    def coerce(cls, x) -> "LaurentScalar":
        if isinstance(x, LaurentScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentScalar")

    # basic protocol -----------------------------------------------------
    @property
    def coeffs(self) -> dict[int, Number]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentScalar.const(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentScalar('{self}')"

    # ring operations ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentScalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = LaurentScalar.const(other)
        c = dict(self._c)
        for k, a in other._c.items():
            s = c.get(k, 0) + a
            if s:
                c[k] = _norm(s)
            else:
                c.pop(k, None)
        return LaurentScalar._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar._raw({k: -a for k, a in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentScalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = LaurentScalar.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentScalar()
            return LaurentScalar._raw({k: _norm(a * other) for k, a in self._c.items()})
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        c: dict[int, Number] = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                c[i + j] = c.get(i + j, 0) + a * b
        return LaurentScalar({k: a for k, a in c.items()})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (k, a), = self._c.items()
            if abs(a) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentScalar._raw({k * e: a if e % 2 else 1})
        out = LaurentScalar.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, k: int) -> "LaurentScalar":
        """Multiply by ``v^k``."""
        if not k:
            return self
        return LaurentScalar._raw({e + k: a for e, a in self._c.items()})

    def q_shift(self, k: int) -> "LaurentScalar":
        """Multiply by ``q^k``."""
        return self.shift(2 * k)

    def bar(self) -> "LaurentScalar":
        """The ring involution ``v -> v^-1``."""
        return LaurentScalar._raw({-k: a for k, a in self._c.items()})

    def at_one(self) -> Number:
        """Evaluate at ``v = 1``."""
        return _norm(sum(self._c.values(), 0))

    def substitute_q(self, value) -> Number:
        """Evaluate at ``q = value``; only valid for polynomials in ``q``."""
        if not self.is_q_poly(allow_negative=True):
            raise ValueError(f"{self} has odd powers of v")
        return sum(a * Fraction(value) ** (k // 2) for k, a in self._c.items())

    # inspection ---------------------------------------------------------
    def min_exp(self) -> int:
        return min(self._c) if self._c else 0

    def max_exp(self) -> int:
        return max(self._c) if self._c else 0

    def is_q_poly(self, allow_negative: bool = False) -> bool:
        """All exponents of ``v`` even (and nonnegative unless allowed)."""
        return all(k % 2 == 0 and (allow_negative or k >= 0) for k in self._c)

    def is_integral(self) -> bool:
        return all(isinstance(a, int) for a in self._c.values())

    def q_coeffs(self) -> list[Number]:
        """Coefficient list ``[c_0, c_1, ...]`` of a polynomial in ``q``."""
        if not self.is_q_poly():
            raise ValueError(f"{self} is not a polynomial in q")
        if not self._c:
            return []
        out = [0] * (max(self._c) // 2 + 1)
        for k, a in self._c.items():
            out[k // 2] = a
        return out

    def denominator(self) -> int:
        return lcm(*(a.denominator if isinstance(a, Fraction) else 1
                     for a in self._c.values())) if self._c else 1

    def leading(self) -> Number:
        return self._c[max(self._c)] if self._c else 0

    # division -----------------------------------------------------------
    def exact_div(self, other: "LaurentScalar") -> "LaurentScalar":
        """Return ``c`` with ``other * c == self``.

        Long division from the lowest exponent upwards; raises
        :class:`NotDivisibleError` if a remainder is left.

        >>> q = LaurentScalar.q()
        >>> (1 + 2*q + q**2).exact_div(1 + q)
        LaurentScalar('1+q')
        """
        other = LaurentScalar.coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self:
            return LaurentScalar()
        lo, hi = other.min_exp(), other.max_exp()
        lead = other._c[lo]
        rem = dict(self._c)
        top = max(rem)
        quot: dict[int, Number] = {}
        while rem and min(rem) + (hi - lo) <= top:
            k = min(rem)
            t = _norm(Fraction(rem[k]) / lead)
            e = k - lo
            quot[e] = t
            for j, b in other._c.items():
                s = rem.get(e + j, 0) - t * b
                if s:
                    rem[e + j] = _norm(s)
                else:
                    rem.pop(e + j, None)
        if rem:
            raise NotDivisibleError(self, other, LaurentScalar(rem))
        if self.is_integral() and other.is_integral() and \
                not all(isinstance(a, int) for a in quot.values()):
            raise NotDivisibleError(self, other, LaurentScalar())
        return LaurentScalar(quot)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentScalar._raw({k: _norm(Fraction(a) / other) for k, a in self._c.items()})
        return self.exact_div(other)

    # printing / serialisation ---------------------------------------------
    def __str__(self):
        return self.format()

    def format(self) -> str:
        """Canonical text: in ``q`` when every exponent is even, else in ``v``."""
        if not self._c:
            return "0"
        in_q = all(k % 2 == 0 for k in self._c)
        var = "q" if in_q else "v"
        parts = []
        for k in sorted(self._c):
            a = self._c[k]
            e = k // 2 if in_q else k
            if e == 0:
                mono = ""
            elif e == 1:
                mono = var
            else:
                mono = f"{var}^{e}"
            if not mono:
                body = _fmt_num(abs(a))
            elif abs(a) == 1:
                body = mono
            elif isinstance(a, Fraction):
                body = f"({_fmt_num(abs(a))}){mono}"
            else:
                body = f"{abs(a)}{mono}"
            sign = "-" if a < 0 else "+"
            parts.append((sign, body))
        out = "".join(s + b for s, b in parts)
        return out[1:] if out[0] == "+" else out

    def to_json(self) -> dict[str, object]:
        return {str(k): (a if isinstance(a, int) else str(a)) for k, a in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> "LaurentScalar":
        return cls({int(k): (Fraction(a) if isinstance(a, str) else a) for k, a in data.items()})

    @classmethod
    def parse(cls, text: str) -> "LaurentScalar":
        """Parse the output of :meth:`format` (and simple variants like ``2q^3``)."""
        import re
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        term = re.compile(r"([+-])(\(?\d+(?:/\d+)?\)?)?\*?([qv](?:\^(-?\d+))?)?")
        c: dict[int, Number] = {}
        pos = 0
        while pos < len(s):
            mt = term.match(s, pos)
            if not mt or mt.end() == pos or (mt.group(2) is None and mt.group(3) is None):
                raise ValueError(f"cannot parse Laurent polynomial {text!r}")
            sign = -1 if mt.group(1) == "-" else 1
            num = Fraction(mt.group(2).strip("()")) if mt.group(2) else Fraction(1)
            k = 0
            if mt.group(3):
                e = int(mt.group(4)) if mt.group(4) else 1
                k = 2 * e if mt.group(3)[0] == "q" else e
            c[k] = c.get(k, 0) + sign * num
            pos = mt.end()
        return cls(c)


def _fmt_num(a: Number) -> str:
    return str(a)


def q_int(n: int) -> LaurentScalar:
    """``[n]_q = 1 + q + ... + q^(n-1)``."""
    return LaurentScalar.from_q_coeffs([1] * n)


def q_factorial(n: int) -> LaurentScalar:
    out = LaurentScalar.const(1)
    for k in range(2, n + 1):
        out = out * q_int(k)
    return out


def q_binomial(n: int, k: int) -> LaurentScalar:
    if k < 0 or k > n:
        return LaurentScalar()
    return q_factorial(n).exact_div(q_factorial(k) * q_factorial(n - k))


def parabolic_poincare(block_sizes: Iterable[int]) -> LaurentScalar:
    """``|W_J|_q = prod [mu_i]_q!`` for the block sizes of ``J``."""
    out = LaurentScalar.const(1)
    for m in block_sizes:
        out = out * q_factorial(m)
    return out
