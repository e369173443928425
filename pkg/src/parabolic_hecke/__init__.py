"""Exact Hecke-algebra, symmetric-function and parabolic-quotient combinatorics."""

from .laurent import LaurentScalar, NotDivisibleError, q_binomial, q_factorial, q_int
from .perm import DomainError, HessenbergFunction, Permutation, SizeMismatchError
from .symfunc import SymmetricFunction
from .hecke import HeckeElement, frobenius_char, kl_basis, kl_poly

__all__ = [
    "LaurentScalar", "NotDivisibleError", "q_binomial", "q_factorial", "q_int",
    "DomainError", "HessenbergFunction", "Permutation", "SizeMismatchError",
    "SymmetricFunction", "HeckeElement", "frobenius_char", "kl_basis", "kl_poly",
]
__version__ = "0.1.0"
