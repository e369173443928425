import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from parabolic_hecke.flags import (Matrix, PartialFlag, Subspace, brute_force_position,
                                   cell_membership, coalesce_refine, intersection_dims,
                                   random_flag, random_regular_semisimple, rank, read_flag,
                                   read_matrix, relative_position, rref, type_sequence)
from parabolic_hecke.parabolic import gamma, gamma_inverse
from parabolic_hecke.perm import (DomainError, Permutation, all_perms, double_quotient,
                                  intersect_conjugate, is_min_left, min_double_rep, rank_matrix)
from parabolic_hecke.verify import all_subsets

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(entries) for _ in range(c)] for _ in range(r)]


@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(rows) == sympy.Matrix(rows).rank()


@given(matrices())
def test_rref_matches_sympy(rows):
    R, pivots = rref(rows)
    S, spiv = sympy.Matrix(rows).rref()
    assert tuple(pivots) == tuple(spiv)
    for i, row in enumerate(R):
        assert [Fraction(x) for x in row] == [Fraction(int(sympy.fraction(S[i, j])[0]), int(sympy.fraction(S[i, j])[1]))
                                              for j in range(S.cols)]


@given(matrices(max_cols=4), matrices(max_cols=4))
def test_subspace_dimension_formula(a, b):
    n = 4
    a = [row[:n] + [0] * (n - len(row)) for row in a]
    b = [row[:n] + [0] * (n - len(row)) for row in b]
    U, W = Subspace.span(a, n), Subspace.span(b, n)
    assert (U + W).dim + (U & W).dim == U.dim + W.dim
    assert (U & W) <= U and U <= U + W
    assert U.join_dim(W) == (U + W).dim and U.meet_dim(W) == (U & W).dim


def test_subspace_canonical_form():
    assert Subspace.span([(1, 1, 0), (0, 1, 0)], 3) == Subspace.span([(1, 0, 0), (0, 2, 0)], 3)
    assert Subspace.span([(1, 1, 0)], 3).contains((2, 2, 0))


def test_flag_validation():
    with pytest.raises(DomainError):
        PartialFlag(3, frozenset(), (Subspace.span([(1, 0, 0), (0, 1, 0)], 3),
                                     Subspace.span([(1, 0, 0)], 3)))


def test_grassmannian_example():
    X = Matrix.diagonal([1, 2, -1, -2])
    V = PartialFlag.from_basis([(1, 1, 1, 1), (1, -1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0)], {1, 3})
    assert relative_position({1, 3}, V, X) == Permutation.parse("3412")
    assert cell_membership(Permutation.parse("3412"), {1, 3}, V, X)


def test_krylov_example():
    X = Matrix.diagonal([1, 2, 3, 5])
    v = (1, 1, 1, 1)
    V = PartialFlag.from_basis([v, X.apply(v), (1, 0, 0, 0), (0, 1, 0, 0)], {1, 3})
    assert str(type_sequence({1, 3}, V, X)) == "(({1,3},1324),({},3142))"


def position_oracle(J, V, X):
    """Minimum of every permutation whose rank matrix matches the
    intersection dimensions on the flag's index set."""
    d = intersection_dims(V, X)
    hits = [w for w in all_perms(V.n)
            if all(rank_matrix(w)[i - 1, j - 1] == c for (i, j), c in d.items() if i and j)]
    assert hits
    lo = min(hits, key=lambda w: w.length)
    assert all(min_double_rep(w, J) == lo for w in hits)
    return lo


@pytest.mark.parametrize("n", [2, 3, 4])
def test_relative_position_oracle(n):
    rng = random.Random(11 * n)
    for J in all_subsets(n):
        for _ in range(15):
            X = random_regular_semisimple(n, rng)
            V = random_flag(n, J, rng, X)
            w = relative_position(J, V, X)
            assert w in double_quotient(J, n)
            assert w == position_oracle(J, V, X)
            if not J:
                assert w == brute_force_position(V, X)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type_sequence_properties(n):
    rng = random.Random(5 + n)
    for J in all_subsets(n):
        for _ in range(20):
            X = random_regular_semisimple(n, rng)
            V = random_flag(n, J, rng, X)
            seq = type_sequence(J, V, X)
            z = gamma(seq)
            assert is_min_left(z, J)
            assert gamma_inverse(z, J) == seq
            w = seq.pairs[0][1]
            Jp, _ = coalesce_refine(J, V, X)
            if len(seq.pairs) > 1:
                assert Jp == intersect_conjugate(J, w)


def test_identity_position_for_invariant_flag():
    X = Matrix.diagonal([1, 2, 3])
    V = PartialFlag.from_basis([(1, 0, 0), (0, 1, 0), (0, 0, 1)], set())
    assert relative_position(set(), V, X).is_identity()


def test_matrix_and_flag_files(tmp_path):
    (tmp_path / "X.txt").write_text("1 0 0 0\n0 2 0 0\n0 0 -1 0\n0 0 0 -2\n")
    (tmp_path / "V.txt").write_text("1 1 1 1\n1 -1 0 0\n\n1 0 0 0\n0 0 1/2 0\n")
    X = read_matrix(tmp_path / "X.txt")
    V = read_flag(tmp_path / "V.txt")
    assert V.J == frozenset({1, 3})
    assert str(relative_position(V.J, V, X)) == "3412"


def test_matrix_ops():
    A = Matrix(((1, 2), (3, 4)))
    assert (A @ Matrix.identity(2)) == A
    assert A.rank() == 2 and A.is_invertible()
    assert not Matrix(((1, 2), (2, 4))).is_invertible()
