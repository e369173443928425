from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import perms, subsets
from parabolic_hecke.laurent import LaurentScalar, parabolic_poincare, q_int
from parabolic_hecke.parabolic import (AdmissibilityError, AdmissibleSequence, bundle_divide,
                                       centralizer, enumerate_admissible, gamma, gamma_inverse,
                                       hi_char, hybrid_char, hybrid_element, j_infinity,
                                       plethysm_rhs, stable_tail_elements, tail_kprime, tail_subset)
from parabolic_hecke.hecke import frobenius_char
from parabolic_hecke.perm import (DomainError, Permutation, all_perms, block_sizes,
                                  conjugation_stable, is_min_double, left_quotient,
                                  parabolic_subgroup)
from parabolic_hecke.symfunc import SymmetricFunction
from parabolic_hecke.verify import all_subsets, valid_hybrid_pairs

P = Permutation.parse
SF = SymmetricFunction.parse


def seq(*pairs):
    return AdmissibleSequence(tuple((frozenset(J), P(w)) for J, w in pairs))


def brute_j_infinity(J, w):
    J = sorted(J)
    for r in range(len(J), -1, -1):
        for K in combinations(J, r):
            if conjugation_stable(w, K):
                return frozenset(K)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(subsets(n), perms(n=n))))
def test_j_infinity_is_largest_stable_subset(Jw):
    J, w = Jw
    assert j_infinity(J, w) == brute_j_infinity(J, w)


def test_gr24_sequences_verbatim():
    got = [str(s) for s in enumerate_admissible({1, 3}, 4)]
    assert got == ["(({1,3},1234))", "(({1,3},1324),({},1324))", "(({1,3},1324),({},1342))",
                   "(({1,3},1324),({},3124))", "(({1,3},1324),({},3142))", "(({1,3},3412))"]


@pytest.mark.parametrize("n", range(1, 5))
def test_gamma_bijection(n):
    for J in all_subsets(n):
        seqs = enumerate_admissible(J, n)
        values = [gamma(s) for s in seqs]
        assert sorted(values) == sorted(left_quotient(J, n))
        for s in seqs:
            assert gamma_inverse(gamma(s), J) == s


def test_extra_minimality_condition_is_needed():
    # without it, n = 3 and J = {1} also admits sequences ending at 231 and 321
    bad = seq(({1}, "132"), ((), "231"))
    with pytest.raises(AdmissibilityError) as exc:
        bad.check()
    assert exc.value.index == 1
    assert len(enumerate_admissible({1}, 3)) == len(left_quotient({1}, 3)) == 3


@pytest.mark.parametrize("pairs,index", [
    ((({1, 3}, "3142"),), 0),                          # not double-coset minimal
    ((({1, 3}, "1324"), ({1}, "1324")), 1),            # wrong J_1
    ((({1, 3}, "1324"), ((), "2143")), 1),             # leaves the double coset
    ((({1, 3}, "1324"),), 0),                          # not stabilized
    ((({1, 3}, "3412"), ({1, 3}, "3412")), 1),         # continues after stabilizing
])
def test_check_names_failing_pair(pairs, index):
    with pytest.raises(AdmissibilityError) as exc:
        seq(*pairs).check()
    assert exc.value.index == index


def test_sequence_json_roundtrip():
    s = gamma_inverse(P("3142"), {1, 3})
    assert AdmissibleSequence.from_json(s.to_json()) == s
    assert s.N == 1 and s.n == 4


def test_gamma_inverse_rejects_non_minimal():
    with pytest.raises(DomainError):
        gamma_inverse(P("2134"), {1})


def stable_pairs(n):
    for J in all_subsets(n):
        for w in all_perms(n):
            if conjugation_stable(w, J) and is_min_double(w, J):
                yield J, w


@pytest.mark.parametrize("n", range(1, 6))
def test_centralizer_brute_force(n):
    for J, w in stable_pairs(n):
        dec = centralizer(J, w)
        direct = {u for u in parabolic_subgroup(J, n) if u * w == w * u}
        assert dec.elements() == direct
        assert dec.order() == len(direct)


def test_centralizer_gr24():
    dec = centralizer({1, 3}, P("3412"))
    assert [str(g) for g in dec.generators] == ["2143"]
    assert dec.cycles == ((1, 2),)


def test_centralizer_requires_stable():
    with pytest.raises(DomainError):
        centralizer({1}, P("231"))


def test_hybrid_examples():
    assert hybrid_char({1, 3}, P("3412")) == SF("qs[2,2]-q^2s[3,1]+q^4s[4]")
    assert hybrid_char({1}, P("12")) == SF("s[2]")
    assert hybrid_char({1, 3}, P("3412")).at_q1() == SF("(p[2,2]+p[4])/2")
    full = hybrid_char({1, 3}, P("3412"), prefactor="full")
    assert full == hybrid_char({1, 3}, P("3412")).scale(LaurentScalar.q(1))


@pytest.mark.parametrize("n", range(1, 5))
def test_plethysm_and_divisibility(n):
    for J, w in valid_hybrid_pairs(n):
        ch = frobenius_char(hybrid_element(J, w)).to("s")
        poin = parabolic_poincare(block_sizes(J, n))
        for c in ch.terms.values():
            c.exact_div(poin)
        assert hybrid_char(J, w).at_q1() == plethysm_rhs(J, w)


def test_plethysm_rhs_identity_is_h():
    # w = e: W_J^w = W_J, so the right side is h_{block sizes}
    assert plethysm_rhs({1, 3}, P("1234")) == SF("h[2,2]")


def test_bundle_divide():
    f = frobenius_char(__import__("parabolic_hecke").kl_basis(P("4321")))
    assert bundle_divide(P("4321"), {1, 3}, f).to("h") == SF("(1+q+2q^2+q^3+q^4)h[4]")
    with pytest.raises(DomainError):
        bundle_divide(P("1234"), {1, 3}, f)


def test_hi_char():
    assert hi_char(4, 2, SF("h[2]")) == SF("(1+q)h[2,2]")
    assert hi_char(4, 0, SymmetricFunction.one("h")) == SF("h[4]").scale(q_int(4))
    with pytest.raises(DomainError):
        hi_char(4, 4, SF("h[4]"))
    with pytest.raises(DomainError):
        hi_char(4, 2, SF("h[3]"))


@pytest.mark.parametrize("n", range(2, 6))
def test_tail_lemma(n):
    for k in range(2, n + 1):
        fixing = {w for w in all_perms(n) if all(w(i) == i for i in range(n - k + 1, n + 1))}
        assert stable_tail_elements(n, k) == fixing


@pytest.mark.parametrize("n", range(2, 6))
def test_tail_kprime_agrees_with_j_infinity(n):
    for k in range(1, n + 1):
        J = tail_subset(n, k)
        for z in left_quotient(J, n):
            kp, Jz = tail_kprime(J, z, k)
            assert Jz == j_infinity(J, z)
            assert kp <= k


def test_tail_kprime_examples():
    assert tail_kprime({2, 3}, P("2314")) == (1, frozenset())
    assert tail_kprime({3}, P("1234")) == (2, frozenset({3}))
    with pytest.raises(DomainError):
        tail_kprime({1, 3}, P("1234"))
