
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import perms
from parabolic_hecke import hecke
from parabolic_hecke.hecke import (HeckeElement, T, char_of_T, frobenius_char, induced_module,
                                   induced_trace, iota, irreducible_character, kl_basis, kl_data,
                                   kl_poly)
from parabolic_hecke.laurent import LaurentScalar
from parabolic_hecke.perm import Permutation, SizeMismatchError, all_perms, bruhat_leq_subword
from parabolic_hecke.symfunc import SymmetricFunction, partitions, sn_character

q = LaurentScalar.q()


# independent KL oracle: the classical recursion on plain coefficient lists

def _padd(a, b, shift=0, sign=1):
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for k, c in enumerate(b):
        out[k + shift] += sign * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def oracle_kl(n):
    ps = sorted(all_perms(n), key=lambda w: w.length)
    P = {}
    for w in ps:
        if w.is_identity():
            P[w, w] = [1]
            continue
        s = min(w.left_descents())
        v = w.left_mul_simple(s)
        for x in ps:
            if not bruhat_leq_subword(x, w):
                continue
            sx = x.left_mul_simple(s)
            c = 1 if sx.length < x.length else 0
            r = _padd([0], P.get((sx, v), [0]), 1 - c)
            r = _padd(r, P.get((x, v), [0]), c)
            for z in ps:
                if z.length >= v.length or z.left_mul_simple(s).length > z.length:
                    continue
                pz = P.get((z, v), [0])
                d = v.length - z.length
                if d % 2 == 1 and len(pz) > (d - 1) // 2 and pz[(d - 1) // 2]:
                    mu = pz[(d - 1) // 2]
                    r = _padd(r, [mu * a for a in P.get((x, z), [0])], (d + 1) // 2, -1)
            if r != [0]:
                P[x, w] = r
    return P


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_kl_matches_oracle(n):
    P = oracle_kl(n)
    for w in all_perms(n):
        for x in all_perms(n):
            assert kl_poly(x, w) == LaurentScalar.from_q_coeffs(P.get((x, w), [0]))


def test_kl_known_values():
    assert kl_poly(Permutation.parse("1324"), Permutation.parse("3412")) == 1 + q
    assert kl_poly(Permutation.parse("1234"), Permutation.parse("4231")) == 1 + q
    assert kl_poly(Permutation.parse("1324"), Permutation.parse("4231")) == LaurentScalar.const(1)
    assert kl_poly(Permutation.parse("2143"), Permutation.parse("4231")) == 1 + q
    assert kl_poly(Permutation.parse("123"), Permutation.parse("321")) == LaurentScalar.const(1)


def test_kl_data_mu():
    d = kl_data(Permutation.parse("3412"))
    assert d.mu[Permutation.parse("1324")] == 1


def test_kl_basis_is_sum_of_polys():
    w = Permutation.parse("3412")
    c = kl_basis(w)
    for z in all_perms(4):
        assert c.coefficient(z) == kl_poly(z, w)


def test_hecke_quadratic_relation():
    for i in (1, 2):
        s = T(Permutation.simple(i, 3))
        assert s * s == s.scale(q - 1) + HeckeElement.one(3).scale(q)


def test_braid_relation():
    s1, s2 = (T(Permutation.simple(i, 3)) for i in (1, 2))
    assert s1 * s2 * s1 == s2 * s1 * s2 == T(Permutation.parse("321"))


def test_T_of_reduced_product():
    w = Permutation.parse("3142")
    prod = HeckeElement.one(4)
    for i in w.reduced_word():
        prod = prod * T(Permutation.simple(i, 4))
    assert prod == T(w)


@st.composite
def elements(draw, n):
    ws = draw(st.lists(perms(n=n), min_size=1, max_size=3))
    return HeckeElement(n, {w: LaurentScalar.from_q_coeffs(draw(st.lists(st.integers(-2, 2), min_size=1, max_size=2)))
                            for w in ws})


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(elements(n), elements(n), elements(n))))
def test_associative(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(elements(n), elements(n))))
def test_iota_is_ring_involution(ab):
    a, b = ab
    assert iota(a * b) == iota(a) * iota(b)
    assert iota(iota(a)) == a


@pytest.mark.parametrize("n", [2, 3, 4])
def test_kl_basis_bar_invariance(n):
    for w in all_perms(n):
        c = kl_basis(w)
        assert iota(c) == c.scale(LaurentScalar.q(-w.length))


def test_size_mismatch():
    with pytest.raises(SizeMismatchError):
        T(Permutation.parse("12")) * T(Permutation.parse("123"))


def test_json_and_str():
    c = kl_basis(Permutation.parse("21"))
    assert str(c) == "T[12]+T[21]"
    assert HeckeElement.from_json(c.to_json()) == c


# characters -------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_induced_relations(n):
    for mu in partitions(n):
        M = induced_module(mu)
        d = M.dim
        basis = np.zeros((d, d, 6), dtype=np.int64)
        basis[np.arange(d), np.arange(d), 0] = 1
        for v in basis:
            for i in range(1, n):
                tv = M.act(i, v)
                ttv = M.act(i, tv)
                # T^2 = (q-1) T + q
                rhs = -tv
                rhs[:, 1:] += tv[:, :-1] + v[:, :-1]
                assert np.array_equal(ttv, rhs)
            for i in range(1, n - 1):
                a = M.act(i, M.act(i + 1, M.act(i, v)))
                b = M.act(i + 1, M.act(i, M.act(i + 1, v)))
                assert np.array_equal(a, b)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_induced_table_two_routes(n):
    # reductions along cyclic shift classes vs direct traces on every element
    table = hecke._induced_table(n)
    g = hecke._group(n)
    for m, mu in enumerate(partitions(n)):
        M = induced_module(mu)
        for w in all_perms(n):
            direct = M.trace_word(w.reduced_word())
            assert LaurentScalar.from_q_coeffs(int(c) for c in table[g.index[w], m]) == direct


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_characters_at_q1_are_classical(n):
    for w in all_perms(n):
        chi = char_of_T(w)
        for lam in partitions(n):
            assert chi[lam].at_one() == sn_character(lam, w.cycle_type())
        assert frobenius_char(T(w)).at_q1() == SymmetricFunction.single("p", w.cycle_type())


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_trivial_and_sign_characters(n):
    for w in all_perms(n):
        chi = char_of_T(w)
        assert chi[(n,)] == LaurentScalar.q(w.length)
        assert chi[(1,) * n] == LaurentScalar.const((-1) ** w.length)


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(elements(n), elements(n))))
def test_trace_property(ab):
    a, b = ab
    for lam in partitions(a.n):
        assert irreducible_character(lam, a * b) == irreducible_character(lam, b * a)


def test_induced_trace_matches_kostka_sum():
    a = kl_basis(Permutation.parse("3412"))
    for mu in partitions(4):
        via_chars = LaurentScalar()
        from parabolic_hecke.symfunc import kostka
        for lam in partitions(4):
            via_chars = via_chars + irreducible_character(lam, a) * kostka(lam, mu)
        assert induced_trace(mu, a) == via_chars


def test_identity_character_is_h1n():
    assert frobenius_char(HeckeElement.one(4)) == SymmetricFunction.single("h", (1, 1, 1, 1))


def test_kl_cache_file(tmp_path, monkeypatch):
    monkeypatch.setenv("HECKE_CACHE_DIR", str(tmp_path))
    hecke._kl_table.cache.pop((4,), None)
    fresh = hecke._kl_table(4)
    path = tmp_path / "kl_4.txt"
    assert path.exists()
    line = path.read_text().splitlines()[0]
    assert line.count(":") == 3 and line.startswith("4:")
    hecke._kl_table.cache.pop((4,), None)
    assert np.array_equal(hecke._kl_table(4), fresh)
    # a corrupt file is ignored and rewritten
    path.write_text("garbage\n")
    hecke._kl_table.cache.pop((4,), None)
    assert np.array_equal(hecke._kl_table(4), fresh)
    hecke._kl_table.cache.pop((4,), None)
