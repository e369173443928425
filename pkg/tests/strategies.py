from hypothesis import strategies as st

from parabolic_hecke.perm import Permutation


@st.composite
def perms(draw, min_n=1, max_n=5, n=None):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    return Permutation(draw(st.permutations(range(1, n + 1))))


@st.composite
def perm_pairs(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    return draw(perms(n=n)), draw(perms(n=n))


@st.composite
def subsets(draw, n):
    return frozenset(draw(st.sets(st.integers(1, n - 1))) if n > 1 else set())
