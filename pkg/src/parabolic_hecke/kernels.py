"""
Hot integer kernels.

Every kernel exists twice: a loop version compiled with ``numba.njit`` and a
vectorised numpy version.  The public wrappers dispatch on :data:`USE_NUMBA`,
which is on when numba imports and the environment variable
``PARABOLIC_HECKE_NO_JIT`` is unset (or ``0``).  Both paths must return
identical arrays; ``tests/test_kernels.py`` and ``benchmarks/bench_kernels.py``
exercise them side by side.

Polynomials in ``q`` are stored densely as the last array axis
(``a[..., k]`` is the coefficient of ``q^k``), always in ``int64``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

__all__ = [
    "USE_NUMBA", "rank_matrix", "rank_matrices", "bruhat_table",
    "kl_table", "coloring_stats", "induced_trace", "induced_action",
]

USE_NUMBA = numba is not None and os.environ.get("PARABOLIC_HECKE_NO_JIT", "0") in ("", "0")


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)


def _pick(jit_fn, np_fn, use_numba):
    if use_numba is None:
        use_numba = USE_NUMBA
    return jit_fn if (use_numba and numba is not None) else np_fn


# rank matrices ------------------------------------------------------------------

@_njit
def _rank_matrices_loops(perms):
    N, n = perms.shape
    out = np.zeros((N, n, n), dtype=np.int64)
    for a in range(N):
        for i in range(n):
            for j in range(n):
                prev = out[a, i - 1, j] if i > 0 else 0
                out[a, i, j] = prev + (1 if perms[a, i] <= j + 1 else 0)
    return out


def _rank_matrices_numpy(perms):
    n = perms.shape[1]
    le = perms[:, :, None] <= np.arange(1, n + 1)[None, None, :]
    return np.cumsum(le, axis=1, dtype=np.int64)


def rank_matrices(perms: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    """Rank matrices of a batch ``[N, n]`` of one-line permutations."""
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    return _pick(_rank_matrices_loops, _rank_matrices_numpy, use_numba)(perms)


def rank_matrix(perm: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    return rank_matrices(np.asarray(perm, dtype=np.int64)[None, :], use_numba)[0]


# Bruhat order -------------------------------------------------------------------

@_njit
def _bruhat_loops(ranks):
    N, n, _ = ranks.shape
    out = np.zeros((N, N), dtype=np.bool_)
    for z in range(N):
        for w in range(N):
            ok = True
            for i in range(n):
                for j in range(n):
                    if ranks[z, i, j] < ranks[w, i, j]:
                        ok = False
                        break
                if not ok:
                    break
            out[z, w] = ok
    return out


def _bruhat_numpy(ranks):
    N = ranks.shape[0]
    flat = ranks.reshape(N, -1)
    return np.all(flat[:, None, :] >= flat[None, :, :], axis=2)


def bruhat_table(perms: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    """``table[a, b]`` is True iff ``perms[a] <= perms[b]`` in Bruhat order."""
    ranks = rank_matrices(perms, use_numba)
    return _pick(_bruhat_loops, _bruhat_numpy, use_numba)(ranks)


# Kazhdan-Lusztig polynomials ----------------------------------------------------

@_njit
def _kl_loops(left_mul, lengths, left_desc, first_desc, D):
    N = lengths.shape[0]
    P = np.zeros((N, N, D), dtype=np.int64)
    P[0, 0, 0] = 1
    for w in range(1, N):
        s = first_desc[w]
        v = left_mul[w, s]
        lw = lengths[w]
        lv = lengths[v]
        for x in range(N):
            sx = left_mul[x, s]
            if left_desc[x, s]:
                for k in range(D - 1):
                    P[w, x, k + 1] += P[v, x, k]
                for k in range(D):
                    P[w, x, k] += P[v, sx, k]
            else:
                for k in range(D):
                    P[w, x, k] += P[v, x, k]
                for k in range(D - 1):
                    P[w, x, k + 1] += P[v, sx, k]
        for z in range(N):
            lz = lengths[z]
            if lz >= lv or (lv - lz) % 2 == 0 or not left_desc[z, s]:
                continue
            mu = P[v, z, (lv - lz - 1) // 2]
            if mu == 0:
                continue
            sh = (lw - lz) // 2
            for x in range(N):
                for k in range(D - sh):
                    P[w, x, k + sh] -= mu * P[z, x, k]
    return P


def _kl_numpy(left_mul, lengths, left_desc, first_desc, D):
    N = lengths.shape[0]
    P = np.zeros((N, N, D), dtype=np.int64)
    P[0, 0, 0] = 1
    for w in range(1, N):
        s = first_desc[w]
        v = left_mul[w, s]
        lw, lv = lengths[w], lengths[v]
        Pv = P[v]
        Pvs = Pv[left_mul[:, s]]
        shifted_v = np.zeros_like(Pv)
        shifted_v[:, 1:] = Pv[:, :-1]
        shifted_vs = np.zeros_like(Pvs)
        shifted_vs[:, 1:] = Pvs[:, :-1]
        desc = left_desc[:, s][:, None]
        row = np.where(desc, shifted_v + Pvs, Pv + shifted_vs)
        cand = np.nonzero((lengths < lv) & ((lv - lengths) % 2 == 1) & left_desc[:, s])[0]
        if cand.size:
            mus = Pv[cand, (lv - lengths[cand] - 1) // 2]
            for z, mu in zip(cand[mus != 0], mus[mus != 0]):
                sh = (lw - lengths[z]) // 2
                row[:, sh:] -= mu * P[z, :, :D - sh]
        P[w] = row
    return P


def kl_table(left_mul, lengths, left_desc, first_desc, D, use_numba: bool | None = None):
    """Dense table ``P[w, x, k]`` = coefficient of ``q^k`` in ``P_{x,w}``.

    Inputs index S_n by position in a length-sorted list (identity first):
    ``left_mul[x, i]`` is the index of ``s_{i+1} x``, ``left_desc[x, i]``
    flags ``l(s_{i+1} x) < l(x)`` and ``first_desc[w]`` is the smallest left
    descent of ``w`` (ignored for the identity).
    """
    args = (np.ascontiguousarray(left_mul, dtype=np.int64),
            np.ascontiguousarray(lengths, dtype=np.int64),
            np.ascontiguousarray(left_desc, dtype=np.bool_),
            np.ascontiguousarray(first_desc, dtype=np.int64),
            int(D))
    return _pick(_kl_loops, _kl_numpy, use_numba)(*args)


# proper colorings ---------------------------------------------------------------

@_njit
def _coloring_loops(n, ncolors, proper, ascent, increasing):
    total = ncolors ** n
    keys = np.full(total, -1, dtype=np.int64)
    ascs = np.zeros(total, dtype=np.int64)
    kappa = np.zeros(n, dtype=np.int64)
    content = np.zeros(ncolors, dtype=np.int64)
    for code in range(total):
        c = code
        for i in range(n):
            kappa[i] = c % ncolors
            c //= ncolors
        ok = True
        a = 0
        for i in range(n):
            for j in range(i + 1, n):
                if proper[i, j] and kappa[i] == kappa[j]:
                    ok = False
                if increasing[i, j] and kappa[i] >= kappa[j]:
                    ok = False
                if ascent[i, j] and kappa[i] < kappa[j]:
                    a += 1
            if not ok:
                break
        if not ok:
            continue
        for t in range(ncolors):
            content[t] = 0
        for i in range(n):
            content[kappa[i]] += 1
        # colors used must form an initial segment 1..k
        k = 0
        while k < ncolors and content[k] > 0:
            k += 1
        surj = True
        for t in range(k, ncolors):
            if content[t] > 0:
                surj = False
        if not surj:
            continue
        key = 0
        for t in range(ncolors - 1, -1, -1):
            key = key * (n + 1) + content[t]
        keys[code] = key
        ascs[code] = a
    return keys, ascs


def _coloring_numpy(n, ncolors, proper, ascent, increasing):
    total = ncolors ** n
    codes = np.arange(total, dtype=np.int64)
    kappa = (codes[:, None] // ncolors ** np.arange(n, dtype=np.int64)[None, :]) % ncolors
    iu, ju = np.triu_indices(n, 1)
    ki, kj = kappa[:, iu], kappa[:, ju]
    ok = ~np.any(proper[iu, ju][None, :] & (ki == kj), axis=1)
    ok &= ~np.any(increasing[iu, ju][None, :] & (ki >= kj), axis=1)
    ascs = np.sum(ascent[iu, ju][None, :] & (ki < kj), axis=1).astype(np.int64)
    content = np.stack([(kappa == t).sum(axis=1) for t in range(ncolors)], axis=1)
    used = content > 0
    # initial segment: used is non-increasing along the color axis
    surj = np.all(used[:, :-1] >= used[:, 1:], axis=1) if ncolors > 1 else np.ones(total, bool)
    weights = (n + 1) ** np.arange(ncolors, dtype=np.int64)
    keys = np.where(ok & surj, content @ weights, -1).astype(np.int64)
    ascs = np.where(ok & surj, ascs, 0)
    return keys, ascs


def coloring_stats(n, ncolors, proper, ascent, increasing, use_numba: bool | None = None):
    """Enumerate maps ``[n] -> [ncolors]`` whose image is ``{1..k}``.

    A coloring is kept when ``kappa(i) != kappa(j)`` for ``proper[i, j]`` and
    ``kappa(i) < kappa(j)`` for ``increasing[i, j]`` (both for ``i < j``).
    Returns ``(keys, ascents)`` per coloring code, with ``key = -1`` for
    rejected maps and otherwise the content vector packed base ``n+1``.
    """
    args = (int(n), int(ncolors),
            np.ascontiguousarray(proper, dtype=np.bool_),
            np.ascontiguousarray(ascent, dtype=np.bool_),
            np.ascontiguousarray(increasing, dtype=np.bool_))
    return _pick(_coloring_loops, _coloring_numpy, use_numba)(*args)


# induced modules ----------------------------------------------------------------

@_njit
def _apply_gen_loops(vec, case, tgt):
    # vec: [d, D]; returns T_s . vec
    d, D = vec.shape
    out = np.zeros_like(vec)
    for b in range(d):
        c = case[b]
        t = tgt[b]
        if c == 0:
            for k in range(D):
                out[t, k] += vec[b, k]
        elif c == 1:
            for k in range(D - 1):
                out[b, k + 1] += vec[b, k]
        else:
            for k in range(D - 1):
                out[b, k + 1] += vec[b, k]
                out[t, k + 1] += vec[b, k]
            for k in range(D):
                out[b, k] -= vec[b, k]
    return out


@_njit
def _trace_loops(cases, tgts, word, D):
    d = cases.shape[1]
    tr = np.zeros(D, dtype=np.int64)
    for b in range(d):
        vec = np.zeros((d, D), dtype=np.int64)
        vec[b, 0] = 1
        for pos in range(word.shape[0] - 1, -1, -1):
            g = word[pos]
            vec = _apply_gen_loops(vec, cases[g], tgts[g])
        for k in range(D):
            tr[k] += vec[b, k]
    return tr


def _apply_gen_numpy(M, case, tgt):
    # M: [d, cols, D]
    out = np.zeros_like(M)
    shifted = np.zeros_like(M)
    shifted[..., 1:] = M[..., :-1]
    c0 = case == 0
    c1 = case == 1
    c2 = case == 2
    np.add.at(out, tgt[c0], M[c0])
    out[c1] += shifted[c1]
    out[c2] += shifted[c2] - M[c2]
    np.add.at(out, tgt[c2], shifted[c2])
    return out


def _trace_numpy(cases, tgts, word, D):
    d = cases.shape[1]
    M = np.zeros((d, d, D), dtype=np.int64)
    M[np.arange(d), np.arange(d), 0] = 1
    for g in word[::-1]:
        M = _apply_gen_numpy(M, cases[g], tgts[g])
    return M[np.arange(d), np.arange(d)].sum(axis=0)


def induced_trace(cases, tgts, word, D, use_numba: bool | None = None) -> np.ndarray:
    """Trace of ``T_{s_{word[0]}} ... T_{s_{word[-1]}}`` on an induced module.

    ``cases[g, b]`` is 0 (``m_b -> m_tgt``), 1 (``m_b -> q m_b``) or
    2 (``m_b -> (q-1) m_b + q m_tgt``) for generator ``g`` (0-based).
    """
    args = (np.ascontiguousarray(cases, dtype=np.int64),
            np.ascontiguousarray(tgts, dtype=np.int64),
            np.ascontiguousarray(word, dtype=np.int64), int(D))
    return _pick(_trace_loops, _trace_numpy, use_numba)(*args)


def induced_action(cases, tgts, g, vec, use_numba: bool | None = None) -> np.ndarray:
    """Apply generator ``g`` to a coefficient array ``[d, D]``."""
    vec = np.ascontiguousarray(vec, dtype=np.int64)
    if use_numba if use_numba is not None else USE_NUMBA:
        return _apply_gen_loops(vec, np.ascontiguousarray(cases[g], dtype=np.int64),
                                np.ascontiguousarray(tgts[g], dtype=np.int64))
    return _apply_gen_numpy(vec[:, None, :], cases[g], tgts[g])[:, 0, :]
