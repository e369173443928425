"""Fixture checks and randomized sweeps shared by the CLI and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .chromatic import csf_q, indifference_graph
from .fixtures import load
from .flags import brute_force_position, random_flag, random_regular_semisimple, type_sequence
from .hecke import frobenius_char, kl_basis
from .laurent import LaurentScalar, q_binomial, q_int
from .parabolic import (AdmissibleSequence, bundle_divide, centralizer, enumerate_admissible,
                        gamma, gamma_inverse, hi_char, hybrid_char, j_infinity, plethysm_rhs,
                        tail_kprime)
from .perm import (Permutation, all_hessenberg, codominant_from_hessenberg, conjugation_stable,
                   format_subset, is_min_double, is_min_left, left_quotient, max_double_rep)
from .symfunc import SymmetricFunction

__all__ = ["CheckResult", "FIXTURE_CHECKS", "run_fixture", "SAMPLE_KINDS", "run_sample", "all_subsets"]

SF = SymmetricFunction.parse
LS = LaurentScalar.parse


@dataclass
class CheckResult:
    name: str
    ok: bool
    lines: list = field(default_factory=list)
    informational: bool = False

    def report(self) -> str:
        status = "INFO" if self.informational else ("PASS" if self.ok else "FAIL")
        head = f"{self.name}: {status}"
        return "\n".join([head] + [f"  {x}" for x in self.lines])


def _cmp(lines: list, label: str, got, want) -> bool:
    ok = got == want
    lines.append(f"{'ok  ' if ok else 'DIFF'} {label}" + ("" if ok else f": got {got}, expected {want}"))
    return ok


def all_subsets(n: int):
    for r in range(2 ** max(n - 1, 0)):
        yield frozenset(i for i in range(1, n) if r >> (i - 1) & 1)


def _tag(fx: dict) -> str:
    return f"[{fx['source']} fixture: {fx['where']}]"


# fixtures -------------------------------------------------------------------

def check_path_example(**_) -> CheckResult:
    fx = load()["path-example"]
    lines = [_tag(fx)]
    w = Permutation.parse(fx["w"])
    want = SF(fx["character_h"])
    ok = _cmp(lines, f"ch(C'_{w}) in h basis", frobenius_char(kl_basis(w)).to("h"), want)
    total = SymmetricFunction("h", 4)
    for perm, piece in fx["pieces"].items():
        total = total + SF(piece).scale(LS(fx["multiplicities"][perm]))
    ok &= _cmp(lines, "weighted sum of the three pieces", total, want)
    one = SymmetricFunction.one("h")
    ok &= _cmp(lines, "hi_char(4, 0, 1)", hi_char(4, 0, one), SF(fx["pieces"]["2341"]))
    ok &= _cmp(lines, "hi_char(4, 2, h[2])", hi_char(4, 2, SF("h[2]")), SF(fx["pieces"]["2134"]))
    ok &= _cmp(lines, "hi_char(4, 3, h[3])", hi_char(4, 3, SF("h[3]")), SF(fx["pieces"]["1234"]))
    ok &= _cmp(lines, "omega csf_q of the path graph", csf_q(indifference_graph((2, 3, 4, 4))).omega(), want)
    return CheckResult("path-example", ok, lines)


def check_gr24_table(**_) -> CheckResult:
    fx = load()["gr24-table"]
    lines = [_tag(fx)]
    ok = True
    J = frozenset(fx["J"])
    for e in fx["entries"]:
        f = SF(e["character_h"])
        hsum = sum((c for c in f.to("h").terms.values()), LaurentScalar())
        ok &= _cmp(lines, f"{e['perm']} {tuple(e['partition'])}: sum of h-coefficients", hsum, LS(e["poincare"]))
    # cells whose closure is the image of a full-flag Hessenberg variety of a double coset
    for perm in ("1234", "3142", "3412"):
        w = Permutation.parse(perm)
        m = max_double_rep(w, J)
        e = next(x for x in fx["entries"] if x["perm"] == perm)
        got = bundle_divide(m, J, frobenius_char(kl_basis(m))).to("h")
        ok &= _cmp(lines, f"{perm}: engine ch(C'_{m})/|W_J|_q", got, SF(e["character_h"]))
    ok &= _cmp(lines, "Gr(2,4) Poincare polynomial is binom(4,2)_q", LS(fx["entries"][-1]["poincare"]), q_binomial(4, 2))
    return CheckResult("gr24-table", ok, lines)


def check_gr24_admissible(**_) -> CheckResult:
    fx = load()["gr24-admissible"]
    lines = [_tag(fx)]
    J = frozenset(fx["J"])
    n = fx["n"]
    ok = _cmp(lines, "^J S_4", [str(w) for w in left_quotient(J, n)], fx["quotient"])
    want = [str(AdmissibleSequence.from_json(s)) for s in fx["sequences"]]
    ok &= _cmp(lines, "admissible sequences", [str(s) for s in enumerate_admissible(J, n)], want)
    got = [str(gamma_inverse(Permutation.parse(z), J)) for z in fx["quotient"]]
    ok &= _cmp(lines, "gamma_inverse over ^J S_4", got, want)
    return CheckResult("gr24-admissible", ok, lines)


def check_ic_local_system(**_) -> CheckResult:
    fx = load()["ic-local-system"]
    lines = [_tag(fx)]
    A = SF(fx["A"])
    icL = (A.scale(LS(fx["factor"])) - SF("h[3,1]").scale(LS(fx["correction_h31"]))
           - SF("h[2,2]").scale(LS(fx["correction_h22"])))
    ok = _cmp(lines, "(1+q)A - 2q[3]_q h[3,1] - q^2 h[2,2]", icL, SF(fx["ic_L_h"]))
    ok &= _cmp(lines, "h -> s conversion", SF(fx["ic_L_h"]).to("s").terms, SF(fx["ic_L_s"]).terms)
    ok &= _cmp(lines, "constant-sheaf character is binom(4,2)_q h[4]", SF(fx["constant_h"]),
               SF("h[4]").scale(q_binomial(4, 2)))
    sign = SF(fx["ic_L_h"]) - SF(fx["constant_h"])
    ok &= _cmp(lines, "IC(L) - IC(C)", sign, SF(fx["ic_Lsign_h"]))
    ok &= _cmp(lines, "h -> s conversion (sign local system)", SF(fx["ic_Lsign_h"]).to("s").terms,
               SF(fx["ic_Lsign_s"]).terms)
    return CheckResult("ic-local-system", ok, lines)


def check_centralizer(**_) -> CheckResult:
    fx = load()["centralizer-2143"]
    lines = [_tag(fx)]
    dec = centralizer(fx["J"], Permutation.parse(fx["w"]))
    ok = _cmp(lines, "generators", [str(g) for g in dec.generators], fx["generators"])
    ok &= _cmp(lines, "group order", len(dec.elements()), fx["order"])
    ok &= _cmp(lines, "sigma", dec.sigma, (2, 1))
    return CheckResult("centralizer-2143", ok, lines)


def check_sw_identity(n: int = 4, **_) -> CheckResult:
    lines, ok, count = [], True, 0
    for m in all_hessenberg(n):
        w = codominant_from_hessenberg(m)
        count += 1
        if csf_q(indifference_graph(m)).omega() != frobenius_char(kl_basis(w)):
            ok = False
            lines.append(f"DIFF m={m} w={w}")
    lines.append(f"{count} codominant permutations of S_{n} checked")
    return CheckResult("sw-identity", ok, lines)


def check_projective(n: int = 5, **_) -> CheckResult:
    fx = load()["projective"]
    lines = [_tag(fx)]
    ok = True
    J = frozenset(range(2, n))
    for k in range(1, n + 1):
        wk = Permutation(list(range(2, k + 1)) + [1] + list(range(k + 1, n + 1)))
        want = frozenset(range(k + 1, n))
        ok &= _cmp(lines, f"J_w for w_{k}={wk}", j_infinity(J, wk), want)
        ok &= _cmp(lines, f"tail k' for w_{k}", tail_kprime(J, wk, n - 1)[1], want)
    for i in range(n):
        rho = SymmetricFunction.single("h", (i,))
        ok &= _cmp(lines, f"hi_char({n}, {i}, h[{i}])", hi_char(n, i, rho),
                   SymmetricFunction.single("h", (n - i, i)).scale(q_int(n - i)))
    return CheckResult("projective", ok, lines)


def check_regression(**_) -> CheckResult:
    fx = load()["regression-3412"]
    lines = [_tag(fx)]
    got = frobenius_char(kl_basis(Permutation.parse(fx["w"]))).to("h")
    ok = _cmp(lines, "ch(q^2 C'_3412)", got, SF(fx["character_h"]))
    return CheckResult("regression-3412", ok, lines)


def decomposition_residuals() -> dict:
    """``ch(C'_3412) - ch(IC(L)) - sum q^{shift/2} ch(cell)`` for both
    summand lists in the fixture."""
    data = load()
    fx = data["gr24-decomposition"]
    table = {e["perm"]: SF(e["character_h"]) for e in data["gr24-table"]["entries"]}
    total = frobenius_char(kl_basis(Permutation.parse("3412"))).to("h")
    icL = SF(data["ic-local-system"]["ic_L_h"])
    out = {}
    for key in ("summands", "semismall_summands"):
        rest = total - icL
        for s in fx[key]:
            rest = rest - table[s["perm"]].scale(LaurentScalar.v(s["shift"]))
        out[key] = rest
    return out


def check_decomposition(**_) -> CheckResult:
    fx = load()["gr24-decomposition"]
    res = decomposition_residuals()
    lines = [_tag(fx)]
    for key, r in res.items():
        names = "+".join(f"{s['perm']}[-{s['shift']}]" for s in fx[key])
        lines.append(f"residual with {names}: {r}")
    return CheckResult("gr24-decomposition", True, lines, informational=True)


FIXTURE_CHECKS = {
    "path-example": check_path_example,
    "gr24-table": check_gr24_table,
    "gr24-admissible": check_gr24_admissible,
    "ic-local-system": check_ic_local_system,
    "centralizer-2143": check_centralizer,
    "sw-identity": check_sw_identity,
    "projective": check_projective,
    "regression-3412": check_regression,
    "gr24-decomposition": check_decomposition,
}


def run_fixture(name: str, **kw) -> list[CheckResult]:
    if name == "all":
        return [fn(**kw) for fn in FIXTURE_CHECKS.values()]
    if name not in FIXTURE_CHECKS:
        raise KeyError(name)
    return [FIXTURE_CHECKS[name](**kw)]


# sweeps ---------------------------------------------------------------------

def sample_gamma_bijection(n: int = 4, **_) -> CheckResult:
    lines, ok, count = [], True, 0
    for J in all_subsets(n):
        count += 1
        seqs = enumerate_admissible(J, n)
        quot = left_quotient(J, n)
        values = [gamma(s) for s in seqs]
        if len(seqs) != len(quot) or set(values) != set(quot) or len(set(values)) != len(values):
            ok = False
            lines.append(f"J={format_subset(J)}: {len(seqs)} sequences, |^JW| = {len(quot)}")
            continue
        for s in seqs:
            if gamma_inverse(gamma(s), J) != s:
                ok = False
                lines.append(f"J={format_subset(J)}: gamma_inverse fails on {s}")
    lines.insert(0, f"|sequences| = |^JW| for all {count} subsets J: {'PASS' if ok else 'FAIL'}")
    return CheckResult("gamma-bijection", ok, lines)


def sample_typeseq(n: int = 4, seed: int = 0, count: int = 100, **_) -> CheckResult:
    rng = random.Random(seed)
    lines, ok, total = [], True, 0
    for J in all_subsets(n):
        hits = set()
        for t in range(count):
            X = random_regular_semisimple(n, rng)
            V = random_flag(n, J, rng, X)
            total += 1
            try:
                seq = type_sequence(J, V, X)
                z = gamma(seq)
                good = is_min_left(z, J) and gamma_inverse(z, J) == seq
                if not J:
                    good &= seq.pairs[0][1] == brute_force_position(V, X)
            except Exception as exc:  # report the reproducer rather than abort
                good, z = False, repr(exc)
            if not good:
                ok = False
                lines.append(f"counterexample: seed={seed} J={format_subset(J)} sample={t} "
                             f"X={[X.rows[i][i] for i in range(n)]} V={[S.basis for S in V.subspaces]} -> {z}")
            else:
                hits.add(z)
        lines.append(f"J={format_subset(J)}: {count} samples, {len(hits)}/{len(left_quotient(J, n))} cells hit")
    lines.insert(0, f"{total} samples (seed {seed}): {'PASS' if ok else 'FAIL'}")
    return CheckResult("typeseq-crosscheck", ok, lines)


def valid_hybrid_pairs(n: int):
    for J in all_subsets(n):
        for w in left_quotient(J, n):
            if conjugation_stable(w, J) and is_min_double(w, J):
                yield J, w


def sample_plethysm(n: int = 4, **_) -> CheckResult:
    lines, ok, count = [], True, 0
    for J, w in valid_hybrid_pairs(n):
        count += 1
        lhs = hybrid_char(J, w).at_q1()
        rhs = plethysm_rhs(J, w)
        if lhs != rhs:
            ok = False
            lines.append(f"DIFF J={format_subset(J)} w={w}: {lhs.to('p')} vs {rhs}")
    lines.insert(0, f"{count} valid (J', w) pairs in S_{n}: {'PASS' if ok else 'FAIL'}")
    return CheckResult("plethysm-sweep", ok, lines)


SAMPLE_KINDS = {
    "gamma-bijection": sample_gamma_bijection,
    "typeseq-crosscheck": sample_typeseq,
    "plethysm-sweep": sample_plethysm,
}


def run_sample(kind: str, **kw) -> CheckResult:
    return SAMPLE_KINDS[kind](**kw)
