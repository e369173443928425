"""``phecke`` command-line front end.

Exit codes: 0 success, 1 a verification or sweep failed, 2 unparsable
arguments, 3 a precondition was violated, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Callable

from .chromatic import WeightedGraphMap, csf_q, indifference_graph, quotient_pair, weighted_csf_q
from .flags import (random_flag, random_regular_semisimple, read_flag, read_matrix,
                    relative_position, type_sequence)
from .hecke import ConsistencyError, T, frobenius_char, kl_basis, kl_poly
from .laurent import NotDivisibleError
from .parabolic import (bundle_divide, centralizer, enumerate_admissible, gamma, hi_char,
                        hybrid_char, j_infinity, plethysm_rhs)
from .perm import (DomainError, HessenbergFunction, Permutation, SizeMismatchError,
                   double_quotient, format_subset, left_quotient, parse_subset)
from .symfunc import SymmetricFunction
from . import verify

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 1, 2, 3, 4
BASES = ("s", "h", "e", "p", "m")


class UsageError(Exception):
    pass


def _arg(fn: Callable, what: str):
    def conv(text):
        try:
            return fn(text)
        except (ValueError, KeyError) as exc:
            raise argparse.ArgumentTypeError(f"bad {what} {text!r}: {exc}")
    conv.__name__ = what
    return conv


perm_arg = _arg(Permutation.parse, "permutation")
subset_arg = _arg(parse_subset, "subset")
hess_arg = _arg(HessenbergFunction.parse, "Hessenberg function")
sym_arg = _arg(SymmetricFunction.parse, "symmetric function")


def _ints(text: str) -> tuple:
    return tuple(int(t) for t in text.replace(",", " ").split())


ints_arg = _arg(_ints, "integer list")


def _size(args, *perms: Permutation) -> int:
    n = getattr(args, "n", None)
    for w in perms:
        if n is None:
            n = w.n
        elif w.n != n:
            raise SizeMismatchError(f"{w} is not in S_{n}")
    return n


def _check_J(J, n: int):
    bad = [j for j in J if not 1 <= j < n]
    if bad:
        raise DomainError(f"J={format_subset(J)} is not a subset of {{1..{n - 1}}}")
    return J


def _sym_out(args, f: SymmetricFunction):
    if getattr(args, "at_q1", False):
        f = f.at_q1()
    basis = getattr(args, "basis", None)
    if basis:
        f = f.to(basis)
    return str(f), f.to_json()


# subcommands ----------------------------------------------------------------

def cmd_klpoly(args):
    _size(args, args.z, args.w)
    p = kl_poly(args.z, args.w)
    return p.format(), p.to_json()


def cmd_cprime(args):
    _size(args, args.w)
    c = kl_basis(args.w)
    return str(c), c.to_json()


def cmd_char(args):
    if (args.cprime is None) == (args.T is None):
        raise UsageError("give exactly one of --cprime, --T")
    w = args.cprime or args.T
    _size(args, w)
    a = kl_basis(w) if args.cprime is not None else T(w)
    return _sym_out(args, frobenius_char(a))


def cmd_csf(args):
    f = csf_q(indifference_graph(args.m))
    if args.omega:
        f = f.omega()
    return _sym_out(args, f)


def cmd_wcsf(args):
    GF = WeightedGraphMap(indifference_graph(args.G), args.f)
    return _sym_out(args, weighted_csf_q(GF))


def cmd_hybrid(args):
    n = _size(args, args.w)
    return _sym_out(args, hybrid_char(_check_J(args.J, n), args.w, prefactor=args.prefactor))


def cmd_plethysm_rhs(args):
    n = _size(args, args.w)
    return _sym_out(args, plethysm_rhs(_check_J(args.J, n), args.w))


def cmd_quotient(args):
    _check_J(args.J, args.n)
    ws = double_quotient(args.J, args.n) if args.double else left_quotient(args.J, args.n)
    out = [str(w) for w in ws]
    return "\n".join(out), out


def cmd_admissible(args):
    _check_J(args.J, args.n)
    seqs = enumerate_admissible(args.J, args.n)
    text = "\n".join(f"{gamma(s)} {s}" for s in seqs)
    return text, [{"gamma": str(gamma(s)), "sequence": s.to_json()} for s in seqs]


def cmd_jinf(args):
    n = _size(args, args.w)
    J = j_infinity(_check_J(args.J, n), args.w)
    return format_subset(J), sorted(J)


def cmd_centralizer(args):
    n = _size(args, args.w)
    dec = centralizer(_check_J(args.J, n), args.w)
    gens = [str(g) for g in dec.generators]
    text = (f"blocks {list(dec.blocks)}\nsigma {list(dec.sigma)}\ncycles {[list(c) for c in dec.cycles]}\n"
            f"generators {' '.join(gens) if gens else '(none)'}\norder {dec.order()}")
    return text, {"blocks": list(dec.blocks), "sigma": list(dec.sigma),
                  "cycles": [list(c) for c in dec.cycles], "generators": gens, "order": dec.order()}


def _flag_inputs(args):
    if args.random:
        rng = random.Random(args.seed)
        n = args.n
        if n is None:
            raise UsageError("--random needs --n")
        J = _check_J(args.J or frozenset(), n)
        X = random_regular_semisimple(n, rng)
        return J, random_flag(n, J, rng, X), X
    if args.X is None or args.flag is None:
        raise UsageError("give --X and --flag files, or --random")
    try:
        X, V = read_matrix(args.X), read_flag(args.flag)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot read input files: {exc}")
    if args.J is not None and frozenset(args.J) != V.J:
        raise DomainError(f"flag has type {format_subset(V.J)}, not {format_subset(args.J)}")
    return V.J, V, X


def cmd_relpos(args):
    J, V, X = _flag_inputs(args)
    w = relative_position(J, V, X)
    return str(w), str(w)


def cmd_typeseq(args):
    J, V, X = _flag_inputs(args)
    seq = type_sequence(J, V, X)
    z = gamma(seq)
    return f"{seq}\ngamma {z}", {"sequence": seq.to_json(), "gamma": str(z)}


def cmd_hichar(args):
    rho = args.rho if args.rho is not None else SymmetricFunction.single("h", (args.i,))
    return _sym_out(args, hi_char(args.n, args.i, rho))


def cmd_bundlediv(args):
    n = _size(args, args.w)
    f = args.f if args.f is not None else frobenius_char(kl_basis(args.w))
    return _sym_out(args, bundle_divide(args.w, _check_J(args.J, n), f))


def cmd_quotient_pair(args):
    J, GF = quotient_pair(args.m)
    text = f"J {format_subset(J)}\nG {GF.graph.hessenberg()}\nf {','.join(map(str, GF.f))}"
    return text, {"J": sorted(J), "G": list(GF.graph.hessenberg()), "f": list(GF.f)}


def cmd_verify(args):
    kw = {"n": args.n} if args.n is not None else {}
    try:
        results = verify.run_fixture(args.name, **kw)
    except KeyError:
        raise UsageError(f"unknown fixture {args.name!r}; choose from all, {', '.join(verify.FIXTURE_CHECKS)}")
    ok = all(r.ok for r in results)
    text = "\n".join(r.report() for r in results)
    data = [{"name": r.name, "ok": r.ok, "informational": r.informational, "details": r.lines}
            for r in results]
    return text, data, ok


def cmd_sample(args):
    kw = {"seed": args.seed, "count": args.count}
    if args.n is not None:
        kw["n"] = args.n
    if kw.get("n", 4) > 6:
        raise DomainError("sampling is limited to n <= 6")
    r = verify.run_sample(args.kind, **kw)
    return r.report(), {"name": r.name, "ok": r.ok, "details": r.lines}, r.ok


# parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phecke", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for random sampling")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        return sp

    def sym_opts(sp, basis=None):
        sp.add_argument("--basis", choices=BASES, default=basis)
        sp.add_argument("--at-q1", action="store_true")

    sp = add("klpoly", cmd_klpoly, "Kazhdan-Lusztig polynomial P_{z,w}")
    sp.add_argument("--n", type=int)
    sp.add_argument("--z", type=perm_arg, required=True)
    sp.add_argument("--w", type=perm_arg, required=True)

    sp = add("cprime", cmd_cprime, "q^{l(w)/2} C'_w in the T basis")
    sp.add_argument("--n", type=int)
    sp.add_argument("--w", type=perm_arg, required=True)

    sp = add("char", cmd_char, "Frobenius character of C'_w or T_w")
    sp.add_argument("--n", type=int)
    sp.add_argument("--cprime", type=perm_arg)
    sp.add_argument("--T", type=perm_arg)
    sym_opts(sp, "s")

    sp = add("csf", cmd_csf, "chromatic quasisymmetric function of G_m")
    sp.add_argument("--m", type=hess_arg, required=True)
    sp.add_argument("--omega", action="store_true")
    sym_opts(sp)

    sp = add("wcsf", cmd_wcsf, "weighted chromatic quasisymmetric function of (G, f)")
    sp.add_argument("--G", type=hess_arg, required=True)
    sp.add_argument("--f", type=ints_arg, required=True)
    sym_opts(sp)

    sp = add("hybrid", cmd_hybrid, "character of the hybrid element C'_{w_J'} T_w")
    sp.add_argument("--n", type=int)
    sp.add_argument("--J", type=subset_arg, required=True)
    sp.add_argument("--w", type=perm_arg, required=True)
    sp.add_argument("--prefactor", choices=("half", "full"), default="half")
    sym_opts(sp, "s")

    sp = add("plethysm-rhs", cmd_plethysm_rhs, "product of plethysms over cycles of w on J-blocks")
    sp.add_argument("--n", type=int)
    sp.add_argument("--J", type=subset_arg, required=True)
    sp.add_argument("--w", type=perm_arg, required=True)
    sym_opts(sp, "p")

    sp = add("quotient", cmd_quotient, "minimal left coset representatives ^J S_n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--J", type=subset_arg, required=True)
    sp.add_argument("--double", action="store_true", help="double cosets instead")

    sp = add("admissible", cmd_admissible, "admissible sequences for J and their Gamma values")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--J", type=subset_arg, required=True)

    sp = add("quotient-pair", cmd_quotient_pair, "merge G_m to a weighted pair (G, f)")
    sp.add_argument("--m", type=hess_arg, required=True)

    sp = add("jinf", cmd_jinf, "largest w-stable subset of J")
    sp.add_argument("--n", type=int)
    sp.add_argument("--J", type=subset_arg, required=True)
    sp.add_argument("--w", type=perm_arg, required=True)

    sp = add("centralizer", cmd_centralizer, "W_J^w as a product of symmetric groups")
    sp.add_argument("--n", type=int)
    sp.add_argument("--J", type=subset_arg, required=True)
    sp.add_argument("--w", type=perm_arg, required=True)

    for name, fn, help_ in (("relpos", cmd_relpos, "relative position of (V, XV)"),
                            ("typeseq", cmd_typeseq, "type sequence of a partial flag")):
        sp = add(name, fn, help_)
        sp.add_argument("--X", help="matrix file")
        sp.add_argument("--flag", help="flag file")
        sp.add_argument("--J", type=subset_arg)
        sp.add_argument("--n", type=int)
        sp.add_argument("--random", action="store_true", help="sample X and the flag from --seed")

    sp = add("hichar", cmd_hichar, "character of Hi_i with coefficients rho")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--rho", type=sym_arg, help="character of S_i (default h[i])")
    sym_opts(sp, "h")

    sp = add("bundlediv", cmd_bundlediv, "divide a character by |W_J|_q")
    sp.add_argument("--n", type=int)
    sp.add_argument("--w", type=perm_arg, required=True)
    sp.add_argument("--J", type=subset_arg, required=True)
    sp.add_argument("--f", type=sym_arg, help="defaults to ch(C'_w)")
    sym_opts(sp, "h")

    sp = add("verify", cmd_verify, "check bundled fixtures")
    sp.add_argument("name", help="fixture name or 'all'")
    sp.add_argument("--n", type=int)

    sp = add("sample", cmd_sample, "randomized and exhaustive property sweeps")
    sp.add_argument("kind", choices=sorted(verify.SAMPLE_KINDS))
    sp.add_argument("--n", type=int)
    sp.add_argument("--count", type=int, default=100)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, SizeMismatchError, NotDivisibleError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    text, data, *rest = out
    ok = rest[0] if rest else True
    if args.json:
        print(json.dumps({"command": args.command, "ok": ok, "result": data}, sort_keys=True))
    else:
        print(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
