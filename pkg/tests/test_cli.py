import json

import pytest

from parabolic_hecke.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


@pytest.mark.parametrize("argv,expected", [
    (("char", "--n", "4", "--cprime", "2341", "--basis", "h"),
     "(q+q^2)h[2,2]+(q+q^2)h[3,1]+(1+q+q^2+q^3)h[4]"),
    (("quotient", "--n", "4", "--J", "1,3"), "1234\n1324\n1342\n3124\n3142\n3412"),
    (("plethysm-rhs", "--n", "4", "--J", "1,3", "--w", "3412", "--at-q1"), "(p[2,2]+p[4])/2"),
    (("klpoly", "--z", "1324", "--w", "3412"), "1+q"),
    (("cprime", "--w", "21"), "T[12]+T[21]"),
    (("char", "--T", "21", "--basis", "p", "--at-q1"), "p[2]"),
    (("csf", "--m", "2,3,3", "--omega", "--basis", "h"), "qh[2,1]+(1+q+q^2)h[3]"),
    (("hybrid", "--J", "1,3", "--w", "3412"), "qs[2,2]-q^2s[3,1]+q^4s[4]"),
    (("jinf", "--J", "2,3", "--w", "2314"), "{}"),
    (("hichar", "--n", "4", "--i", "2"), "(1+q)h[2,2]"),
    (("bundlediv", "--w", "4321", "--J", "1,3"), "(1+q+2q^2+q^3+q^4)h[4]"),
    (("quotient-pair", "--m", "3,3,4,4"), "J {1}\nG 2,3,3\nf 1,1,2,3"),
])
def test_outputs(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == expected


def test_admissible_lists_sequences(capsys):
    code, out, _ = run(capsys, "admissible", "--n", "4", "--J", "1,3")
    assert code == 0
    assert out.splitlines()[4] == "3142 (({1,3},1324),({},3142))"


def test_deterministic(capsys):
    a = run(capsys, "wcsf", "--G", "2,3,3", "--f", "1,1,2,3")
    b = run(capsys, "wcsf", "--G", "2,3,3", "--f", "1,1,2,3")
    assert a == b


def test_json_roundtrip(capsys):
    from parabolic_hecke.symfunc import SymmetricFunction
    code, out, _ = run(capsys, "--json", "char", "--cprime", "2341", "--basis", "h")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    f = SymmetricFunction.from_json(data["result"])
    assert str(f) == "(q+q^2)h[2,2]+(q+q^2)h[3,1]+(1+q+q^2+q^3)h[4]"
    # --json is accepted after the subcommand too
    code, out2, _ = run(capsys, "char", "--cprime", "2341", "--basis", "h", "--json")
    assert out2 == out


def test_typeseq_files(capsys, tmp_path):
    (tmp_path / "X").write_text("1 0 0 0\n0 2 0 0\n0 0 3 0\n0 0 0 5\n")
    (tmp_path / "V").write_text("1 1 1 1\n1 2 3 5\n\n1 0 0 0\n0 1 0 0\n")
    code, out, _ = run(capsys, "typeseq", "--X", str(tmp_path / "X"), "--flag", str(tmp_path / "V"))
    assert code == 0
    assert out.splitlines() == ["(({1,3},1324),({},3142))", "gamma 3142"]
    code, out, _ = run(capsys, "relpos", "--X", str(tmp_path / "X"), "--flag", str(tmp_path / "V"))
    assert out == "1324"


def test_random_typeseq_uses_seed(capsys):
    a = run(capsys, "--seed", "4", "typeseq", "--random", "--n", "4", "--J", "1")
    b = run(capsys, "typeseq", "--random", "--n", "4", "--J", "1", "--seed", "4")
    assert a == b and a[0] == 0


@pytest.mark.parametrize("argv,code", [
    (("klpoly", "--z", "1x", "--w", "12"), 2),
    (("klpoly", "--z", "1134", "--w", "1234"), 2),
    (("frobnicate",), 2),
    (("char", "--n", "4"), 2),
    (("verify", "nope"), 2),
    (("klpoly", "--z", "12", "--w", "3412"), 3),
    (("jinf", "--J", "5", "--w", "123"), 3),
    (("hybrid", "--J", "1", "--w", "21"), 3),
    (("bundlediv", "--w", "1234", "--J", "1,3"), 3),
    (("hichar", "--n", "3", "--i", "5"), 3),
    (("wcsf", "--G", "2,2", "--f", "2,1"), 3),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_internal_error_exit(capsys, monkeypatch):
    from parabolic_hecke import cli
    from parabolic_hecke.hecke import ConsistencyError

    def boom(*a, **k):
        raise ConsistencyError("forced")
    monkeypatch.setattr(cli, "kl_poly", boom)
    code, _, err = run(capsys, "klpoly", "--z", "12", "--w", "21")
    assert code == 4 and "forced" in err


def test_verify_pass_and_fail(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "gr24-table")
    assert code == 0
    assert "sum of h-coefficients" in out and out.startswith("gr24-table: PASS")
    code, out, _ = run(capsys, "verify", "sw-identity", "--n", "4")
    assert code == 0
    from parabolic_hecke import verify
    from parabolic_hecke.verify import CheckResult
    monkeypatch.setitem(verify.FIXTURE_CHECKS, "path-example",
                        lambda **_: CheckResult("path-example", False, ["DIFF forced"]))
    code, out, _ = run(capsys, "verify", "path-example")
    assert code == 1 and "FAIL" in out


def test_verify_informational_never_fails(capsys):
    code, out, _ = run(capsys, "verify", "gr24-decomposition")
    assert code == 0 and "INFO" in out and "residual" in out


def test_sample(capsys):
    code, out, _ = run(capsys, "sample", "gamma-bijection", "--n", "4")
    assert code == 0
    assert "|sequences| = |^JW| for all 8 subsets J: PASS" in out
    code, out, _ = run(capsys, "sample", "typeseq-crosscheck", "--n", "3", "--seed", "7", "--count", "10")
    assert code == 0
    code, _, _ = run(capsys, "sample", "plethysm-sweep", "--n", "9")
    assert code == 3
