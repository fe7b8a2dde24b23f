import csv
import dataclasses
import io
import json
from fractions import Fraction

import pytest

import qbinomial.verify
from qbinomial.cli import main
from qbinomial.serialize import fraction_from_json, joint_table_from_json
from qbinomial.distribution import ExperimentParams, joint_pmf_table

F = Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- gp -----------------------------------------------------------------------


def test_gp_table(capsys):
    code, out, _ = run(capsys, "gp", "--n", "4", "--k", "2")
    assert code == 0
    assert out.strip() == "1 1 2 1 1 (degree 4)"


def test_gp_zero(capsys):
    _, out, _ = run(capsys, "gp", "--n", "3", "--k", "5")
    assert out.strip() == "0 (zero polynomial)"


def test_gp_json(capsys):
    _, out, _ = run(capsys, "gp", "--n", "5", "--k", "2", "--format", "json")
    assert json.loads(out) == {
        "n": 5, "k": 2, "coefficients": [1, 1, 2, 2, 2, 1, 1], "degree": 6
    }


def test_gp_csv(capsys):
    _, out, _ = run(capsys, "gp", "--n", "2", "--k", "1", "--format", "csv")
    assert out.split() == ["power,coefficient", "0,1", "1,1"]


# -- pmf ----------------------------------------------------------------------


def test_pmf_joint_grid(capsys):
    code, out, _ = run(capsys, "pmf", "--n", "4", "--pi", "1/2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "15 cells, total = 1"
    assert lines[0].split() == ["k\\t", "0", "1", "2", "3", "4"]
    assert lines[3].split() == ["2", "1/16", "1/16", "1/8", "1/16", "1/16"]


def test_pmf_joint_cell(capsys):
    _, out, _ = run(capsys, "pmf", "--n", "4", "--pi", "0.5", "--k", "2", "--t", "2")
    assert out.strip() == "P(Y=2, T=2) = 1/8  (~ 0.125)"


def test_pmf_joint_json_roundtrip(capsys):
    _, out, _ = run(capsys, "pmf", "--n", "6", "--pi", "2/7", "--format", "json")
    obj = json.loads(out)
    assert obj["which"] == "joint"
    table = joint_table_from_json(obj)
    assert table == joint_pmf_table(ExperimentParams(6, F(2, 7)))


def test_pmf_marginal_T_json_exact(capsys):
    _, out, _ = run(
        capsys, "pmf", "--which", "T", "--n", "4", "--pi", "1/3", "--t", "3", "--format", "json"
    )
    (entry,) = json.loads(out)["entries"]
    pi = F(1, 3)
    assert entry["t"] == 3
    assert fraction_from_json(entry["value"]) == (1 - pi) ** 3 * pi + (1 - pi) ** 2 * pi**2 + (
        1 - pi
    ) * pi**3


def test_pmf_marginal_Y(capsys):
    _, out, _ = run(capsys, "pmf", "--which", "Y", "--n", "4", "--pi", "1/2", "--k", "2")
    assert out.strip() == "P(Y=2) = 3/8  (~ 0.375)"


def test_pmf_conditional_T(capsys):
    _, out, _ = run(capsys, "pmf", "--which", "T|Y", "--n", "4", "--k", "2")
    values = [line.split(" = ")[1].split()[0] for line in out.strip().splitlines()]
    assert values == ["1/6", "1/6", "1/3", "1/6", "1/6"]


def test_pmf_conditional_Y(capsys):
    _, out, _ = run(
        capsys, "pmf", "--which", "Y|T", "--n", "4", "--pi", "1/2", "--t", "3", "--k", "2"
    )
    assert out.strip() == "P(Y=2 | T=3) = 1/3  (~ 0.33333333333333333333)"


def test_pmf_qpoly(capsys):
    _, out, _ = run(capsys, "pmf", "--which", "qpoly", "--n", "4", "--pi", "1/2", "--k", "2")
    assert out.strip() == "P_q(Y=2) = 1/16 + (1/16)*q + (1/8)*q^2 + (1/16)*q^3 + (1/16)*q^4"


def test_pmf_referee(capsys):
    _, out, _ = run(
        capsys, "pmf", "--which", "referee", "--n", "2", "--pi", "1/2", "--q", "1/2", "--k", "1"
    )
    assert out.strip().startswith("P_referee(Y=1; q=1/2) = 3/7")


def test_pmf_csv(capsys):
    _, out, _ = run(capsys, "pmf", "--n", "2", "--pi", "1/2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "t", "numerator", "denominator", "decimal"]
    assert sum(F(int(r[2]), int(r[3])) for r in rows[1:]) == 1


def test_pmf_zero_probability_condition(capsys):
    code, _, err = run(capsys, "pmf", "--which", "Y|T", "--n", "4", "--pi", "1/2", "--t", "5")
    assert code == 2
    assert "error" in err


def test_pmf_missing_option(capsys):
    code, _, err = run(capsys, "pmf", "--which", "T|Y", "--n", "4")
    assert code == 2 and "--k" in err


@pytest.mark.parametrize("pi", ["0", "1", "1.5", "abc"])
def test_bad_pi_is_usage_error(capsys, pi):
    with pytest.raises(SystemExit) as exc:
        main(["pmf", "--n", "3", "--pi", pi])
    assert exc.value.code == 2


def test_cap_is_usage_error(capsys):
    code, _, _ = run(capsys, "expand", "--n", "25")
    assert code == 2


# -- moments ------------------------------------------------------------------


def test_moments_table(capsys):
    _, out, _ = run(capsys, "moments", "--n", "4", "--pi", "1/2")
    lines = out.splitlines()
    assert "E(T) = 3/2  (~ 1.5)" in lines
    assert "Cov(Y,T) = 0" in lines
    assert "E(T|Y=2) = 2    V(T|Y=2) = 5/3" in lines


def test_moments_conditional_n15(capsys):
    _, out, _ = run(capsys, "moments", "--n", "15", "--pi", "1/2")
    assert "E(T|Y=6) = 27    V(T|Y=6) = 72" in out.splitlines()


def test_moments_json(capsys):
    _, out, _ = run(capsys, "moments", "--n", "10", "--pi", "0.3", "--format", "json")
    obj = json.loads(out)
    assert fraction_from_json(obj["moments"]["E(T)"]) == F(189, 20)
    assert len(obj["conditional"]) == 11


# -- verify -------------------------------------------------------------------


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "4", "--pi", "1/3,1/2", "--quiet")
    assert code == 0
    assert out.strip().endswith("checks passed")
    tally = out.strip().splitlines()[-1].split()[0]
    good, total = tally.split("/")
    assert good == total


def test_verify_reports_mismatch(capsys, monkeypatch):
    real = qbinomial.verify.moments

    def broken(params):
        m = real(params)
        return dataclasses.replace(m, e_t=m.e_t + 1)

    monkeypatch.setattr(qbinomial.verify, "moments", broken)
    code, out, _ = run(capsys, "verify", "--n-max", "2", "--pi", "1/2", "--quiet")
    assert code == 1
    assert "e_t: closed" in out
    assert "FAIL" in out


# -- sample -------------------------------------------------------------------


def test_sample_reproducible(capsys):
    argv = ["sample", "--n", "8", "--pi", "1/4", "--count", "20000", "--seed", "9"]
    _, first, _ = run(capsys, *argv, "--format", "json")
    _, second, _ = run(capsys, *argv, "--lanes", "3", "--format", "json")
    assert first == second
    obj = json.loads(first)
    assert sum(c["count"] for c in obj["cells"]) == 20000
    assert abs(obj["e_t_z"]) < 5


def test_sample_table(capsys):
    code, out, _ = run(capsys, "sample", "--n", "6", "--pi", "1/2", "--count", "1000")
    assert code == 0
    assert out.startswith("n=6 pi=1/2 seed=0 count=1000")


def test_sample_csv(capsys):
    _, out, _ = run(
        capsys, "sample", "--n", "3", "--pi", "1/2", "--count", "500", "--format", "csv"
    )
    rows = list(csv.DictReader(io.StringIO(out)))
    assert sum(int(r["count"]) for r in rows) == 500


def test_sample_bad_count(capsys):
    code, _, _ = run(capsys, "sample", "--n", "3", "--pi", "1/2", "--count", "0")
    assert code == 2


# -- homogeneity --------------------------------------------------------------


def test_homogeneity_inline_json(capsys):
    _, out, _ = run(capsys, "homogeneity", "--word", "FFFFFFFFFSSSSSS", "--word", "SSSS")
    first, second = json.loads(out)
    assert first["classification"] == "failures front-loaded"
    assert F(first["percentile"]["num"], first["percentile"]["den"]) == F(1, 5005)
    assert second["classification"] == "degenerate"


def test_homogeneity_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("SSSSSSFFFFFFFFF\n\nFFSFFSFS\n"))
    code, out, _ = run(capsys, "homogeneity", "-", "--format", "table")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].endswith("successes front-loaded")
    assert "n=8 k=3 t=4" in lines[1]


def test_homogeneity_file(capsys, tmp_path):
    path = tmp_path / "obs.txt"
    path.write_text("FSFSFS\n")
    _, out, _ = run(capsys, "homogeneity", str(path))
    (report,) = json.loads(out)
    assert report["t"] == 3


def test_homogeneity_bad_input(capsys, tmp_path):
    code, _, _ = run(capsys, "homogeneity", "--word", "FSX")
    assert code == 2
    code, _, _ = run(capsys, "homogeneity", str(tmp_path / "missing.txt"))
    assert code == 2
    empty = tmp_path / "empty.txt"
    empty.write_text("\n")
    code, _, _ = run(capsys, "homogeneity", str(empty))
    assert code == 2


# -- expand -------------------------------------------------------------------


def test_expand_table(capsys):
    _, out, _ = run(capsys, "expand", "--n", "2")
    lines = out.strip().splitlines()
    assert lines[0].split() == ["outcome", "monomial", "partition", "transpositions", "t"]
    assert lines[3].split() == ["SF", "yx", "(1)", "(2,1)", "1"]


def test_expand_json(capsys):
    _, out, _ = run(capsys, "expand", "--n", "4", "--format", "json")
    rows = json.loads(out)
    assert len(rows) == 16
    assert {"word": "FFSS", "k": 2, "partition": [0, 0], "t": 0} in rows


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "qbinomial", "gp", "--n", "3", "--k", "1"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.strip() == "1 1 1 (degree 2)"
