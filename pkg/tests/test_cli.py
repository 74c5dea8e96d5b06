import json

import pytest

from hilbdesc.cli import EXIT_FAIL, EXIT_OK, EXIT_PARSE, EXIT_RANK, main, read_config


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def series_of(out):
    return json.loads(out)["series"]


def rational_coeffs(series):
    """{exponent tuple: "num/den"} from the JSON series layout."""
    out = {}
    for c in series["coeffs"]:
        out[tuple(c["exp"])] = c["num"] if c["den"] == "1" else f"{c['num']}/{c['den']}"
    return out


def test_zc2_empty(capsys):
    code, out, _ = run(capsys, "zc2", "--classes", "", "--qmax", "4")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["classes"] == []


def test_zc2_dual_check(capsys):
    code, out, _ = run(capsys, "zc2", "--classes", "t1", "--qmax", "3", "--mmax", "2", "--dual-check")
    assert code == EXIT_OK
    assert json.loads(out)["dual_check"] == {"macdonald": True, "linebundle": True}


@pytest.mark.parametrize("argv", [
    ["zc2", "--classes", "t1+++", "--qmax", "3"],
    ["zc2", "--classes", "t1", "--mmax", "x"],
    ["zc2", "--qmax", "-1"],
    ["zsurface", "--surface", "P7"],
    ["zsurface", "--surface", "P2", "--bundle", "O(1"],
    ["universal", "--ranks", "a"],
    ["verify", "--suite", "nonsense"],
    ["zc2", "--config"],
])
def test_parse_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_PARSE


def test_zsurface_all_ones(capsys):
    for surface, q in (("P2", 5), ("F1", 3)):
        code, out, _ = run(capsys, "zsurface", "--surface", surface, "--qmax", str(q))
        assert code == EXIT_OK
        coeffs = rational_coeffs(series_of(out))
        assert coeffs == {(k,): "1" for k in range(q + 1)}


def test_zsurface_hyperplane(capsys):
    code, out, _ = run(capsys, "zsurface", "--surface", "P2", "--bundle", "O(1)", "--qmax", "4", "--mmax", "3")
    assert code == EXIT_OK
    coeffs = rational_coeffs(series_of(out))
    # (1 - qm)^3 / (1 - q)
    assert coeffs[(2, 1)] == "-3" and coeffs[(3, 2)] == "3" and coeffs[(4, 3)] == "-1"
    assert coeffs[(4, 0)] == "1" and (1, 2) not in coeffs


def test_deterministic_and_jobs_independent(capsys):
    argv = ["zc2", "--classes", "t1+t2^-1,1-t1", "--qmax", "3", "--mmax", "2"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    _, c, _ = run(capsys, *argv, "--jobs", "2")
    assert a == b == c


def test_latex_output(capsys):
    code, out, _ = run(capsys, "zc2", "--classes", "t1", "--qmax", "2", "--mmax", "1", "--latex")
    assert code == EXIT_OK
    assert out.startswith("\\begin{tabular}") and "\\end{tabular}" in out


def test_output_file(tmp_path, capsys):
    path = tmp_path / "z.json"
    code, out, _ = run(capsys, "zsurface", "--surface", "P1xP1", "--qmax", "2", "--output", str(path))
    assert code == EXIT_OK and out == ""
    assert json.loads(path.read_text())["surface"] == "P1xP1"


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nclasses = t1\nqmax = 3\nmmax = 2\ndual_check = true\nlatex = false\n")
    assert read_config(str(cfg)) == ["--classes", "t1", "--qmax", "3", "--mmax", "2", "--dual-check"]
    code, out, _ = run(capsys, "zc2", "--config", str(cfg))
    assert code == EXIT_OK
    _, direct, _ = run(capsys, "zc2", "--classes", "t1", "--qmax", "3", "--mmax", "2", "--dual-check")
    assert out == direct


def test_bad_config_line(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("qmax 3\n")
    code, _, _ = run(capsys, "zc2", "--config", str(cfg))
    assert code == EXIT_PARSE


def test_verify_macdonald(capsys):
    code, out, err = run(capsys, "verify", "--suite", "macdonald", "--max-size", "4")
    assert code == EXIT_OK and json.loads(out)["passed"] is True
    assert "[PASS]" in err


def test_verify_wrong_convention_fails(capsys):
    code, out, err = run(capsys, "verify", "--suite", "macdonald", "--max-size", "3",
                         "--convention", "q=t1,transpose=0")
    assert code == EXIT_FAIL
    assert "[FAIL]" in err and json.loads(out)["passed"] is False


def test_universal_single_config_is_rank_deficient(capsys):
    code, _, err = run(capsys, "universal", "--ranks", "1", "--configs", "P2:O(0)")
    assert code == EXIT_RANK
    assert "c2(a1)" in err


def test_universal_default(capsys):
    code, out, _ = run(capsys, "universal", "--ranks", "1", "--qmax", "3", "--mmax", "3")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["residual"] == "0"
    a_line = {e[0]: v for e, v in rational_coeffs(payload["logs"]["A"]).items() if e[1] == 0}
    # log of 1/(1-q) is sum q^n / n
    assert a_line == {1: "1", 2: "1/2", 3: "1/3"}
