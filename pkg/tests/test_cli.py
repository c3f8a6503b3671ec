import json

import pytest

from multipartition import cli
from multipartition.audit import REGISTRY


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_count(capsys):
    assert run_json(capsys, "count", "--a", "1,2", "--k", "2", "--n", "4") == {"value": "14"}


def test_count_series(capsys):
    data = run_json(capsys, "count", "--a", "1,2", "--k", "2", "--series", "5")
    assert data["series"] == ["1", "2", "5", "8", "14", "20"]


def test_big_integers_are_strings(capsys):
    data = run_json(capsys, "count", "--a", "1", "--k", "5", "--n", "100000")
    assert isinstance(data["value"], str) and len(data["value"]) > 16


def test_polypart_both(capsys):
    data = run_json(capsys, "polypart", "--a", "1,2", "--k", "1", "--method", "both")
    assert data["teo4"] == data["teo5"] == ["3/4", "1/2"]
    assert data["agree"] is True


def test_density(capsys):
    data = run_json(capsys, "density", "--a", "1", "--k", "1", "--mod", "7", "--N", "100")
    assert data["density"] == "1" and data["bound"] == "1" and data["violation"] is False


def test_coeffs_literal(capsys):
    assert run_json(capsys, "coeffs", "--a", "1", "--k", "2", "--literal")["coefficients"] == [["1", "2"]]
    assert run_json(capsys, "coeffs", "--a", "1", "--k", "2")["coefficients"] == [["1", "1"]]


def test_waves(capsys):
    data = run_json(capsys, "waves", "--a", "1,2", "--k", "1")
    assert data["indices"] == [1, 2]
    assert data["waves"]["2"] == [["1/4", "0"], ["-1/4", "0"]]


def test_bbnum(capsys):
    assert run_json(capsys, "bbnum", "--a", "1,2", "--k", "1", "--j", "2")["value"] == "11/6"


def test_delta(capsys):
    data = run_json(capsys, "delta", "--a", "1", "--k", "1", "--system")
    assert data["delta"] == "1/2" and data["size"] == 1
    assert data["system"]["solution"] == ["-1"] and data["system"]["verdict"] == "FAIL"


def test_zeta(capsys):
    data = run_json(capsys, "zeta", "--a", "1,2", "--k", "2", "--s", "4", "--w", "1,1", "--cutoff", "2000", "--tol", "1e-6")
    verdicts = {e["formula_id"]: e["verdict"] for e in data["entries"]}
    assert verdicts["p1"] == "CORRECTED"


def test_text_output(capsys):
    code, out, _ = run(capsys, "count", "--a", "1,2", "--k", "2", "--n", "4", "--text")
    assert code == 0 and out.strip() == "value: 14"


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["count", "--a", "1,x", "--n", "3"], "--a"),
        (["count", "--a", "1,0", "--n", "3"], "--a"),
        (["count", "--a", "1,2", "--k", "0", "--n", "3"], "--k"),
        (["count", "--a", "1,2", "--n", "-3"], "--n"),
        (["density", "--a", "1", "--mod", "1"], "--mod"),
        (["zeta", "--a", "1,2", "--k", "2", "--w", "1"], "--w"),
        (["zeta", "--a", "1,2", "--s", "2"], "--s"),
        (["count", "--a", "1", "--bogus", "3"], "--bogus"),
    ],
)
def test_usage_errors(capsys, argv, flag):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 1
    assert flag in capsys.readouterr().err


def test_consistency_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "count_closed_form", lambda spec, n: -1)
    code, _, err = run(capsys, "count", "--a", "1,2", "--n", "4")
    assert code == 2 and "consistency" in err


def test_audit_registry_complete(capsys):
    data = run_json(capsys, "audit", "--a", "1,2", "--k", "1", "--N", "2000")
    ids = [e["formula_id"] for e in data["entries"]]
    assert ids == [name for name, _ in REGISTRY]
    assert all(e["verdict"] in {"PASS", "FAIL", "CORRECTED", "SINGULAR", "NOTE"} for e in data["entries"])
    assert all(isinstance(v, (str, list, dict)) for e in data["entries"] for v in e["witness"].values())
    assert data["version"] and data["spec"]["a"] == [1, 2]


def test_schema_stable_keys(capsys):
    first = run_json(capsys, "density", "--a", "1,2", "--k", "2", "--mod", "5", "--N", "100")
    second = run_json(capsys, "density", "--a", "3,4,6", "--k", "1", "--mod", "2", "--N", "50")
    assert list(first) == list(second)
