import json
import shutil

import pytest

from simpdiff.cli import main
from simpdiff.fixtures import FIXTURE_DIR

HEIS = str(FIXTURE_DIR / "heisenberg.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_differentiate_heisenberg(capsys):
    code, out, _ = run(capsys, "differentiate", HEIS)
    assert code == 0
    report = json.loads(out)
    assert report["tool"]["name"] == "simpdiff"
    assert report["conventions"]["bracket_sign"] == -1
    assert report["differential"]["xi_c"] == "-xi_a*xi_b"
    assert all(c["passed"] for c in report["checks"])
    assert {c["name"] for c in report["checks"]} >= {"presentation identities", "d squared"}


def test_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["differentiate", HEIS, "--out", str(a)]) == 0
    assert main(["differentiate", HEIS, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_threads_do_not_change_output(capsys, monkeypatch):
    _, serial, _ = run(capsys, "differentiate", HEIS)
    monkeypatch.setenv("SD_THREADS", "3")
    _, threaded, _ = run(capsys, "differentiate", HEIS)
    assert serial == threaded
    monkeypatch.setenv("SD_THREADS", "zero")
    assert run(capsys, "differentiate", HEIS)[0] == 1


def test_truncation_too_small(capsys):
    code, _, err = run(capsys, "differentiate", HEIS, "--degree", "2", "--truncation", "1")
    assert code == 1
    assert "truncation insufficient" in err


@pytest.mark.parametrize("name", ["abelian1", "abelian2", "shifted", "odd_abelian"])
def test_vanest_on_linear_fixtures(capsys, name):
    code, out, _ = run(capsys, "vanest", str(FIXTURE_DIR / f"{name}.json"))
    assert code == 0
    assert all(c["passed"] for c in json.loads(out)["checks"])


def test_vanest_refuses_nonlinear(capsys):
    code, _, err = run(capsys, "vanest", HEIS)
    assert code == 1
    assert "linear" in err


def test_abstract_odd_line(capsys):
    code, out, _ = run(capsys, "abstract", str(FIXTURE_DIR / "odd_line.json"))
    assert code == 0
    report = json.loads(out)
    assert report["infinitesimal"]["infinitesimal"] is True
    assert "odd line identities" in [c["name"] for c in report["checks"]]


def test_abstract_cochains_reports_a_witness(capsys):
    code, out, _ = run(capsys, "abstract", str(FIXTURE_DIR / "abelian_cochains.json"))
    assert code == 0
    report = json.loads(out)
    assert report["infinitesimal"]["infinitesimal"] is False
    assert "witness" in report["infinitesimal"]
    assert report["quotient"]["dims"] == [1, 1, 0, 0]


def test_validate(capsys, tmp_path):
    assert run(capsys, "validate", HEIS)[0] == 0
    assert run(capsys, "validate", str(FIXTURE_DIR / "exterior_line.json"))[0] == 0
    doc = json.loads((FIXTURE_DIR / "twisted.json").read_text())
    # perturb one face image so the simplicial identities break
    entry = doc["d0"]["3"][0]
    entry["poly"].append({"coeff": "1", "monomial": [[[1], 0, 1], [[2], 1, 1]]})
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 2
    assert json.loads(out)["checks"][0]["witnesses"]


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "differentiate", str(tmp_path / "missing.json"))[0] == 1
    junk = tmp_path / "junk.json"
    junk.write_text("{")
    code, _, err = run(capsys, "differentiate", str(junk))
    assert code == 1 and "junk.json" in err
    assert run(capsys, "differentiate")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1


def test_selftest_filter(capsys):
    code, out, _ = run(capsys, "selftest", "--filter", "unravel")
    assert code == 0
    assert "unravel sign soundness" in out and out.startswith("[PASS]")
    assert "1/1 criteria passed" in out
    assert run(capsys, "selftest", "--filter", "nothing-matches-this")[0] == 1


def test_selftest_corrupted_fixtures(capsys, tmp_path):
    d = tmp_path / "fx"
    shutil.copytree(FIXTURE_DIR, d)
    (d / "so3.json").write_text("[1, 2")
    code, _, err = run(capsys, "selftest", "--filter", "example", "--fixtures", str(d))
    assert code == 1
    assert "so3.json" in err
