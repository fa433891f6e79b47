import json
import subprocess
import sys

import jsonschema
import pytest

from k3sym import claims
from k3sym import forms as fm
from k3sym.axioms import axiom_table
from k3sym.cli import main


@pytest.fixture(scope="module")
def results():
    return claims.run_all()


def test_registry_ids():
    assert claims.REGISTRY.ids() == sorted([
        "inv6-H", "inv6-Hprime", "eig6-lines", "tau-fixed", "pencil-singular", "csing-nodes",
        "general-position", "inv4-Hprime", "klein-smooth", "hessian-klein", "l27-closure", "l27-unique",
        "gamma-orbits", "stab-F", "mori-audit", "delpezzo-degree",
    ])


def test_all_pass(results):
    assert len(results) == 16
    assert [r.status for r in results] == ["pass"] * 16
    assert [r.id for r in results] == sorted(r.id for r in results)


def test_citations_and_axioms(results):
    table = axiom_table()
    for r in results:
        assert r.citations and r.evidence
        assert all(a in table for a in r.axioms_used)


def test_schema(results):
    doc = json.loads(claims.emit_report(results, "json"))
    jsonschema.validate(doc, claims.report_schema())
    assert len(doc["results"]) == 16


def test_determinism(results):
    again = claims.run_all()
    a = json.dumps(claims.report_dict(results, with_time=False))
    b = json.dumps(claims.report_dict(again, with_time=False))
    assert a == b


def test_run_claim_examples():
    r = claims.run_claim("inv6-H")
    assert r.status == "pass" and r.evidence["dim"] == 2
    r = claims.run_claim("hessian-klein")
    assert r.evidence["constant"] == [[0, "-54"]]
    with pytest.raises(KeyError):
        claims.run_claim("nonexistent")


def test_tag_filter():
    assert {r.id for r in claims.run_all(tag="mori")} == {"mori-audit", "delpezzo-degree"}


def test_empty_registry():
    assert claims.run_all(registry=claims.Registry()) == []


def test_failing_claim_does_not_abort():
    reg = claims.Registry()

    @reg.register("boom", ["nowhere"])
    def _boom(cfg):
        raise RuntimeError("kaput")

    @reg.register("nope", ["nowhere"])
    def _nope(cfg):
        return False, {"why": "because"}

    @reg.register("empty", ["nowhere"])
    def _empty(cfg):
        return True, {}

    out = claims.run_all(registry=reg)
    assert [(r.id, r.status) for r in out] == [("boom", "error"), ("empty", "fail"), ("nope", "fail")]
    assert "kaput" in out[0].evidence["error"]


def test_registry_validation():
    reg = claims.Registry()
    with pytest.raises(ValueError):
        reg.register("x", [])
    with pytest.raises(KeyError):
        reg.register("x", ["c"], axioms=["made-up"])


def test_bad_prime_config_errors():
    r = claims.run_claim("klein-smooth", claims.RunConfig(prime=11))
    assert r.status == "error"


def test_shipped_curves_roundtrip():
    for name, path in claims.shipped_curve_paths().items():
        f = claims.load_curve(path)
        assert f == claims.SHIPPED_CURVES[name]()
    klein = claims.load_curve(claims.shipped_curve_paths()["klein_quartic"])
    assert fm.proportional(klein, fm.klein_quartic()) == 1


def test_curve_save_load(tmp_path):
    p = tmp_path / "k.json"
    claims.save_curve(fm.klein_quartic(), p, "klein")
    assert claims.load_curve(p) == fm.klein_quartic()
    p.write_text('{"degree": 2, "terms": [{"exps": [1, 1], "coeff": [[0, "1"]]}]}')
    with pytest.raises(fm.FormError, match="term 0"):
        claims.load_curve(p)


def test_text_report(results, tmp_path):
    path = tmp_path / "r.txt"
    text = claims.emit_report(results, "text", path)
    assert path.read_text() == text and "16/16 claims passed" in text
    with pytest.raises(ValueError):
        claims.emit_report(results, "xml")


def test_cli_verify(tmp_path, capsys):
    out = tmp_path / "rep.json"
    assert main(["verify", "--claim", "tau-fixed", "--json", str(out)]) == 0
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, claims.report_schema())
    assert main(["verify", "--claim", "missing"]) == 2
    assert "unknown claim" in capsys.readouterr().err


def test_cli_verify_failure_exit(capsys):
    assert main(["verify", "--claim", "klein-smooth", "--prime", "11"]) == 1
    assert "klein-smooth" in capsys.readouterr().err


def test_cli_curve(capsys):
    path = str(claims.shipped_curve_paths()["c_sing"])
    assert main(["curve", "show", path]) == 0
    assert "degree 6" in capsys.readouterr().out
    assert main(["curve", "check", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["certificate"]["verdict"] == "singular_mod_p" and len(out["singular_fixed_points"]) == 7
    assert main(["curve", "check", "/nonexistent.json"]) == 2


def test_cli_mori(tmp_path, capsys):
    out = tmp_path / "m.json"
    assert main(["mori", "sweep", "--g", "3..10", "--n", "0", "--emin", "3..11", "--only-feasible",
                 "--json", str(out)]) == 0
    rows = json.loads(out.read_text())["rows"]
    assert {r["fibers"] for r in rows} == {0, 7}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "k3sym", "mori", "sweep", "--n", "7", "--g", "3..3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "estimate_lemma" in proc.stdout
