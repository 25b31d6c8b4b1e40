import io
import json
import os
from pathlib import Path

import pytest

from rmdeg import __version__
from rmdeg.bounds import VIOLATED
from rmdeg.cli import run
from rmdeg.document import InputError, document_from_forms, load_corpus, parse_document
from rmdeg.report import assemble_report

from _util import CORPUS

GOLDEN = Path(__file__).parent / "golden"
TOP_KEYS = {"invariants", "degree", "bounds", "betti", "rees", "fibers", "warnings", "version"}


def mask_timings(doc):
    doc = json.loads(json.dumps(doc))
    if doc.get("degree"):
        doc["degree"]["timings"] = "masked"
    return doc


def cli(*args):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(args), out, err)
    return code, out.getvalue(), err.getvalue()


def report_json(name, p=None):
    doc = load_corpus(name)
    if p is not None:
        doc = doc.with_overrides(characteristic=p)
    return assemble_report(doc.to_spec(), doc.options).as_json()


@pytest.mark.parametrize("name", CORPUS)
def test_report_schema(name):
    doc = report_json(name)
    assert set(doc) == TOP_KEYS
    assert doc["version"] == __version__
    assert set(doc["degree"]["timings"]) >= {"fiber", "rees", "bounds"}
    assert json.loads(json.dumps(doc)) == doc
    assert not doc["bounds"]["summary"]["violated"]


@pytest.mark.parametrize("name", CORPUS)
def test_golden_reports(name):
    doc = mask_timings(report_json(name))
    path = GOLDEN / f"{name}.json"
    if os.environ.get("RMDEG_REGEN_GOLDEN"):
        path.parent.mkdir(exist_ok=True)
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    assert doc == json.loads(path.read_text())


@pytest.mark.parametrize("name", CORPUS)
def test_characteristics_agree(name):
    a = report_json(name, 0)
    b = report_json(name, 32003)
    for key in ("syzygy_degrees", "jdrank", "analytic_spread", "linear_type", "e_R", "t"):
        assert a["invariants"][key] == b["invariants"][key], key
    assert a["degree"]["value"] == b["degree"]["value"]
    assert a["betti"]["table"] == b["betti"]["table"]
    assert any("characteristic 32003" in w for w in b["warnings"])
    assert not any("characteristic" in w for w in a["warnings"])


def test_text_and_json_verdicts_match():
    doc = load_corpus("mon-b")
    rep = assemble_report(doc.to_spec(), doc.options)
    text = rep.render_text()
    for b in rep.as_json()["bounds"]["degree"]:
        line = next(l for l in text.splitlines() if l.strip().startswith(b["name"] + " "))
        assert f"[{b['verdict']}]" in line


def test_cli_analyze_first_example():
    code, out, _ = cli("analyze", "mon-a", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["degree"]["value"] == 2
    bounds = {b["name"]: b for b in doc["bounds"]["degree"]}
    assert bounds["linear-rank"]["value"] == 2


def test_cli_analyze_second_example_by_path():
    from importlib.resources import files

    path = str(files("rmdeg").joinpath("corpus", "mon-b.json"))
    code, out, _ = cli("analyze", path, "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["degree"]["value"] == 3
    assert doc["bounds"]["summary"]["min_upper"] == 4
    assert doc["bounds"]["summary"]["max_lower"] == 3


def test_cli_parse_error_exit_code():
    code, _, err = cli("analyze", "--forms", "x^2,y*+z", "--vars", "x,y,z")
    assert code == 2
    assert "position" in err


def test_cli_bad_inputs_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli("analyze", str(bad))[0] == 2
    assert cli("analyze", "no-such-example")[0] == 2
    uneven = tmp_path / "uneven.json"
    uneven.write_text(json.dumps({"ring": {"variables": ["x", "y"]}, "map": {"forms": ["x", "y^2"]}}))
    assert cli("analyze", str(uneven))[0] == 2
    assert cli("degree", "mon-a", "--char", "10")[0] == 2


def test_cli_budget_and_sampling_exit_codes():
    code, _, err = cli("analyze", "mon-b", "--budget-pairs", "2")
    assert code == 3 and "stage" in err
    code, _, err = cli("degree", "--forms", "x*y,x*z,y*z", "--vars", "x,y,z", "--char", "7")
    assert code == 4


def test_cli_violation_exit_code(monkeypatch):
    import rmdeg.report as report

    real = report.upper_bounds

    def broken(ctx):
        out = real(ctx)
        out[0].value = 0
        return out

    monkeypatch.setattr(report, "upper_bounds", broken)
    code, out, _ = cli("bounds", "mon-a", "--json")
    assert code == 1
    assert json.loads(out)["bounds"]["degree"][0]["verdict"] == VIOLATED


def test_cli_subcommands():
    code, out, _ = cli("betti", "mon-a")
    assert code == 0 and "total: 3 3 1" in out
    code, out, _ = cli("jdrank", "cremona")
    assert code == 0 and "jdrank: 2" in out and "birational" in out
    code, out, _ = cli("degree", "ci-d3")
    assert code == 0 and "degree: 9" in out
    code, out, _ = cli("rees", "veronese", "--json")
    doc = json.loads(out)
    assert doc["rees"]["special_fiber"] == ["y1^2 - y0*y2"] or doc["rees"]["special_fiber"] == ["-y1^2 + y0*y2"]
    assert doc["fibers"] is None and doc["betti"] is None
    code, out, _ = cli("examples", "list")
    assert code == 0 and len(out.split()) >= 6
    code, out, _ = cli("examples", "show", "mon-a")
    assert json.loads(out)["map"]["forms"] == ["x^2", "y*z", "z^2"]
    assert cli("examples", "show", "nope")[0] == 2


def test_cli_overrides():
    code, out, _ = cli("degree", "mon-b", "--json", "--seed", "3", "--trials", "2", "--char", "32003")
    doc = json.loads(out)
    assert doc["degree"]["trials"] == 2 and doc["degree"]["seed"] == 3
    assert doc["invariants"]["characteristic"] == 32003


def test_input_schema_validation():
    with pytest.raises(InputError):
        parse_document({"ring": {"variables": ["x"]}})
    with pytest.raises(InputError):
        parse_document({"ring": {"variables": ["x"]}, "map": {"forms": ["x"]}, "options": {"bogus": 1}})
    with pytest.raises(InputError):
        parse_document({"ring": {"variables": ["x", "x"]}, "map": {"forms": ["x"]}})
    doc = document_from_forms("x^2, y*z, z^2", "x,y,z")
    assert parse_document(doc.as_json()).as_json() == doc.as_json()


def test_stage_errors_are_tagged():
    doc = document_from_forms("x,y", "x,y,z", 32003)
    with pytest.raises(Exception) as exc:
        assemble_report(doc.to_spec(), doc.options)
    assert exc.value.stage == "fiber"


def test_fast_mode_reports_characteristic_zero_degree():
    code, out, _ = cli("degree", "mon-b", "--json", "--char", "32003")
    assert code == 0
    assert json.loads(out)["degree"]["characteristic_0"] == {"characteristic": 0, "value": 3, "agrees": True}
    code, out, _ = cli("degree", "mon-b", "--json")
    assert "characteristic_0" not in json.loads(out)["degree"]


def test_characteristic_disagreement_is_flagged_not_reconciled(monkeypatch):
    import rmdeg.report as report
    from rmdeg.fiber import DegreeResult

    doc = load_corpus("ci-d2").with_overrides(characteristic=32003)
    rep = assemble_report(doc.to_spec(), doc.options)
    monkeypatch.setattr(report, "degree_via_general_fiber", lambda *a, **k: DegreeResult(7, []))
    cmp = report.compare_with_rationals(rep, load_corpus("ci-d2").to_spec())
    assert cmp == {"characteristic": 0, "value": 7, "agrees": False}
    assert rep.degree == 4
    assert any("differs from degree 7" in w for w in rep.warnings)
