import json

import pytest

from dtsevent.cli import main
from dtsevent.fol import fol_equivalent, parse_fol
from dtsevent.report import RunReport, run_discourse


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_mary_did_too(capsys, data):
    code, out, _ = run(capsys, "resolve", data / "mary-did-too.txt")
    assert code == 0
    assert out.count("reading ") == 1
    assert "agent(e'', m)" in out


def test_hat_structured(capsys, data):
    code, out, _ = run(capsys, "resolve", data / "hat.txt", "--format", "structured")
    assert code == 0
    report = RunReport.from_json(json.loads(out))
    assert [r.label for r in report.readings] == ["strict", "sloppy"]
    assert report.goals[0].kind == "vp"


def test_infelicitous_exits_2(capsys, data):
    code, _, err = run(capsys, "resolve", data / "infelicitous.txt")
    assert code == 2 and "NoResolution at @_1" in err


def test_unknown_word_has_location(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("John left.\nMary sings.\n")
    code, _, err = run(capsys, "resolve", p)
    assert code == 1 and "bad.txt:2" in err


def test_export_fol(capsys, data):
    code, out, _ = run(capsys, "export-fol", data / "canberra.txt")
    assert code == 0 and "surprising(e3)" in out and "interpretation" not in out


def test_multiple_files(capsys, data):
    code, out, _ = run(capsys, "export-fol", data / "passive.txt", data / "active.txt", "--format", "structured")
    assert code == 0 and len(json.loads(out)) == 2


def test_max_readings(capsys, data):
    code, out, _ = run(capsys, "resolve", data / "hat.txt", "--max-readings", "1")
    assert out.count("reading ") == 1


def test_trace_goes_to_stderr(capsys, data):
    code, out, err = run(capsys, "resolve", data / "mary-did-too.txt", "--trace")
    assert "goal @_1" in err


def test_check_with_and_without_subtyping(capsys, data):
    code, out, _ = run(capsys, "check", data / "replace.dts")
    assert code == 0 and "ok:" in out and "type: event" in out
    code, _, err = run(capsys, "check", "--no-subtyping", data / "replace.dts")
    assert code == 1 and "Mismatch" in err


def test_check_declare(capsys, tmp_path):
    p = tmp_path / "t.dts"
    p.write_text("(declare enter (-> entity type))\n(sigma (x entity) (enter x))\n")
    code, out, _ = run(capsys, "check", p, "--format", "structured")
    assert code == 0
    assert json.loads(out)["results"][1]["type"] == "type"


def test_check_parse_error(capsys, tmp_path):
    p = tmp_path / "t.dts"
    p.write_text("(lambda x")
    code, _, err = run(capsys, "check", p)
    assert code == 1


def test_subtype(capsys):
    code, out, _ = run(capsys, "subtype", "(Evt_AP j m)", "(Evt_A j)")
    assert code == 0 and out.startswith("witness:")
    code, out, _ = run(capsys, "subtype", "(Evt_A j)", "(Evt_AP j m)")
    assert code == 0 and out.startswith("absent")


def test_custom_lexicon(capsys, tmp_path):
    lexfile = tmp_path / "tiny.lex"
    lexfile.write_text("Sue name s female\nTom name t male\nleft verb left\n")
    disc = tmp_path / "d.txt"
    disc.write_text("Tom left. Sue did too.")
    code, out, _ = run(capsys, "export-fol", disc, "--lexicon", lexfile)
    assert code == 0 and "agent(e'', s)" in out


def test_report_round_trip(lex, data):
    for name in ("mary-did-too", "hat", "passive", "herself", "canberra"):
        report = run_discourse(lex, (data / f"{name}.txt").read_text(), name)
        again = RunReport.loads(report.dumps())
        assert again == report
        assert again.dumps() == report.dumps()


def test_report_fol_matches_reference(lex, data):
    report = run_discourse(lex, (data / "hat.txt").read_text())
    sloppy = parse_fol("∃x. hat(x) ∧ owner(x, j) ∧ ∃e. like(e) ∧ agent(e, j) ∧ patient(e, x) ∧ "
                       "∃y. hat(y) ∧ owner(y, f) ∧ ∃e'. like(e') ∧ agent(e', f) ∧ patient(e', y)")
    assert fol_equivalent(report.readings[1].fol, sloppy)


def test_no_command(capsys):
    with pytest.raises(SystemExit):
        main([])
