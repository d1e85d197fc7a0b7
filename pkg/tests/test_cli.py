import json

import pytest

from lgk.cli import SUITES, dump_report, main, run_spec, spec_hash, validate_spec
from lgk.errors import SpecError


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


def test_a1_tits_single_check(tmp_path):
    report = run_spec({"group": {"type": "A1"}, "suites": ["tits-welldef"]})
    assert len(report["records"]) == 1
    assert report["records"][0]["status"] == "pass"
    assert report["records"][0]["runtimeMs"] is None


def test_a2_flip_records_c(tmp_path):
    report = run_spec({"group": {"type": "A2"}, "theta": [2, 1], "suites": ["fixedgroup"]})
    assert report["summary"]["fail"] == 0
    rec = {r["id"]: r for r in report["records"]}
    assert rec["fixedgroup/A2-sc/chevalley"]["witness"]["c"] == [2]


def test_unknown_suite_exit_code(tmp_path, capsys):
    path = write(tmp_path, "bad.json", {"group": {"type": "A1"}, "suites": ["nope"]})
    assert main(["verify", "--spec", path]) == 2


def test_unparseable_spec(tmp_path):
    path = write(tmp_path, "bad.json", "{not json")
    assert main(["verify", "--spec", path]) == 2


def test_invalid_type_exit_code(tmp_path):
    path = write(tmp_path, "bad.json", {"group": {"type": "E8"}, "suites": ["tits-welldef"]})
    assert main(["verify", "--spec", path]) == 2


def test_failing_check_exit_code(tmp_path, monkeypatch):
    from lgk import cli
    from lgk.check import Check

    monkeypatch.setitem(cli.SUITE_FUNCS, "fourier", lambda ctx: iter([("x", Check(False, None))]))
    path = write(tmp_path, "s.json", {"suites": ["fourier"]})
    assert main(["verify", "--spec", path, "--out", str(tmp_path / "r.json")]) == 1


def test_byte_identical_reports(tmp_path):
    spec = {"suites": ["splcng", "coinvariants", "fourier"], "bounds": {"count": 5}, "data": {"seed": 9}}
    path = write(tmp_path, "s.json", spec)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--spec", path, "--out", str(a)]) == 0
    assert main(["verify", "--spec", path, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert report["specHash"] == spec_hash(spec)
    assert [r["id"] for r in report["records"]] == sorted(r["id"] for r in report["records"])


def test_seed_changes_report(tmp_path):
    spec = {"suites": ["coinvariants"], "bounds": {"count": 3}}
    assert dump_report(run_spec(spec, 1)) != dump_report(run_spec(spec, 2))


def test_toml_spec(tmp_path):
    text = 'suites = ["fourier"]\n[bounds]\ncount = 2\n'
    path = write(tmp_path, "s.toml", text)
    assert main(["verify", "--spec", path, "--out", str(tmp_path / "r.json")]) == 0


def test_timings_flag():
    report = run_spec({"suites": ["fourier"], "bounds": {"count": 1}}, timings=True)
    assert isinstance(report["records"][0]["runtimeMs"], float)


def test_datum_command(capsys):
    assert main(["datum", "--type", "A1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["roots"]) == 2
    assert main(["datum", "--type", "B", "--rank", "2", "--adjoint", "--dual"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["type"] == "C2" and out["isogeny"] == "sc"
    assert main(["datum", "--type", "E6"]) == 2


def test_suites_command(capsys):
    assert main(["suites"]) == 0
    assert json.loads(capsys.readouterr().out) == list(SUITES)


def test_g2_chevalley_skipped():
    report = run_spec({"group": {"type": "G2"}, "suites": ["chevalley", "inverse-section"]})
    statuses = {r["id"]: r["status"] for r in report["records"]}
    assert statuses["chevalley/G2-sc"] == "skipped"
    assert report["summary"]["fail"] == 0


def test_validate_rejects_extra_keys():
    with pytest.raises(SpecError):
        validate_spec({"suites": ["fourier"], "colour": "blue"})


def test_chiinv_with_gamma():
    spec = {
        "group": {"type": "A1", "isogeny": "adjoint"},
        "gamma": {"order": 2, "weylImages": [1]},
        "coeff": {"N": 24, "symbols": ["x"]},
        "suites": ["chiinv"],
    }
    report = run_spec(spec)
    assert report["summary"] == {"pass": 4, "fail": 0, "skipped": 0}
