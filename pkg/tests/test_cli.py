"""Campaign plumbing and the command line."""

import json
import time

import pytest

from elsvkit import campaigns
from elsvkit.campaigns import (
    CSV_HEADER,
    CampaignConfig,
    CheckReport,
    CheckRow,
    reports_to_json,
    rows_to_csv,
    run_check,
)
from elsvkit.cli import main
from elsvkit.errors import ParameterError


def _toy_report(verdict="exact"):
    rep = CheckReport("elsv", 256)
    rep.rows.append(CheckRow("elsv", "1", "1", "1", "2", "1/12", "1/12",
                             verdict, 0.1))
    return rep


def test_csv_emission_shapes():
    assert rows_to_csv([]) == CSV_HEADER + "\n"
    text = rows_to_csv([_toy_report()])
    lines = text.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 2
    assert lines[1].startswith("elsv,1,1,1,2,1/12,1/12,exact,")


def test_json_mirrors_rows():
    blob = reports_to_json([_toy_report()])
    back = json.loads(json.dumps(blob))
    assert back["ok"] is True
    row = back["reports"][0]["rows"][0]
    assert row["lhs"] == "1/12" and row["verdict"] == "exact"


def test_report_failure_semantics():
    good = _toy_report()
    assert good.ok and good.passed == 1
    bad = _toy_report("fail")
    assert not bad.ok and bad.failed == 1
    empty = CheckReport("elsv", 256)
    assert not empty.ok  # a campaign with no rows proves nothing


def test_config_round_trip():
    cfg = CampaignConfig(check="jpt", g_max=1, d_max=4, r_list=(2, 3),
                         precision=192, format="json", fail_fast=True)
    assert CampaignConfig.parse(cfg.dump()) == cfg
    assert CampaignConfig.parse(CampaignConfig().dump()) == CampaignConfig()


def test_config_rejects_garbage():
    with pytest.raises(ParameterError):
        CampaignConfig.parse("no_equals_sign\n")
    with pytest.raises(ParameterError):
        CampaignConfig.parse("unknown_key=1\n")
    with pytest.raises(ParameterError):
        CampaignConfig.parse("format=xml\n")


def test_run_check_rejects_unknown_id():
    with pytest.raises(ParameterError):
        run_check("nonsense")
    with pytest.raises(ParameterError):
        run_check("mumford", d_max=4)  # range knob this check does not take


def test_fail_fast_stops_after_first_bad_row(monkeypatch):
    calls = []

    def fake_check(precision=None, extended=False, fail_fast=False):
        def body(col):
            def bad(t0):
                calls.append("bad")
                return CheckRow("x", "-", "-", "-", "-", "1", "2", "fail", 0.0)

            def good(t0):
                calls.append("good")
                return CheckRow("x", "-", "-", "-", "-", "1", "1", "exact", 0.0)

            col.run(bad, "x")
            col.run(good, "x")
        return campaigns._campaign("x", precision, fail_fast, body)

    monkeypatch.setitem(campaigns._CHECKS, "x", fake_check)
    rep = fake_check(fail_fast=True)
    assert calls == ["bad"] and len(rep.rows) == 1
    calls.clear()
    rep = fake_check(fail_fast=False)
    assert calls == ["bad", "good"] and len(rep.rows) == 2


def test_errors_are_captured_per_row():
    def body(col):
        def boom(t0):
            raise ParameterError("synthetic")
        col.run(boom, "x", mu=(2, 1))
    rep = campaigns._campaign("x", None, False, body)
    assert rep.rows[0].verdict == "error"
    assert "synthetic" in rep.rows[0].rhs
    assert rep.rows[0].mu == "2+1"
    assert not rep.ok


def test_rows_are_byte_stable_modulo_seconds():
    def strip_seconds(text):
        return ["," .join(line.split(",")[:-1]) for line in text.splitlines()]
    a = rows_to_csv([run_check("mumford")])
    b = rows_to_csv([run_check("mumford")])
    assert strip_seconds(a) == strip_seconds(b)


def test_cli_intersect(capsys):
    assert main(["intersect", "1", "1"]) == 0
    assert capsys.readouterr().out.strip() == "1/24"
    assert main(["intersect", "2", "", "--kappa", "1,1,1"]) == 0
    assert capsys.readouterr().out.strip() == "43/2880"


def test_cli_hurwitz(capsys):
    assert main(["hurwitz", "simple", "1", "2"]) == 0
    assert capsys.readouterr().out.strip() == "1/2"
    assert main(["hurwitz", "orbifold", "1", "2", "--r", "2"]) == 0
    assert capsys.readouterr().out.strip() == "1/2"


def test_cli_hurwitz_bad_flavor_exits_2(capsys):
    with pytest.raises(SystemExit):
        main(["hurwitz", "weird", "1", "2"])


def test_cli_chiodo(capsys):
    assert main(["chiodo", "1", "2", "2", "2", "1,1"]) == 0
    out = capsys.readouterr().out.strip().split("\n")
    assert out[0] == "g,r,s,mu,value"
    assert out[1] == "1,2,2,2,1/16"
    assert out[2] == "1,2,2,1+1,1/48"


def test_cli_tr(capsys):
    assert main(["tr", "lambert", "1", "1", "2", "--precision", "192"]) == 0
    out = capsys.readouterr().out.strip().split("\n")
    assert out[0] == "curve,g,mu,N,closed_form,abs_diff"
    assert any(line.startswith("lambert,1,2,") and ",1/2," in line for line in out)


def test_cli_verify_single_check(capsys, tmp_path):
    out = tmp_path / "rows.csv"
    assert main(["verify", "mumford", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.splitlines()[0] == CSV_HEADER
    assert "mumford,1,1,1,1,-1/24,-1/24,exact" in text


def test_cli_verify_json(capsys):
    assert main(["verify", "table", "--format", "json"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["ok"] is True
    assert blob["reports"][0]["check"] == "table"


def test_cli_verify_unknown_check(capsys):
    assert main(["verify", "nonsense"]) == 2


def test_cli_verify_failure_exit_code(monkeypatch, capsys):
    def failing(precision=None, extended=False, fail_fast=False):
        rep = CheckReport("mumford", precision or 256)
        rep.rows.append(CheckRow("mumford", "-", "-", "-", "-", "1", "2",
                                 "fail", 0.0))
        return rep

    monkeypatch.setitem(campaigns._CHECKS, "mumford", failing)
    assert main(["verify", "mumford"]) == 1


def test_cli_verify_config_file(tmp_path, capsys):
    cfg = tmp_path / "campaign.cfg"
    cfg.write_text("check=mumford\nformat=csv\n")
    assert main(["verify", "--config", str(cfg)]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == CSV_HEADER


def test_cli_cache_admin(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ELSVKIT_CACHE_DIR", str(tmp_path))
    assert main(["intersect", "2", "4"]) == 0
    capsys.readouterr()
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    assert main(["cache", "stats"]) == 0
    out = capsys.readouterr().out
    assert "psi_entries" in out and str(tmp_path) in out
    assert main(["cache", "clear"]) == 0
    assert list(tmp_path.iterdir()) == []
