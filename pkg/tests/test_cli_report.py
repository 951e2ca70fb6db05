import csv
import io
import json
import math
import shutil
import subprocess
import sys

import pytest

from clapeyron import __version__
from clapeyron.cli_report import (
    EXIT_CONFIG,
    EXIT_FAIL,
    EXIT_PASS,
    SCENARIOS,
    ScenarioConfig,
    main,
    resolve,
    run,
    sweep,
    write_report,
)
from clapeyron.errors import ConfigError

VERIFIER_OPERATIONS = [
    "example1_profile",
    "example1_energy",
    "linear_exterior",
    "solve_interface_conditions",
    "shoot_rODE",
    "pohozaev_shoot",
    "bar_1d",
    "verify_gct",
    "verify_genclap",
    "verify_phom",
    "verify_ppst_and_pi",
    "verify_linear_forms",
    "verify_incompressible",
    "j_integral",
    "l_integral",
    "m_integral",
    "verify_pohozaev",
    "uniqueness_verdict",
    "energy_increment",
    "qw_probe",
    "build_shock",
    "shock_pstar",
    "verify_energy_balance",
    "verify_dynamic_clapeyron",
    "delta_e_linear",
    "delta_e_gct",
    "griffith_discrepancy",
    "rice_drucker_linear",
    "check_polar_vanishing",
    "noether_defect",
    "check_graph_orthogonality",
    "jump_pstar",
    "euler_residuals",
]

REPORT_KEYS = ["version", "scenario", "params", "identities", "runtime_ms", "pass"]
IDENTITY_KEYS = ["name", "lhs", "rhs", "abs_err", "rel_err", "tol", "pass", "paper_anchor"]


def cfg(name, **params):
    return ScenarioConfig(name, params, None, None, None, None, True)


def test_registry_completeness():
    assert len(SCENARIOS) >= 18
    covered = {op for s in SCENARIOS.values() for op in s.operations}
    missing = [op for op in VERIFIER_OPERATIONS if op not in covered]
    assert not missing, missing
    for s in SCENARIOS.values():
        assert s.anchor and s.description


def test_list_command(capsys):
    assert main(["list"]) == EXIT_PASS
    out = capsys.readouterr().out.splitlines()
    assert len(out) == len(SCENARIOS)
    assert any(line.startswith("example1-gct") for line in out)


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_every_scenario_passes_with_defaults(name, tmp_path):
    rep = run(ScenarioConfig(name, {}, None, None, None, tmp_path, True))
    assert rep.exit_code == EXIT_PASS, (rep.error, [(r.name, r.rel_err) for r in rep.identities if not r.passed])
    assert rep.passed and rep.identities


def test_example1_report_schema_and_values(capsys):
    assert main(["run", "example1-gct", "--reproducible"]) == EXIT_PASS
    text = capsys.readouterr().out
    data = json.loads(text)
    assert list(data) == REPORT_KEYS
    assert data["version"] == __version__ and data["runtime_ms"] == 0
    for ident in data["identities"]:
        assert list(ident) == IDENTITY_KEYS
    gct = data["identities"][0]
    assert gct["name"] == "gct"
    assert gct["lhs"] == pytest.approx(4 * math.pi / 27, rel=1e-8)
    assert gct["rhs"] == pytest.approx(4 * math.pi / 27, rel=1e-8)


def test_floats_round_trip(capsys):
    main(["run", "void-linear", "--reproducible"])
    text = capsys.readouterr().out
    data = json.loads(text)
    lhs = data["identities"][0]["lhs"]
    assert ("%.17g" % lhs) in text


def test_alias_resolves():
    assert resolve("gct-example1").name == "example1-gct"


def test_byte_identical_reports(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", "pohozaev", "--reproducible", "--out", str(a)]) == EXIT_PASS
    assert main(["run", "pohozaev", "--reproducible", "--out", str(b)]) == EXIT_PASS
    assert a.read_bytes() == b.read_bytes()


def test_shock_energy_balance_default_residual_zero():
    rep = run(cfg("shock-energy-balance"))
    assert rep.passed
    assert rep.identities[0].abs_err <= 1e-12


def test_unknown_scenario(capsys):
    assert main(["run", "foo"]) == EXIT_CONFIG
    err = capsys.readouterr().err
    assert "foo" in err and "example1-gct" in err and "void-linear" in err
    with pytest.raises(ConfigError):
        resolve("foo")


def test_unknown_parameter_and_bad_values(capsys):
    assert main(["run", "void-linear", "--set", "zeta=1"]) == EXIT_CONFIG
    assert main(["run", "void-linear", "--set", "p=abc"]) == EXIT_CONFIG
    assert main(["run", "void-linear", "--set", "n=2.5"]) == EXIT_CONFIG
    assert main(["run", "void-linear", "--set", "novalue"]) == EXIT_CONFIG


def test_construction_error_still_writes_report(tmp_path):
    out = tmp_path / "r.json"
    code = main(["run", "void-linear", "--set", "lam=-5", "--out", str(out), "--reproducible"])
    assert code == EXIT_CONFIG
    data = json.loads(out.read_text())
    assert data["pass"] is False and data["identities"] == []


def test_tolerance_override_fails():
    rep = run(ScenarioConfig("example1-gct", {"n": 2}, None, 1e-12, None, None, True))
    assert rep.exit_code == EXIT_FAIL and not rep.passed


def test_config_file_overridden_by_flags(tmp_path, capsys):
    conf = tmp_path / "c.json"
    conf.write_text(json.dumps({"p": 2.0, "n": 2}))
    main(["run", "void-linear", "--config", str(conf), "--set", "p=1", "--reproducible"])
    data = json.loads(capsys.readouterr().out)
    assert data["params"]["p"] == 1.0 and data["params"]["n"] == 2


def test_tsv_exports(tmp_path):
    assert main(["run", "example1-gct", "--tsv", str(tmp_path), "--reproducible", "--out", str(tmp_path / "r.json")]) == 0
    lines = (tmp_path / "example1_profile.tsv").read_text().splitlines()
    assert lines[0].split("\t") == ["r", "eta", "eta_prime", "W", "P_rr", "Pstar_rr"]


def _read_csv(text):
    return list(csv.reader(io.StringIO(text)))


def test_sweep_void_quadratic_scaling(capsys):
    assert main(["sweep", "void-linear", "--param", "p", "--values", "0.5,1,2"]) == EXIT_PASS
    rows = _read_csv(capsys.readouterr().out)
    assert rows[0] == ["value", "lhs", "rhs", "rel_err", "pass"]
    vals = [float(r[1]) for r in rows[1:]]
    assert vals[1] / vals[0] == pytest.approx(4.0, rel=1e-8)
    assert vals[2] / vals[0] == pytest.approx(16.0, rel=1e-8)
    assert all(r[4] == "true" for r in rows[1:])


def test_sweep_example1_amplitude_squared():
    rows, code = sweep(cfg("example1-gct"), "a", [1.0, 2.0, 3.0], jobs=2)
    assert code == EXIT_PASS
    assert [r[0] for r in rows] == [1.0, 2.0, 3.0]
    assert rows[1][1] / rows[0][1] == pytest.approx(4.0, rel=1e-8)
    assert rows[2][1] / rows[0][1] == pytest.approx(9.0, rel=1e-8)


def test_sweep_empty_values(capsys):
    assert main(["sweep", "void-linear", "--param", "p", "--values", ""]) == EXIT_PASS
    assert capsys.readouterr().out == "value,lhs,rhs,rel_err,pass\n"


def test_sweep_unknown_parameter():
    with pytest.raises(ConfigError):
        sweep(cfg("void-linear"), "zeta", [1.0])


def test_write_report_matches_to_dict(tmp_path):
    rep = run(cfg("shock-pstar"))
    text = write_report(rep, tmp_path / "x.json")
    assert json.loads(text) == json.loads((tmp_path / "x.json").read_text())
    assert json.loads(text)["identities"][0]["lhs"] == pytest.approx(0.25, abs=1e-15)


@pytest.mark.skipif(shutil.which("clapeyron") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["clapeyron", "run", "shock-pstar", "--reproducible"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["pass"] is True


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "clapeyron.cli_report", "run", "foo"], capture_output=True, text=True)
    assert proc.returncode == EXIT_CONFIG
