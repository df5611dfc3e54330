import json

import pytest

from cascade_thermo import cli
from cascade_thermo.flux import CSV_HEADER


def run(argv):
    return cli.main(argv)


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def test_simulate_cv_thermal(tmp_path):
    out = tmp_path / "flux.csv"
    rc = run(["simulate", "--system", "cv", "--NS", "1.0", "--tmax", "5",
              "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    meta = json.loads((tmp_path / "flux.csv.json").read_text())
    assert meta["n_samples"] == len(lines) - 1
    assert meta["closed_form_residual"] < 1e-10
    assert meta["config"]["system"] == "cv"


def test_simulate_qubit_closed_residual(tmp_path):
    out = tmp_path / "q.csv"
    rc = run(["simulate", "--system", "qubit", "--xi", "1.0", "--xiS", "0.25",
              "--re-rho23", "0.3", "--tmax", "4", "--out", str(out)])
    assert rc == 0
    meta = json.loads((tmp_path / "q.csv.json").read_text())
    assert meta["closed_form_residual"] < 1e-10


def test_simulate_independent_mode(tmp_path):
    out = tmp_path / "ind.csv"
    rc = run(["simulate", "--system", "qubit", "--mode", "independent",
              "--xi", "0.75", "--xiS", "0.2", "--tmax", "3", "--out", str(out)])
    assert rc == 0
    for line in out.read_text().splitlines()[1:]:
        assert float(line.split(",")[3]) == 0.0


def test_simulate_json_format(tmp_path):
    out = tmp_path / "flux.json"
    rc = run(["simulate", "--tmax", "2", "--format", "json", "--out", str(out)])
    assert rc == 0
    payload = json.loads(out.read_text())
    assert "t" in payload and "j_cascade" in payload
    assert payload["metadata"]["config"]["format"] == "json"


def test_config_file_equivalent_to_flags(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# correlated start\n"
        "system = cv\n"
        "NS = 1.0\n"
        "c13 = 0.7\n"
        "c24 = 0.7\n"
        "tmax = 4.0\n"
    )
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert run(["simulate", "--config", str(cfg), "--out", str(a)]) == 0
    assert run(["simulate", "--NS", "1.0", "--c13", "0.7", "--c24", "0.7",
                "--tmax", "4.0", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_flags_override_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("NS = 1.0\ntmax = 2.0\n")
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert run(["simulate", "--config", str(cfg), "--out", str(a)]) == 0
    assert run(["simulate", "--config", str(cfg), "--NS", "2.0", "--out", str(b)]) == 0
    assert a.read_bytes() != b.read_bytes()


def test_unknown_config_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("NS = 1.0\nwibble = 3\n")
    assert run(["simulate", "--config", str(cfg)]) == 2
    err = capsys.readouterr().err
    assert "wibble" in err and ":2" in err


def test_out_of_range_flag_rejected(capsys):
    assert run(["simulate", "--system", "qubit", "--xi", "1.5"]) == 2
    assert "xi" in capsys.readouterr().err


def test_simulate_deterministic(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["simulate", "--c13", "0.4", "--c24", "0.2", "--NS", "1.0", "--tmax", "3"]
    assert run(args + ["--out", str(a)]) == 0
    assert run(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


# ---------------------------------------------------------------------------
# figure presets
# ---------------------------------------------------------------------------

def test_figure_fig3a(tmp_path):
    rc = run(["figure", "fig3a", "--out", str(tmp_path)])
    assert rc == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["fig3a_c+0.00.csv", "fig3a_c+0.70.csv", "fig3a_c-0.70.csv"]
    first = (tmp_path / "fig3a_c+0.70.csv").read_text().splitlines()[1]
    assert float(first.split(",")[4]) == pytest.approx(3.4, abs=1e-9)
    first = (tmp_path / "fig3a_c-0.70.csv").read_text().splitlines()[1]
    assert float(first.split(",")[4]) == pytest.approx(0.6, abs=1e-9)


def test_figure_unknown_id(tmp_path, capsys):
    assert run(["figure", "fig99", "--out", str(tmp_path)]) == 2
    assert "fig2" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_subset(tmp_path, capsys):
    report = tmp_path / "report.json"
    rc = run(["verify", "--criteria", "2,3", "--out", str(report)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "criterion 02 PASS" in out
    assert "criterion 03 PASS" in out
    payload = json.loads(report.read_text())
    assert payload["passed"] == 2
    assert payload["failed"] == []
    assert [r["number"] for r in payload["results"]] == [2, 3]


def test_verify_unknown_criterion(capsys):
    assert run(["verify", "--criteria", "99"]) == 2
    assert "99" in capsys.readouterr().err
