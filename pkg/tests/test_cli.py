import subprocess
import sys

import pytest

from maxmul import cli, scenarios


def run_cli(args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "maxmul", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


def test_unknown_key_exits_2():
    out = run_cli(["norm", "--set", "bogus=1"])
    assert out.returncode == 2
    assert "unknown key" in out.stderr


def test_bad_config_file_exits_2(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("this line has no equals\n")
    out = run_cli(["norm", "--config", str(cfg)])
    assert out.returncode == 2
    assert "line 1" in out.stderr


def test_missing_config_file_exits_2():
    out = run_cli(["norm", "--config", "/nonexistent/x.cfg"])
    assert out.returncode == 2


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# comment\nN=128\n")
    out = run_cli(["norm", "--config", str(cfg), "--set", "L=4.0"])
    assert out.returncode == 0
    assert "norm,1,128,4," in out.stdout


def test_norm_scenario_two_level_value():
    out = run_cli(["norm"])
    assert out.returncode == 0
    row = out.stdout.strip().splitlines()[1].split(",")
    # columns: scenario,n,N,L,func,"exp0,exp1...",tol,norm,modular (csv-quoted)
    assert abs(float(row[-2]) - 1.4915578672621421) < 1e-6


def test_range_table_row():
    out = run_cli(["range-table", "--set", "rule=absolute"])
    assert out.returncode == 0
    lines = out.stdout.strip().splitlines()
    assert lines[1].startswith("range-table,absolute,2,0.75,1.5")
    assert ",true,1.5,3," in lines[1]


def test_out_file(tmp_path):
    target = tmp_path / "r.csv"
    out = run_cli(["range-table", "--out", str(target)])
    assert out.returncode == 0
    assert out.stdout == ""
    assert target.read_text().startswith("scenario,rule")


def test_plot_writes_figure(tmp_path):
    figdir = tmp_path / "figs"
    out = run_cli(["range-table", "--plot", str(figdir), "--out", str(tmp_path / "r.csv")])
    assert out.returncode == 0
    assert (figdir / "range-table.png").exists()


def test_verify_passes_and_is_deterministic():
    a = run_cli(["verify"])
    b = run_cli(["verify"])
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert all(line.endswith("true") for line in a.stdout.strip().splitlines()[1:])


def test_verify_failure_exits_3(monkeypatch, capsys):
    def fake_checks():
        return [("doomed", 1.0, 0.5)]

    monkeypatch.setattr(scenarios, "_verify_checks", fake_checks)
    rc = cli.main(["verify"])
    captured = capsys.readouterr()
    assert rc == 3
    assert "doomed" in captured.err


def test_decay_fit_csv_schema():
    out = run_cli(["decay-fit", "--set", "measure=circle:r=1", "--set", "ximax=128",
                   "--set", "quantities=pointwise"])
    assert out.returncode == 0
    header = out.stdout.splitlines()[0].split(",")
    assert header == ["scenario", "measure", "n", "ximin", "ximax", "quantity", "mode",
                      "per_octave", "alpha", "C", "residual", "points", "dropped_octaves"]


def test_invalid_quantity_exits_2():
    out = run_cli(["decay-fit", "--set", "quantities=cubes"])
    assert out.returncode == 2


def test_dyadic_l2_small():
    out = run_cli(["dyadic-l2", "--set", "N=128", "--set", "jmax=3",
                   "--set", "func=gaussian:width=0.03125"])
    assert out.returncode == 0
    rows = out.stdout.strip().splitlines()[1:]
    assert len(rows) == 3
    slope = float(rows[0].split(",")[-1])
    assert slope < 0


def test_maximal_ratio_columns():
    out = run_cli(["maximal-ratio", "--set", "widths=0.5,1.0"])
    assert out.returncode == 0
    rows = out.stdout.strip().splitlines()[1:]
    assert len(rows) == 2
    for row in rows:
        ratio = float(row.split(",")[-1])
        assert ratio > 0


def test_parse_function_errors():
    with pytest.raises(scenarios.ConfigError):
        scenarios.parse_function("mystery", 1)
    with pytest.raises(scenarios.ConfigError):
        scenarios.parse_function("gaussian:width=-1", 1)
    with pytest.raises(scenarios.ConfigError):
        scenarios.parse_function("twostep", 2)


def test_run_scenario_unknown():
    with pytest.raises(scenarios.ConfigError):
        scenarios.run_scenario("mystery", {})


def test_invalid_grid_value_exits_2():
    out = run_cli(["norm", "--set", "N=100"])
    assert out.returncode == 2
    assert "power of two" in out.stderr
