"""CLI behavior: flags, schemas, exit codes, reproducibility."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from qcloner.cli import RunConfig, main, write_table
from qcloner.scenarios import ghz_pipeline

SWEEP_HEADER = "alpha,c0,c12,c13,c14,c23,c24,c34"
GHZ_HEADER = "alpha,curve_a,curve_b,curve_c,curve_d,curve_e,p_first_plus,p_second_plus"
CKW_HEADER = "alpha,stage,qubit,tau,sum_c2,s"


def run(*argv) -> int:
    return main(list(argv))


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(command="nope")
    with pytest.raises(ValueError):
        RunConfig(command="ghz", grid_points=1)
    with pytest.raises(ValueError):
        RunConfig(command="verify", tolerance=0.0)
    with pytest.raises(ValueError):
        RunConfig(command="ghz", format="xml")


def test_missing_subcommand_exits_one(capsys):
    with pytest.raises(SystemExit) as info:
        run()
    assert info.value.code == 1
    assert "usage" in capsys.readouterr().err


def test_unknown_flag_exits_one(capsys):
    with pytest.raises(SystemExit) as info:
        run("ghz", "--alfa", "0.5")
    assert info.value.code == 1


def test_missing_out_exits_one():
    with pytest.raises(SystemExit) as info:
        run("bipartite-sweep", "--grid", "3")
    assert info.value.code == 1


def test_alpha_out_of_range_exits_one(tmp_path, capsys):
    code = run("ghz", "--alpha", "1.5", "--out", str(tmp_path / "x.csv"))
    assert code == 1
    assert "outside [0, 1]" in capsys.readouterr().err


def test_grid_too_small_exits_one(tmp_path, capsys):
    code = run("bipartite-sweep", "--grid", "1", "--out", str(tmp_path / "x.csv"))
    assert code == 1


def test_unwritable_path_exits_one(tmp_path, capsys):
    code = run("ghz", "--grid", "3", "--out", str(tmp_path / "no-such-dir" / "x.csv"))
    assert code == 1
    assert "no-such-dir" in capsys.readouterr().err


def test_sweep_csv_schema_and_row_count(tmp_path):
    out = tmp_path / "sweep.csv"
    assert run("bipartite-sweep", "--grid", "4", "--out", str(out)) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == SWEEP_HEADER
    assert len(lines) == 1 + 4 * 4
    assert out.read_text().endswith("\n")
    first = lines[1].split(",")
    assert len(first) == 8
    float(first[2])  # every cell parses as a real number


def test_ghz_csv_schema(tmp_path):
    out = tmp_path / "ghz.csv"
    assert run("ghz", "--grid", "5", "--out", str(out)) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == GHZ_HEADER
    assert len(lines) == 1 + 5


def test_ghz_single_alpha_row(tmp_path):
    out = tmp_path / "one.csv"
    assert run("ghz", "--alpha", "0.5", "--out", str(out)) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("0.5,")


def test_ckw_csv_schema(tmp_path):
    out = tmp_path / "ckw.csv"
    assert run("ckw", "--grid", "3", "--out", str(out)) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == CKW_HEADER
    # one row per alpha x stage x qubit
    assert len(lines) == 1 + 3 * 2 * 5
    stages = {line.split(",")[1] for line in lines[1:]}
    assert stages == {"after_first", "after_second"}


def test_values_carry_twelve_significant_digits(tmp_path):
    out = tmp_path / "ghz.csv"
    run("ghz", "--grid", "3", "--out", str(out))
    row = out.read_text().splitlines()[2].split(",")
    assert row[0] == "0.5"
    # curve_c at alpha = 0.5 is 2/3, printed to 12 significant digits
    assert row[3] == "0.666666666667"


def test_json_mirrors_report_fields(tmp_path):
    out = tmp_path / "ghz.json"
    assert run("ghz", "--grid", "3", "--format", "json", "--out", str(out)) == 0
    payload = json.loads(out.read_text())
    assert set(payload) == {"reports"}
    assert len(payload["reports"]) == 3
    report = payload["reports"][0]
    assert set(report) >= {"alpha", "curve_a", "curve_e", "p_first_plus", "ckw_after_first"}
    assert report["ckw_after_first"][0].keys() == {
        "qubit", "tau", "sum_sq_concurrence", "saturation"
    }


def test_sweep_json_structure(tmp_path):
    out = tmp_path / "sweep.json"
    assert run("bipartite-sweep", "--grid", "3", "--format", "json", "--out", str(out)) == 0
    payload = json.loads(out.read_text())
    assert set(payload) == {"family", "alpha_grid", "c0_grid", "concurrence_surfaces"}
    assert set(payload["concurrence_surfaces"]) == {"c12", "c13", "c14", "c23", "c24", "c34"}


def test_ckw_json_structure(tmp_path):
    out = tmp_path / "ckw.json"
    assert run("ckw", "--grid", "3", "--format", "json", "--out", str(out)) == 0
    payload = json.loads(out.read_text())
    assert set(payload) == {"points"}
    assert len(payload["points"][0]["after_second"]) == 5


@pytest.mark.parametrize(
    "argv",
    [
        ("bipartite-sweep", "--grid", "4"),
        ("bipartite-sweep", "--grid", "4", "--family", "psi-minus"),
        ("bipartite-sweep", "--grid", "3", "--format", "json"),
        ("ghz", "--grid", "4"),
        ("ckw", "--grid", "3"),
        ("ckw", "--grid", "3", "--format", "json"),
    ],
)
def test_reruns_are_byte_identical(tmp_path, argv):
    first = tmp_path / "first.out"
    second = tmp_path / "second.out"
    assert run(*argv, "--out", str(first)) == 0
    assert run(*argv, "--out", str(second)) == 0
    assert first.read_bytes() == second.read_bytes()


def test_plot_writes_png_next_to_output(tmp_path):
    out = tmp_path / "ghz.csv"
    assert run("ghz", "--grid", "3", "--out", str(out), "--plot") == 0
    png = tmp_path / "ghz.png"
    assert png.exists()
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_sweep_and_ckw_plots_render(tmp_path):
    assert run("bipartite-sweep", "--grid", "3", "--out", str(tmp_path / "s.csv"), "--plot") == 0
    assert run("ckw", "--grid", "3", "--out", str(tmp_path / "c.csv"), "--plot") == 0
    assert (tmp_path / "s.png").exists()
    assert (tmp_path / "c.png").exists()


def test_verify_prints_max_deviation_and_passes(capsys):
    assert run("verify", "--samples", "2", "--seed", "7", "--tol", "1e-10") == 0
    line = capsys.readouterr().out
    assert "max deviation" in line
    assert "PASS" in line


def test_verify_failure_exits_two(capsys):
    assert run("verify", "--samples", "2", "--seed", "7", "--tol", "1e-18") == 2
    assert "FAIL" in capsys.readouterr().out


def test_verify_rejects_zero_samples(capsys):
    assert run("verify", "--samples", "0", "--seed", "1", "--tol", "1e-10") == 1


def test_write_table_rejects_unknown_path(tmp_path):
    reports = [ghz_pipeline(0.5)]
    with pytest.raises(OSError):
        write_table(reports, "csv", str(tmp_path / "missing" / "x.csv"))


def test_module_entry_point_smoke(tmp_path):
    out = tmp_path / "smoke.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "qcloner", "ghz", "--grid", "3", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert out.read_text().splitlines()[0] == GHZ_HEADER
