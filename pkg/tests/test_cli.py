"""CLI surfaces, report rendering, exit codes and plot data."""

import json

import pytest

from conifold_spectra import product_einstein_example, sphere_quotient_link
from conifold_spectra.cli import main
from conifold_spectra.report import build_report, render_csv, render_json, render_text, report_dict


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_report_builtin_quotient_table(capsys):
    code, out, _ = run_cli(
        capsys, "report", "--builtin", "sphere-quotient", "--n", "4",
        "--quotient", "nontrivial",
    )
    assert code == 0
    assert "AC order >= 4" in out
    assert "CS order >= 2" in out
    assert "linear stability: stable" in out


def test_report_quotient_flag_applies_to_sphere_builtin(capsys):
    code, out, _ = run_cli(
        capsys, "report", "--builtin", "sphere", "--n", "4",
        "--quotient", "nontrivial",
    )
    assert code == 0
    assert "AC order >= 4" in out
    assert "CS order >= 2" in out
    # without the flag the sphere stays the round sphere
    code, out, _ = run_cli(capsys, "report", "--builtin", "sphere", "--n", "4")
    assert code == 0
    assert "AC order = 3" in out


def test_report_builtin_product_weak_order(capsys):
    code, out, _ = run_cli(capsys, "report", "--builtin", "product-einstein-10")
    assert code == 0
    assert "AC: weakly of order 4 (log)" in out
    assert "resonance-dominated: yes" in out


def test_report_trivial_quotient_strict_orders(capsys):
    code, out, _ = run_cli(
        capsys, "report", "--builtin", "sphere-quotient", "--n", "4",
        "--quotient", "trivial",
    )
    assert code == 0
    assert "AC order = 3" in out
    assert "CS order = 1" in out


def test_report_json_round_trip_and_determinism(tmp_path):
    link = sphere_quotient_link(5, True)
    report = build_report(link)
    rendered = render_json(report)
    assert json.loads(rendered) == report_dict(report)
    assert render_json(build_report(link)) == rendered
    assert render_text(build_report(link)) == render_text(report)
    assert render_csv(build_report(link)) == render_csv(report)


def test_report_json_keeps_rationals_as_strings():
    report = build_report(product_einstein_example(10))
    payload = json.loads(render_json(report))
    stability = payload["linear_stability"]
    assert stability["boundary"] == ["-16"]
    orders = {entry["end"]: entry for entry in payload["end_orders"]}
    assert orders["AC"]["order"] == "4"
    assert orders["AC"]["weak_log"] is True


def test_report_max_roots_truncates_tables_not_minima(capsys):
    code, out, _ = run_cli(
        capsys, "report", "--builtin", "sphere-quotient", "--n", "10",
        "--max-roots", "2",
    )
    assert code == 0
    assert "(showing 2)" in out
    assert "xi_plus = 2" in out
    assert "AC order >= 10" in out


def test_report_json_cli(capsys):
    code, out, _ = run_cli(
        capsys, "report", "--builtin", "sphere", "--n", "6", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["link"]["dim_cone"] == 6
    assert payload["resonance_dominated"] is False


def test_report_csv_cli(capsys):
    code, out, _ = run_cli(
        capsys, "report", "--builtin", "sphere", "--n", "4", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "section,key,value"
    assert any(line.startswith("rates,xi_plus,1") for line in lines)


def test_report_from_document(tmp_path, capsys):
    doc = {
        "dim_cone": 6,
        "name": "document link",
        "scalar": {
            "entries": [
                {"value": 0, "multiplicity": 1},
                {"value": 12, "multiplicity": None},
            ],
            "complete_below": 12,
            "mode": "exact",
        },
        "coclosed_one_form": {
            "entries": [{"value": 4, "multiplicity": None}],
            "complete_below": 4,
            "mode": "exact",
        },
        "tt_einstein": {
            "entries": [{"value": 12, "multiplicity": None}],
            "complete_below": 12,
            "mode": "exact",
        },
        "has_killing_fields": True,
        "ends": [{"kind": "AC"}],
    }
    path = tmp_path / "link.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = run_cli(capsys, "report", "--input", str(path))
    assert code == 0
    assert "document link" in out
    assert "AC order = 6" in out  # -xi_minus(kappa=12) = -(-2-4) = 6


def test_exit_code_insufficient_spectrum(tmp_path, capsys):
    doc = json.loads(
        json.dumps(
            {
                "dim_cone": 6,
                "name": "shallow",
                "scalar": {
                    "entries": [
                        {"value": 0, "multiplicity": 1},
                        {"value": 12, "multiplicity": None},
                    ],
                    "complete_below": 12,
                    "mode": "exact",
                },
                "coclosed_one_form": {
                    "entries": [{"value": 4, "multiplicity": None}],
                    "complete_below": 4,
                    "mode": "exact",
                },
                "tt_einstein": {
                    "entries": [{"value": 12, "multiplicity": None}],
                    "complete_below": -5,
                    "mode": "exact",
                },
                "has_killing_fields": True,
                "ends": [{"kind": "AC"}],
            }
        )
    )
    path = tmp_path / "shallow.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run_cli(capsys, "report", "--input", str(path))
    assert code == 2
    assert "insufficient" in err


def test_exit_code_schema_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"dim_cone": 4, "unexpected": 1}', encoding="utf-8")
    code, _, err = run_cli(capsys, "report", "--input", str(path))
    assert code == 3
    assert "bad input" in err
    path.write_text("not json", encoding="utf-8")
    code, _, _ = run_cli(capsys, "report", "--input", str(path))
    assert code == 3


def test_plot_data_rows(capsys):
    code, out, _ = run_cli(
        capsys, "plot-data", "--n", "4", "--nu-min", "-2", "--nu-max", "0",
        "--step", "1",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "nu,re_xi_plus,re_xi_minus,im_xi_plus"
    assert lines[1] == "-2,-1,-1,1"
    assert lines[2] == "-1,-1,-1,0"
    assert lines[3] == "0,0,-2,0"


def test_plot_data_critical_point_merge(capsys):
    # at the critical value both real parts agree
    code, out, _ = run_cli(
        capsys, "plot-data", "--n", "6", "--nu-min", "-4", "--nu-max", "-4",
        "--step", "1/2",
    )
    assert code == 0
    assert out.strip().splitlines()[1] == "-4,-2,-2,0"


def test_plot_data_fractional_step(capsys):
    code, out, _ = run_cli(
        capsys, "plot-data", "--n", "4", "--nu-min=-5/4", "--nu-max=-3/4",
        "--step", "1/4",
    )
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert rows[0].startswith("-1.25,")
    assert rows[1] == "-1,-1,-1,0"
    assert rows[2] == "-0.75,-0.5,-1.5,0"


def test_verify_subcommands_pass(capsys):
    for suite in ("ode", "identities", "cheeger-tian"):
        code, out, _ = run_cli(capsys, "verify", suite)
        assert code == 0, (suite, out)
    code, out, _ = run_cli(capsys, "verify", "flat", "--max-degree", "2")
    assert code == 0
    assert "case (vii)" in out


def test_console_entry_point_installed():
    import shutil

    exe = shutil.which("conifold-spectra")
    if exe is None:
        pytest.skip("entry point not on PATH in this environment")
    import subprocess

    proc = subprocess.run(
        [exe, "plot-data", "--n", "4", "--nu-min", "0", "--nu-max", "0", "--step", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "0,0,-2,0" in proc.stdout
