import json
import math

import pytest

from normlab.cli import main

DISC = {"type": "ball", "center": [[0.0, 0.0]], "radius": 1.0}


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def _run(tmp_path, command, config, outdir="out", extra=()):
    cfg = _write(tmp_path, f"{command}.json", config)
    out = tmp_path / outdir
    return main([command, "--config", cfg, "--out", str(out), *extra]), out


def test_sharp_command(tmp_path):
    config = {
        "command": "sharp",
        "function": "z1",
        "dimension": 1,
        "points": [[[0.0, 0.0]], [[0.5, 0.0]]],
    }
    code, out = _run(tmp_path, "sharp", config)
    assert code == 0
    rows = (out / "sharp.csv").read_text().strip().splitlines()
    assert rows[0] == "point,sharp_closed,sharp_fd,rel_dev"
    assert float(rows[1].split(",")[1]) == 1.0
    payload = json.loads((out / "sharp.json").read_text())
    assert payload["rows"][0]["sharp_closed"] == 1.0


def test_sharp_constant_all_zero(tmp_path):
    config = {
        "command": "sharp",
        "function": "3",
        "dimension": 1,
        "points": [[[0.0, 0.0]], [[0.3, 0.4]]],
    }
    code, out = _run(tmp_path, "sharp", config)
    assert code == 0
    payload = json.loads((out / "sharp.json").read_text())
    assert all(r["sharp_closed"] == 0.0 and r["sharp_fd"] == 0.0 for r in payload["rows"])


def test_sharp_product_point(tmp_path):
    config = {
        "command": "sharp",
        "function": "z1*z2",
        "dimension": 2,
        "points": [[[1.0, 0.0], [1.0, 0.0]]],
    }
    code, out = _run(tmp_path, "sharp", config)
    assert code == 0
    row = json.loads((out / "sharp.json").read_text())["rows"][0]
    assert row["sharp_closed"] == pytest.approx(math.sqrt(2) / 2, abs=1e-6)
    assert row["rel_dev"] <= 1e-3


def test_marty_scan_identity(tmp_path):
    config = {
        "command": "marty-scan",
        "function": "z1",
        "dimension": 1,
        "domain": DISC,
        "plan": {
            "shells": [1.0, 0.5, 0.25, 0.125],
            "points_per_shell": 6,
            "directions_per_point": 6,
            "seed": 0,
        },
    }
    code, out = _run(tmp_path, "marty-scan", config)
    assert code == 0
    payload = json.loads((out / "marty_scan.json").read_text())
    assert payload["c_required_lower_bound"] == pytest.approx(1.0, abs=1e-6)
    assert payload["verdict"] == "bounded-consistent"
    trend = (out / "marty_trend.csv").read_text().strip().splitlines()
    assert trend[0] == "shell,max_ratio_lower,min_boundary_distance"
    assert len(trend) == 5


def test_marty_scan_divergent(tmp_path):
    shells = [1.0 / (2 * math.pi * j) for j in (1, 2, 4, 8, 16, 32)]
    config = {
        "command": "marty-scan",
        "function": "sin(1/(1-z1))",
        "dimension": 1,
        "domain": DISC,
        "plan": {"shells": shells, "points_per_shell": 4, "directions_per_point": 4},
    }
    code, out = _run(tmp_path, "marty-scan", config)
    assert code == 0
    payload = json.loads((out / "marty_scan.json").read_text())
    assert payload["verdict"] == "divergent"


def _rescale_config():
    return {
        "command": "rescale",
        "function": "sin(1/(1-z1))",
        "dimension": 1,
        "domain": DISC,
        "sequence": {
            "anchor": [[1.0, 0.0]],
            "inward": [[-1.0, 0.0]],
            "c_p": 1 / (2 * math.pi),
            "a": 1.0,
            "j_start": 2,
            "j_end": 30,
        },
        "R": 1.0,
        "grid_size": 64,
        "tol": 1e-3,
        "seed": 0,
    }


def test_rescale_end_to_end(tmp_path):
    code, out = _run(tmp_path, "rescale", _rescale_config())
    assert code == 0
    payload = json.loads((out / "rescale.json").read_text())
    assert payload["verdict"] == "nonconstant-limit"
    assert payload["sharp_profile"]["passed"] is True
    rows = (out / "rescale_run.csv").read_text().strip().splitlines()
    assert rows[0] == "j,abs_z_j,delta_j,rho_j,ratio,osc_j,cauchy_gap_j"
    assert len(rows) == 30  # header + 29 indices


def test_rescale_hypothesis_flag_exit_code(tmp_path):
    config = _rescale_config()
    config["function"] = "z1"  # rho_j -> 2, not 0
    code, out = _run(tmp_path, "rescale", config)
    assert code == 4
    payload = json.loads((out / "rescale.json").read_text())
    assert "rho-not-decreasing" in payload["hypothesis_flags"]


def test_thm2_command(tmp_path):
    config = {
        "command": "thm2",
        "function": "z1",
        "dimension": 1,
        "domain": DISC,
        "sequence": {
            "anchor": [[1.0, 0.0]],
            "inward": [[-1.0, 0.0]],
            "c_p": 1.0,
            "a": 1.0,
            "c_r": 1.0,
            "b": 2.0,
            "j_start": 2,
            "j_end": 50,
        },
        "R": 1.0,
        "grid_size": 64,
        "tol": 1e-3,
    }
    code, out = _run(tmp_path, "thm2", config)
    assert code == 0
    payload = json.loads((out / "thm2.json").read_text())
    assert payload["verdict"] == "constant-limit"


def test_counterexample_command(tmp_path):
    config = {"command": "counterexample", "n_max": 40, "R": 1.0}
    code, out = _run(tmp_path, "counterexample", config)
    assert code == 0
    payload = json.loads((out / "counterexample.json").read_text())
    assert payload["verdict"] == "constant-limit-with-divergent-ratio"
    assert payload["ratios"][:3] == [1.0, 2.0, 3.0]
    rows = (out / "counterexample.csv").read_text().strip().splitlines()
    assert rows[0] == "n,ratio,sup_dev,bound"
    assert len(rows) == 41


def test_check_config(tmp_path, capsys):
    cfg = _write(tmp_path, "ok.json", {"command": "counterexample", "n_max": 5, "R": 1.0})
    assert main(["check-config", "--config", cfg]) == 0


def test_config_unknown_key_rejected(tmp_path):
    config = {"command": "counterexample", "n_max": 5, "R": 1.0, "bogus": 1}
    code, _ = _run(tmp_path, "counterexample", config)
    assert code == 2


def test_config_missing_field_rejected(tmp_path):
    code, _ = _run(tmp_path, "sharp", {"command": "sharp", "function": "z1"})
    assert code == 2


def test_config_command_mismatch(tmp_path):
    cfg = _write(tmp_path, "mismatch.json", {"command": "counterexample", "n_max": 5, "R": 1.0})
    assert main(["sharp", "--config", cfg, "--out", str(tmp_path / "o")]) == 2


def test_evaluation_error_exit_code(tmp_path):
    config = {
        "command": "sharp",
        "function": "1/z1",
        "dimension": 1,
        "points": [[[0.0, 0.0]]],
    }
    code, _ = _run(tmp_path, "sharp", config)
    assert code == 3


def test_reproducible_outputs(tmp_path):
    config = _rescale_config()
    _, out1 = _run(tmp_path, "rescale", config, outdir="out1")
    _, out2 = _run(tmp_path, "rescale", config, outdir="out2")
    for name in ("rescale.json", "rescale_run.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_format_flag_csv_only(tmp_path):
    config = {"command": "counterexample", "n_max": 5, "R": 1.0}
    code, out = _run(tmp_path, "counterexample", config, extra=("--format", "csv"))
    assert code == 0
    assert (out / "counterexample.csv").exists()
    assert not (out / "counterexample.json").exists()
