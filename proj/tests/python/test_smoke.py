import math
import os
import subprocess

import pytest

import sextic


def test_version():
    assert sextic.__version__ == "0.1.0"


def test_golden_energy_series():
    assert sextic.energy_series(1, 5) == [
        "3/1", "12/1", "-144/1", "4176/1", "-172800/1", "8892288/1",
    ]


def test_golden_moment_series():
    assert sextic.moment_series(0, 5) == [
        "1/2", "-3/1", "48/1", "-1188/1", "39168/1", "-1604448/1",
    ]


def test_potential_classification():
    assert sextic.classify_potential(-0.01)["regime"] == "triple_well"
    assert sextic.classify_potential(0.05)["regime"] == "single_well_positive"


def test_harmonic_limit_spectrum():
    states = sextic.solve_spectrum(0.0, dim=100, levels=3)
    assert [round(s["energy"], 9) for s in states] == [1.0, 3.0, 5.0]


def test_exact_ground_state_pin():
    states = sextic.solve_spectrum(0.1, dim=200, levels=1)
    assert abs(states[0]["energy"] - 1.0) < 1e-8
    assert sextic.ground_state_overlap(0.1, dim=200) > 1 - 1e-6


def test_borel_cross_method():
    # Borel-Pade of the pure leading series f0 (-8 lam)^j j! must agree with
    # the closed form; at lam = 0.0125 the Borel transform is geometric.
    lam = 0.0125
    coeffs = [((-8 * lam) ** j) * math.factorial(j) for j in range(13)]
    quad = sextic.borel_pade_sum(coeffs, 1, 1, 1.0)
    closed = sextic.leading_borel_closed_form(lam, 1.0)
    assert abs(quad["value_real"] - closed["value_real"]) < 1e-8


def test_run_roundtrip(tmp_path):
    r = sextic.run(
        "potential-info",
        {"lambda": "-0.01", "output-dir": str(tmp_path)},
        False,
    )
    meta = sextic.parse_output_metadata(r["files"][0])
    assert meta["command"] == "potential-info"
    assert meta["params"]["lambda"] == "-0.01"


def test_cli_series(tmp_path):
    cli = os.environ.get("SEXTIC_CLI")
    if not cli:
        pytest.skip("SEXTIC_CLI not set")
    out = tmp_path / "series.csv"
    subprocess.run(
        [cli, "series", "--state", "1", "--order", "5",
         "--output", str(out), "--no-timestamp"],
        check=True,
        capture_output=True,
    )
    lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert lines[0] == "order,coefficient"
    assert lines[1] == "0,3/1"
    assert lines[-1] == "5,8892288/1"


def test_cli_exit_codes(tmp_path):
    cli = os.environ.get("SEXTIC_CLI")
    if not cli:
        pytest.skip("SEXTIC_CLI not set")
    env = dict(os.environ, SEXTIC_OUTPUT_DIR=str(tmp_path))
    usage = subprocess.run([cli, "series", "--bogus", "1"], env=env, capture_output=True)
    assert usage.returncode == 1
    domain = subprocess.run(
        [cli, "potential-info", "--lambda", "abc"], env=env, capture_output=True
    )
    assert domain.returncode == 1  # malformed number is a usage error
    stationary = subprocess.run(
        [cli, "sum", "--lambda", "-0.05"], env=env, capture_output=True
    )
    assert stationary.returncode == 2  # non-summable on the negative axis
