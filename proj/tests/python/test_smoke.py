import math
import os
from pathlib import Path

import numpy as np
import pytest

import blmhd

DATA = Path(os.environ.get("BLMHD_TEST_DATA", Path(__file__).resolve().parents[1] / "data"))


def test_metadata():
    assert blmhd.__version__
    assert set(blmhd.preset_names()) >= {"equilibrium", "smooth", "shear", "x_independent"}
    assert "simulate" in blmhd.command_verbs()
    assert blmhd.sha256_hex("abc").startswith("ba7816bf")


def test_grid_shape_checks():
    g = blmhd.Grid(16, 64, 20.0, 1.0)
    assert g.x.shape == (16,)
    assert g.y[0] == 0.0 and g.y[-1] == pytest.approx(20.0)
    with pytest.raises(ValueError):
        blmhd.weighted_l2(g, np.zeros((8, 64)), 1.0)
    with pytest.raises(ValueError):
        blmhd.Grid(4, 64)


def test_weighted_l2_of_constant():
    # int (1+y)^0 over [0, 20] x [0, 2 pi] of 1
    g = blmhd.Grid(16, 201, 20.0, 0.0)
    assert blmhd.weighted_l2(g, np.ones((16, 201)), 0.0) == pytest.approx(math.sqrt(40 * math.pi))


def test_hardy_on_decaying_profile():
    g = blmhd.Grid(8, 2001, 30.0, 0.0)
    y = g.y
    f = np.tile(y * np.exp(-y), (8, 1))
    r = blmhd.hardy_check(g, f, 1.0)
    assert r["passed"]
    assert 0.0 < r["ratio"] < 1.0
    with pytest.raises(ValueError):
        blmhd.hardy_check(g, f, -1.0)


def test_initial_state_equilibrium_is_background():
    g = blmhd.Grid(16, 64)
    s = blmhd.initial_state(g, "equilibrium")
    assert np.max(np.abs(s["rho"])) == 0.0
    assert np.allclose(s["u"], np.exp(-g.y)[None, :])


def test_simulate_smooth():
    g = blmhd.Grid(16, 64)
    r = blmhd.simulate(g, "smooth", amplitude=0.1, dt=0.01, t_end=0.05)
    assert r["steps"] == 5
    assert r["table"].shape == (6, len(r["columns"]))
    assert not r["breached"]
    theta = r["table"][:, r["columns"].index("Theta")]
    assert np.all(np.diff(theta) >= 0.0)


def test_heat_bound():
    r = blmhd.heat_bound(0, [0.1, 0.01], 0.5)
    assert r["passed"]
    assert r["ratio"].shape == (2,)


def test_config_and_command(tmp_path):
    text = (DATA / "equilibrium.ini").read_text()
    assert len(blmhd.config_digest(text)) == 64
    with pytest.raises(blmhd.ConfigError):
        blmhd.config_digest("[grid]\nnx = 16\n")
    code, summary = blmhd.run_command("simulate", text, tmp_path)
    assert code == 0
    assert summary["passed"] is True
    assert (tmp_path / "simulate.csv").exists()
