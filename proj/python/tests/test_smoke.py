import math

import numpy as np
import pytest

import spe


def test_config_and_datum():
    c = spe.gaussian_config(n_cells=256)
    assert c.kind == spe.ProblemKind.IBVP
    assert c.dx == pytest.approx(20 / 256)
    u = spe.gaussian_datum(c, 10.0)
    assert u.shape == (256,)
    assert abs(u.sum() * c.dx) < 1e-12


def test_parse_config_flag_wins():
    text = "gamma = 0.5\nepsilon = 0.01\nt_final = 2\nx_min = 0\nx_max = 20\nn_cells = 1024\nkind = ibvp\n"
    c, spec = spe.parse_config(text, {"epsilon": "0"})
    assert c.epsilon == 0.0
    assert spec.center == 10.0
    with pytest.raises(ValueError, match="epsilon must be >= 0"):
        spe.parse_config(text.replace("0.01", "-1"))


def test_elliptic_energy_and_order():
    errors = []
    for n in (256, 512, 1024):
        c = spe.gaussian_config(epsilon=0.1, x_min=-8, x_max=8, n_cells=n)
        c.normalization = spe.Normalization.DECAY_BOTH_ENDS
        x = c.centers
        e = np.exp(-x * x)
        u = -0.1 * (4 * x * x - 2) * e - 2 * x * e
        p, gap = spe.solve_elliptic(u, c)
        assert gap == 0.0
        errors.append(np.abs(p - e).max())
    assert min(spe.observed_orders(errors)) > 1.8


def test_run_and_audit_without_source():
    c = spe.gaussian_config(gamma=0.0, epsilon=0.02, t_final=0.5, n_cells=512)
    c.snapshot_every = 1
    t = spe.run(c, spe.gaussian_datum(c, 10.0))
    assert t.u.shape == (t.steps + 1, 512)
    assert t.step_dt.sum() == pytest.approx(0.5)
    a = spe.audit(t)
    assert a["all_pass"]
    assert {ch["name"] for ch in a["checks"]} >= {"l2_energy", "mass_identity"}
    assert "a_eps" in t.diagnostics


def test_entropy_scheme_riemann_shock():
    c = spe.gaussian_config(gamma=0.0, epsilon=0.0, t_final=1.0, x_min=-2, x_max=2, n_cells=512)
    c.snapshot_every = 1
    x = c.centers
    u0 = np.where((x > 0) & (x < 1.5), 1.0, 0.0)
    t = spe.run(c, u0)
    u = t.u[-1]
    i = int(np.argmax(u >= 0.5))
    assert abs(x[i] + 1 / 6) < 2 * c.dx
    cs = spe.default_kruzkov_constants(t)
    assert spe.max_positive_residual(t, cs) < 1e-10
    assert spe.kruzkov_flux(0.3, 0.3) == 0.0


def test_step_is_monotone():
    c = spe.gaussian_config(gamma=0.0, epsilon=0.0, n_cells=128, x_max=10)
    rng = np.random.default_rng(1)
    u = rng.uniform(-1, 1, 128)
    v = u + rng.uniform(0, 0.5, 128)
    dt = min(spe.cfl_dt(u, c), spe.cfl_dt(v, c))
    su, sv = spe.step(u, c, dt), spe.step(v, c, dt)
    assert np.all(su <= sv)
    assert np.abs(sv - su).sum() <= np.abs(v - u).sum() * (1 + 1e-14)


def test_sweep_and_stability():
    c = spe.gaussian_config(gamma=0.5, epsilon=0.0, t_final=0.5, n_cells=256)
    u0 = spe.gaussian_datum(c, 10.0)
    rows, monotone = spe.eps_sweep(c, u0, [0.1, 0.03, 0.01], threads=2)
    assert monotone and len(rows) == 3
    c.gamma = 0.0
    r = spe.stability_pair(c, u0, spe.gaussian_datum(c, 10.0, amplitude=1.1), window=16, samples=5)
    assert r["certified"] and r["fitted_c"] == 0.0


def test_rejects_bad_input():
    c = spe.gaussian_config(n_cells=64)
    with pytest.raises(ValueError):
        spe.step(np.zeros((2, 2)), c, 0.1)
    bad = np.zeros(64)
    bad[3] = math.nan
    with pytest.raises(Exception):
        spe.run(c, bad)
