import math

import numpy as np
import pytest

import fraclaw as fl


def gaussian(grid, width=1.0):
    x = grid.points()
    return np.exp(-x * x / (2 * width * width)) / math.sqrt(2 * math.pi * width * width)


def test_flagship_symbol_matches_riesz_feller():
    g = fl.Grid(2048, 50.0)
    for alpha in (0.25, 0.5, 0.75):
        a = fl.symbol(fl.Operator.dx_weyl_marchaud(alpha), g)
        b = fl.symbol(fl.Operator.riesz_feller(1 + alpha, 1 - alpha), g)
        assert np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b))) <= 1e-14


def test_coefficients_of_the_one_sided_case():
    c1, c2 = fl.riesz_feller_coeffs(1.5, 0.5)
    assert c2 == 0.0
    assert c1 == pytest.approx(math.gamma(2.5) / math.pi, rel=1e-15)


def test_quadrature_agrees_with_multiplier():
    g = fl.Grid(4096, 40.0)
    f = np.exp(-g.points() ** 2)
    spec = fl.Operator.dx_weyl_marchaud(0.5)
    a = fl.apply_quadrature(spec, g, f)
    b = fl.apply_spectral(spec, g, f)
    assert np.max(np.abs(a - b)) / np.max(np.abs(b)) <= 1e-3


def test_kernel_is_a_density():
    g = fl.Grid(4096, 100.0)
    k = fl.kernel(1.0, fl.Operator.dx_weyl_marchaud(0.5), g)
    assert k.sum() * g.dx == pytest.approx(1.0, abs=1e-13)


def test_solve_conserves_mass_and_stays_bounded():
    c = fl.SolverConfig()
    c.grid = fl.Grid(512, 40.0)
    c.dt = 2e-3
    c.t_end = 1.0
    u0 = gaussian(c.grid)
    traj = fl.solve(u0, c, [0.5, 1.0])
    assert traj.fields.shape == (2, 512)
    assert list(traj.times) == [0.5, 1.0]
    for row in traj.fields:
        assert row.sum() * c.grid.dx == pytest.approx(1.0, rel=1e-12)
        assert row.min() >= -1e-6 * u0.max()
        assert row.max() <= u0.max() * (1 + 1e-6)


def test_rescaled_run_keeps_mass():
    c = fl.SolverConfig()
    c.grid = fl.Grid(512, 40.0)
    c.dt = 2e-3
    c.t_end = 1.0
    traj = fl.solve_rescaled(fl.InitialProfile.gaussian(1.0, 3.0), c, 2.0, [0.5])
    assert traj.config.diffusion_scale == pytest.approx(2.0 ** (1.3 - 1.5))
    assert traj.at(0.5).sum() * c.grid.dx == pytest.approx(1.0, rel=1e-12)


def test_nwave_saturates_the_one_sided_bound():
    p = fl.NWaveParams(1.0, 1.3)
    assert fl.nwave_front(1.0, p) == pytest.approx((1.3 / 0.3) ** (0.3 / 1.3), rel=1e-15)
    assert fl.lp_decay_bound(2.0, math.inf, 1.3, 1.0) == pytest.approx(fl.nwave_max(2.0, p))


def test_errors_surface_as_python_exceptions():
    g = fl.Grid(256, 10.0)
    with pytest.raises(fl.InvalidParameter):
        fl.Operator.riesz_feller(2.5, 0.0)
    with pytest.raises(ValueError):
        fl.apply_spectral(fl.Operator.weyl_marchaud(0.5), g, np.zeros(100))
    c = fl.SolverConfig()
    with pytest.raises(ValueError):
        c.scheme = "rk4"
