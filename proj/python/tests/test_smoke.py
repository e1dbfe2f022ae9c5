import math

import numpy as np
import pytest

import hypagg


def test_vertex_and_distance():
    v = hypagg.vertex(2)
    assert list(v) == [1.0, 0.0, 0.0]
    x = hypagg.u_k(2, 1, 0.7)
    assert hypagg.geodesic_distance(v, x) == pytest.approx(0.7, abs=1e-14)
    assert hypagg.minkowski_inner(v, x) == pytest.approx(math.cosh(0.7), rel=1e-14)


def test_translation_algebra_round_trip():
    x = hypagg.lift(np.array([0.0, 0.3, -1.2]))
    y = hypagg.lift(np.array([0.0, -0.8, 0.4]))
    back = hypagg.translate_sub(hypagg.translate_add(x, y), y)
    np.testing.assert_allclose(back, x, atol=1e-12)
    a, base = hypagg.decompose_k(1, x)
    assert base[1] == pytest.approx(0.0, abs=1e-14)
    np.testing.assert_allclose(hypagg.translate_add(base, hypagg.u_k(2, 1, a)), x, atol=1e-12)


def test_exp_log_round_trip():
    x = hypagg.lift(np.array([0.0, 0.5, 0.1, -0.2]))
    y = hypagg.lift(np.array([0.0, -0.4, 1.1, 0.3]))
    t = hypagg.log_map(x, y)
    np.testing.assert_allclose(hypagg.exp_map(x, t), y, atol=1e-10)


def test_rejects_point_off_hyperboloid():
    with pytest.raises(ValueError):
        hypagg.geodesic_distance(np.array([2.0, 0.0, 0.0]), hypagg.vertex(2))


def test_closed_form_radii():
    assert hypagg.radius_constant(2) == pytest.approx(math.acosh(1 + 1 / (2 * math.pi)), abs=1e-12)
    assert hypagg.radius_cosh(2) == pytest.approx(math.acosh((1 + 3 / (2 * math.pi)) ** (1 / 3)), abs=1e-12)
    m = hypagg.mixed_equilibrium(2.0, -1.0)
    assert m.radius == pytest.approx(0.6227, abs=5e-4)
    assert m.a1 == pytest.approx(-1.0956, abs=5e-4)
    assert m.mass() == pytest.approx(1.0, abs=1e-8)


def test_residual_and_euler_lagrange():
    spec = hypagg.PotentialSpec("cosh", 2)
    sol = hypagg.equilibrium_cosh(2)
    assert hypagg.integral_residual(sol, spec) < 1e-6
    rep = hypagg.euler_lagrange(sol, spec)
    assert rep["variation"] < 1e-3
    assert rep["lambda"] == pytest.approx(2 * rep["energy"], rel=1e-3)


def test_unknown_attraction():
    with pytest.raises(ValueError):
        hypagg.PotentialSpec("quadratic")


def test_short_radial_run_conserves_mass():
    spec = hypagg.PotentialSpec("constant", 2)
    out = hypagg.simulate_radial(spec, t_final=0.5, steady_tol=0.0)
    assert out["theta"].shape == out["rho"].shape
    assert out["t"][-1] == pytest.approx(0.5)
    assert out["crossings"] == 0

    def mass(theta, rho):
        f = rho * np.sinh(theta)
        return 2 * math.pi * float(np.sum(0.5 * (f[1:] + f[:-1]) * np.diff(theta)))

    assert abs(mass(out["theta"][-1], out["rho"][-1]) - mass(out["theta"][0], out["rho"][0])) < 1e-3


def test_particles_stay_on_hyperboloid():
    spec = hypagg.PotentialSpec("cosh", 2)
    start, end = hypagg.simulate_particles(spec, count=20, dt=0.01, t_final=0.2, seed=3)
    assert start.shape == end.shape == (20, 3)
    defect = end[:, 0] ** 2 - np.sum(end[:, 1:] ** 2, axis=1) - 1.0
    assert np.max(np.abs(defect)) < 1e-10


def test_geometry_suite_smoke():
    results = hypagg.verify_geometry(200, 5)
    assert results and all(ok for _, ok, _ in results)
