"""Tests for the 1D potential field and its exact identities."""

import numpy as np
import pytest

from staircal import (
    CalibrationField1D,
    Interval,
    Params1D,
    PureJump1D,
    Staircase1D,
    TruncatedCubic,
    alpha_theta,
    f_field,
    jf_1d,
    phi_hat,
    sigma_theta,
    telescopic_bound,
    verify_equalities,
    verify_inequality_horizontal,
    verify_inequality_vertical,
)

THETAS = (0.0, 0.25, 0.5, 0.75)


def test_truncated_cubic_shape():
    for th in THETAS:
        c = TruncatedCubic(th)
        s = sigma_theta(th)
        assert abs(c.sigma - s) < 1e-15
        # odd and capped past the peak
        g = np.linspace(-3.0, 3.0, 601)
        vals = np.asarray(c.value(g))
        assert np.allclose(vals, -np.asarray(c.value(-g)), atol=1e-13)
        assert abs(float(c.value(s + 0.5)) - c.cap) < 1e-15
        assert abs(float(c.value(2 * s)) - c.cap) < 1e-15
        # inside the band it is the raw cubic
        inner = np.linspace(-0.9 * s, 0.9 * s, 101)
        raw = (3.0 - th) * inner - (1.0 - th) * inner**3
        assert np.allclose(np.asarray(c.value(inner)), raw, atol=1e-13)
        # module-level alias
        assert np.allclose(np.asarray(phi_hat(c, g)), vals, atol=0.0)


def test_cubic_derivative_matches_finite_differences():
    c = TruncatedCubic(0.3)
    s = c.sigma
    h = 1e-6
    pts = np.concatenate(
        [np.linspace(-0.95 * s, 0.95 * s, 41), [s + 0.1, -s - 0.1, 2.0]]
    )
    fd = (np.asarray(c.value(pts + h)) - np.asarray(c.value(pts - h))) / (2 * h)
    assert np.allclose(np.asarray(c.derivative(pts)), fd, atol=1e-7)


def test_field_x_derivative_is_capped_quadratic():
    for th in (0.0, 0.6):
        f = CalibrationField1D.for_theta(th)
        s = f.cubic.sigma
        h = 1e-6
        rng = np.random.default_rng(7)
        for _ in range(50):
            z = rng.uniform(-3.0, 3.0)
            x = rng.uniform(-3.0, 3.0)
            if min(abs(z - x - s), abs(z - x + s)) < 1e-3:
                continue  # skip the C^1 junctions where FD order degrades
            fd = (f.field(x + h, z) - f.field(x - h, z)) / (2 * h)
            want = 3.0 * min((z - x) ** 2, s * s)
            assert abs(fd - want) < 1e-6
            assert abs(f.dfdx(x, z) - want) < 1e-14
        assert abs(f_field(f, 0.5, 0.25) - f.field(0.5, 0.25)) == 0.0


def test_field_requires_matching_theta():
    with pytest.raises(ValueError):
        CalibrationField1D(0.2, TruncatedCubic(0.3))


def test_equalities_all_theta():
    for th in THETAS:
        rep = verify_equalities(CalibrationField1D.for_theta(th))
        assert rep.passed, rep.to_dict()
        assert rep.max_violation <= 1e-12


def test_horizontal_inequality_small_grid():
    for th in THETAS:
        rep = verify_inequality_horizontal(
            CalibrationField1D.for_theta(th), n=61
        )
        assert rep.passed, rep.to_dict()
        assert rep.details["equality_regime_max_deviation"] <= 1e-12


def test_vertical_inequality_small_grid():
    for th in THETAS:
        rep = verify_inequality_vertical(
            CalibrationField1D.for_theta(th), n=121
        )
        assert rep.passed, rep.to_dict()
        assert rep.details["saturation_deviation_at_(-1,1)"] <= 1e-12


def test_telescopic_equality_on_staircase():
    for th in THETAS:
        p = Params1D(th, alpha_theta(th), 3.0, 1.0)
        for k in (1, 2):
            w = Interval(-(2.0 * k + 1.0), 2.0 * k + 1.0)
            u = Staircase1D(1.0, 1.0, 0.0).restrict(w)
            lhs, rhs = telescopic_bound(w, u, p)
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))
            want = (2.0 * (3.0 - th) * (2.0 * k + 1.0) - 4.0) / (1.0 - th)
            assert abs(rhs - want) < 1e-12 * want
    # pinned closed form at k=1, theta=0
    p0 = Params1D(0.0, alpha_theta(0.0), 3.0, 1.0)
    w = Interval(-3.0, 3.0)
    u = Staircase1D(1.0, 1.0, 0.0).restrict(w)
    lhs, rhs = telescopic_bound(w, u, p0)
    assert rhs == 14.0
    assert lhs == 14.0


def _random_competitor(rng, k: int, collar: float) -> PureJump1D:
    """Collar-matching competitor: base -2k, interior jumps summing to 4k."""
    b = 2.0 * k + 1.0
    n = int(rng.integers(1, 6))
    pos = np.sort(rng.uniform(-b + collar + 0.05, b - collar - 0.05, n))
    while np.any(np.diff(pos) < 1e-6):
        pos = np.sort(rng.uniform(-b + collar + 0.05, b - collar - 0.05, n))
    h = rng.uniform(-1.5, 2.5, n)
    h[-1] = 4.0 * k - h[:-1].sum()
    if h[-1] == 0.0:
        h[-1] = 1e-3
        h[0] -= 1e-3
    return PureJump1D(-2.0 * k, tuple(zip(pos, h)))


def test_telescopic_lower_bound_random_competitors():
    rng = np.random.default_rng(11)
    for th in (0.0, 0.5):
        p = Params1D(th, alpha_theta(th), 3.0, 1.0)
        for k in (1, 2):
            w = Interval(-(2.0 * k + 1.0), 2.0 * k + 1.0)
            for _ in range(60):
                v = _random_competitor(rng, k, 0.1)
                lhs, rhs = telescopic_bound(w, v, p)
                assert lhs >= rhs - 1e-9
                assert abs(lhs - jf_1d(w, v, p).total) == 0.0


def test_telescopic_rejects_bad_inputs():
    p = Params1D(0.0, alpha_theta(0.0), 3.0, 1.0)
    w = Interval(-3.0, 3.0)
    u = Staircase1D(1.0, 1.0, 0.0).restrict(w)
    # non-normalized parameters
    with pytest.raises(ValueError):
        telescopic_bound(w, u, Params1D(0.0, 1.0, 3.0, 1.0))
    with pytest.raises(ValueError):
        telescopic_bound(w, u, Params1D(0.0, alpha_theta(0.0), 2.0, 1.0))
    # window not of the form (-(2k+1), 2k+1)
    with pytest.raises(ValueError):
        telescopic_bound(Interval(-2.0, 2.0), u, p)
    # jump inside the collar
    bad = PureJump1D(-2.0, ((-2.95, 2.0), (0.0, 2.0)))
    with pytest.raises(ValueError):
        telescopic_bound(w, bad, p)
    # wrong collar values
    bad2 = PureJump1D(0.0, ((0.0, 2.0),))
    with pytest.raises(ValueError):
        telescopic_bound(w, bad2, p)
