"""2D energy: polygon moments, Monte Carlo cross-checks, invariances."""

import numpy as np
import pytest
import shapely

from staircal import (
    InterfacePolyline,
    Interval,
    Params1D,
    Params2D,
    PiecewiseCell2D,
    Polygon,
    Staircase1D,
    extend_1d_to_2d,
    integral_min_quadratic,
    integral_quadratic_deviation,
    jf_1d,
    jf_2d,
    validate_cells,
)

P2 = Params2D(0.0, 4.0, 3.0, (1.0, 0.0))


def convex_polygon(rng, n, scale=2.0):
    ang = np.sort(rng.uniform(0.0, 2.0 * np.pi, n))
    r = rng.uniform(0.5, 1.0, n) * scale
    pts = np.column_stack([r * np.cos(ang), r * np.sin(ang)])
    return Polygon(pts + rng.uniform(-1.0, 1.0, 2))


def mc_integral(rng, poly, fn, n=1_000_000):
    """Monte Carlo integral of fn(x, y) over poly, with its standard error."""
    x0, y0, x1, y1 = poly.bounds
    xs = rng.uniform(x0, x1, n)
    ys = rng.uniform(y0, y1, n)
    geom = shapely.Polygon(poly.vertices)
    inside = shapely.contains_xy(geom, xs, ys)
    vals = np.where(inside, fn(xs, ys), 0.0)
    box = (x1 - x0) * (y1 - y0)
    mean = float(np.mean(vals))
    se = float(np.std(vals) / np.sqrt(n))
    return box * mean, box * se


def test_quadratic_deviation_vs_monte_carlo():
    rng = np.random.default_rng(2)
    for _ in range(4):
        poly = convex_polygon(rng, int(rng.integers(3, 8)))
        val = rng.normal()
        xi = tuple(rng.normal(size=2))
        exact = integral_quadratic_deviation(poly.vertices, val, xi)
        est, se = mc_integral(
            rng, poly, lambda x, y: (val - (xi[0] * x + xi[1] * y)) ** 2
        )
        assert abs(exact - est) < 4.0 * se + 1e-9


def test_quadratic_deviation_rotation_invariance():
    rng = np.random.default_rng(8)
    for _ in range(20):
        poly = convex_polygon(rng, 6)
        val = rng.normal()
        xi = rng.normal(size=2)
        phi = rng.uniform(0.0, 2.0 * np.pi)
        rot = np.array([[np.cos(phi), -np.sin(phi)], [np.sin(phi), np.cos(phi)]])
        a = integral_quadratic_deviation(poly.vertices, val, tuple(xi))
        b = integral_quadratic_deviation(poly.vertices @ rot.T, val, tuple(rot @ xi))
        assert abs(a - b) < 1e-10 * max(1.0, abs(a))


def test_quadratic_deviation_additivity():
    rng = np.random.default_rng(13)
    for _ in range(10):
        # split a random rectangle with a vertical chord
        x0, y0 = rng.uniform(-2.0, 0.0, 2)
        x1, y1 = rng.uniform(0.5, 2.5, 2)
        xc = rng.uniform(x0 + 0.1, x1 - 0.1)
        val, xi = rng.normal(), tuple(rng.normal(size=2))
        whole = integral_quadratic_deviation(
            Polygon.rectangle(x0, y0, x1, y1).vertices, val, xi
        )
        left = integral_quadratic_deviation(
            Polygon.rectangle(x0, y0, xc, y1).vertices, val, xi
        )
        right = integral_quadratic_deviation(
            Polygon.rectangle(xc, y0, x1, y1).vertices, val, xi
        )
        assert abs(whole - (left + right)) < 1e-12 * max(1.0, abs(whole))


def min_quad_1d(a, b, z, sigma):
    """integral_a^b 3 * min((x-z)^2, sigma^2) dx by cases."""
    total = 0.0
    cuts = sorted({a, b, min(max(z - sigma, a), b), min(max(z + sigma, a), b)})
    for lo, hi in zip(cuts, cuts[1:]):
        midp = 0.5 * (lo + hi)
        if abs(midp - z) >= sigma:
            total += 3.0 * sigma**2 * (hi - lo)
        else:
            total += (hi - z) ** 3 - (lo - z) ** 3
    return total


def test_min_quadratic_rectangle_closed_form():
    rng = np.random.default_rng(17)
    for _ in range(30):
        x0, y0 = rng.uniform(-3.0, 0.0, 2)
        x1, y1 = x0 + rng.uniform(0.3, 3.0), y0 + rng.uniform(0.3, 3.0)
        z, sigma = rng.normal(), rng.uniform(0.2, 1.5)
        got = integral_min_quadratic(
            Polygon.rectangle(x0, y0, x1, y1).vertices, z, sigma
        )
        want = (y1 - y0) * min_quad_1d(x0, x1, z, sigma)
        assert abs(got - want) < 1e-12 * max(1.0, abs(want))


def test_min_quadratic_triangle_monte_carlo():
    rng = np.random.default_rng(29)
    poly = Polygon(np.array([[-1.0, -0.5], [1.8, 0.2], [0.1, 1.4]]))
    z, sigma = 0.3, 0.8
    exact = integral_min_quadratic(poly.vertices, z, sigma)
    est, se = mc_integral(
        rng, poly, lambda x, y: 3.0 * np.minimum((x - z) ** 2, sigma**2)
    )
    assert abs(exact - est) < 4.0 * se + 1e-9


def unit_square_cells(value=0.0):
    return PiecewiseCell2D(
        ((Polygon.rectangle(0.0, 0.0, 1.0, 1.0), value),), ()
    )


def test_unit_square_energy():
    e = jf_2d(Polygon.rectangle(0.0, 0.0, 1.0, 1.0), unit_square_cells(), P2)
    assert e.jump_term == 0.0
    assert abs(e.fidelity_term - 1.0) < 1e-14


def test_jump_term_manual_sum():
    # two cells split by a tilted seam; cost = alpha * length * |gap|^theta
    p = Params2D(0.5, 2.0, 3.0, (1.0, 0.0))
    seam = np.array([[0.0, 0.0], [1.0, 1.0]])
    cells = PiecewiseCell2D(
        (
            (Polygon(np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.0]])), 2.0),
            (Polygon(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]])), -1.0),
        ),
        (InterfacePolyline(seam, 2.0, -1.0),),
    )
    e = jf_2d(Polygon.rectangle(0.0, 0.0, 1.0, 1.0), cells, p)
    want = 2.0 * np.sqrt(2.0) * 3.0**0.5
    assert abs(e.jump_term - want) < 1e-12


def test_product_identity_with_extension():
    u = Staircase1D(1.0, 1.0, 0.0).restrict(Interval(-3.0, 3.0))
    for y0, y1 in ((0.0, 1.0), (-1.3, 0.9)):
        window = Polygon.rectangle(-3.0, y0, 3.0, y1)
        cells = extend_1d_to_2d(u, window)
        e2 = jf_2d(window, cells, P2).total
        e1 = jf_1d(Interval(-3.0, 3.0), u, Params1D(0.0, 4.0, 3.0, 1.0)).total
        assert abs(e2 - (y1 - y0) * e1) < 1e-12 * max(1.0, e2)


def test_oblique_invariance_2d():
    u = Staircase1D(1.0, 1.0, 0.0).restrict(Interval(-3.0, 3.0))
    w0 = Polygon.rectangle(-3.0, 0.0, 3.0, 1.0)
    e0 = jf_2d(w0, extend_1d_to_2d(u, w0), P2).total
    shifted = u.translate(2.0, 1.0)
    w1 = Polygon.rectangle(-1.0, 0.0, 5.0, 1.0)
    e1 = jf_2d(w1, extend_1d_to_2d(shifted, w1), P2).total
    assert abs(e0 - e1) < 1e-12


def test_tiling_validation():
    window = Polygon.rectangle(0.0, 0.0, 1.0, 1.0)
    # hole: cells cover only half the window
    half = PiecewiseCell2D(((Polygon.rectangle(0.0, 0.0, 1.0, 0.5), 0.0),), ())
    with pytest.raises(ValueError):
        jf_2d(window, half, P2)
    # overlap: two full copies
    double = PiecewiseCell2D(
        (
            (Polygon.rectangle(0.0, 0.0, 1.0, 1.0), 0.0),
            (Polygon.rectangle(0.0, 0.0, 1.0, 1.0), 1.0),
        ),
        (),
    )
    with pytest.raises(ValueError):
        jf_2d(window, double, P2)


def test_validate_cells_flags_mislabeled_interface():
    cells = PiecewiseCell2D(
        (
            (Polygon.rectangle(0.0, 0.0, 0.5, 1.0), 1.0),
            (Polygon.rectangle(0.5, 0.0, 1.0, 1.0), 2.0),
        ),
        (InterfacePolyline(np.array([[0.5, 0.0], [0.5, 1.0]]), 1.0, 2.0),),
    )
    window = Polygon.rectangle(0.0, 0.0, 1.0, 1.0)
    validate_cells(window, cells)  # walking up: left is x < 0.5
    bad = PiecewiseCell2D(
        cells.regions,
        (InterfacePolyline(np.array([[0.5, 0.0], [0.5, 1.0]]), 2.0, 1.0),),
    )
    with pytest.raises(ValueError):
        validate_cells(window, bad)


def test_polygon_validation():
    with pytest.raises(ValueError):
        Polygon(np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]))  # clockwise
    with pytest.raises(ValueError):
        Polygon(np.array([[0.0, 0.0], [1.0, 0.0]]))  # too few vertices
    p = Polygon.rectangle(-1.0, -2.0, 3.0, 4.0)
    assert p.bounds == (-1.0, -2.0, 3.0, 4.0)
    assert p.is_simple()
