"""Two-phase staircase: pointwise values, jump set, and exact energy."""

import numpy as np
import pytest

from staircal import (
    BiStaircase,
    OnJumpSetError,
    Params2D,
    Polygon,
    bistaircase_jumpset,
    cells_from_samples,
    curve_samples,
    f_theta_build,
    jf_2d,
    jf_semi_analytic,
    s_base,
)

CURVE0 = f_theta_build(0.0)


def classify_oracle(curve, x, y):
    """Independent strip arithmetic: above the curve follow the even
    staircase, below it the odd one shifted up by one."""
    if y > curve(x):
        return s_base(x)
    return s_base(x - 1.0) + 1.0


def test_pointwise_classification_against_oracle():
    b = BiStaircase(CURVE0)
    rng = np.random.default_rng(31)
    xs = rng.uniform(-4.0, 6.0, 100_000)
    ys = rng.uniform(-3.0, 4.0, 100_000)
    # stay clear of the jump set so both sides agree deterministically
    fx = np.asarray(CURVE0(xs))
    clear = np.abs(ys - fx) > 1e-6
    d_even = np.min(np.abs(xs[:, None] - np.arange(-4.0, 7.0, 2.0)[None, :]), axis=1)
    d_odd = np.min(np.abs(xs[:, None] - np.arange(-3.0, 7.0, 2.0)[None, :]), axis=1)
    clear &= ~((d_even < 1e-6) & (ys <= 0.0))
    clear &= ~((d_odd < 1e-6) & (ys >= CURVE0.f1))
    xs, ys, fx = xs[clear], ys[clear], fx[clear]
    got = np.asarray(b.value(xs, ys))
    want = np.where(ys > fx, s_base(xs), np.asarray(s_base(xs - 1.0)) + 1.0)
    assert np.array_equal(got, want)


def test_on_jump_set_raises():
    b = BiStaircase(CURVE0)
    with pytest.raises(OnJumpSetError):
        b.value(0.5, float(CURVE0(0.5)))
    with pytest.raises(OnJumpSetError):
        b.value(0.0, -1.0)  # even vertical below the curve
    with pytest.raises(OnJumpSetError):
        b.value(1.0, 2.0)  # odd vertical above the crest


def test_jumpset_pieces_and_length():
    window = Polygon.rectangle(0.0, -2.0, 2.0, 2.0)
    pieces = bistaircase_jumpset(BiStaircase(CURVE0), window, chord_tol=1e-9)
    # two curve strips plus one odd vertical at x = 1
    assert len(pieces) == 3
    total = sum(seg.length for seg in pieces)
    want = 2.0 * CURVE0.arclength(0.0, 1.0) + (2.0 - CURVE0.f1)
    assert abs(total - want) < 1e-6

    verts = [seg for seg in pieces if seg.points[0, 0] == seg.points[-1, 0]]
    assert len(verts) == 1
    assert verts[0].left == 0.0 and verts[0].right == 2.0


def test_jumpset_heights_all_one_on_curve():
    window = Polygon.rectangle(-2.0, -2.0, 3.0, 2.0)
    pieces = bistaircase_jumpset(BiStaircase(CURVE0), window, chord_tol=1e-6)
    curve_pieces = [s for s in pieces if s.points[0, 0] != s.points[-1, 0]]
    for seg in curve_pieces:
        assert abs(abs(seg.right - seg.left) - 1.0) < 1e-12
    vert_pieces = [s for s in pieces if s.points[0, 0] == s.points[-1, 0]]
    for seg in vert_pieces:
        assert abs(abs(seg.right - seg.left) - 2.0) < 1e-12


def test_translation_invariance_semi_analytic():
    p = Params2D(0.0, 4.0, 3.0, (1.0, 0.0))
    w0 = Polygon.rectangle(-0.5, -2.0, 1.5, 2.0)
    e0 = jf_semi_analytic(BiStaircase(CURVE0), w0, p)
    w1 = Polygon.rectangle(1.5, -2.0, 3.5, 2.0)
    e1 = jf_semi_analytic(BiStaircase(CURVE0, tau0=2.0), w1, p)
    assert abs(e0.total - e1.total) < 1e-10


def test_cells_agree_with_semi_analytic():
    p = Params2D(0.0, 4.0, 3.0, (1.0, 0.0))
    window = Polygon.rectangle(-0.5, -2.0, 1.5, 2.0)
    e_ref = jf_semi_analytic(BiStaircase(CURVE0), window, p)
    xs = curve_samples(CURVE0, -0.5, 1.5, CURVE0.chord_step(2e-8))
    fs = np.asarray(CURVE0(xs))
    cells = cells_from_samples(window, xs, fs)
    e_cells = jf_2d(window, cells, p)
    # chordal interfaces shorten the jump term slightly, never lengthen it
    assert e_cells.jump_term <= e_ref.jump_term + 1e-12
    assert abs(e_cells.total - e_ref.total) < 1e-6
    assert abs(e_cells.fidelity_term - e_ref.fidelity_term) < 1e-6


def test_window_must_contain_vertical_spread():
    with pytest.raises(ValueError):
        bistaircase_jumpset(
            BiStaircase(CURVE0), Polygon.rectangle(0.0, 0.2, 2.0, 2.0)
        )
