"""Capped piecewise-linear profile and its chord bound."""

import math

import numpy as np
import pytest

from staircal import cap_values, lemma_psi_verify, psi_build, psi_piecewise


def test_cap_values_pinned_formula():
    # nodes at x = 0.5: c = -1.375, d = 1.375
    c, d = -1.375, 1.375
    cap_c, cap_d = cap_values(c, d)
    want_c = math.sqrt(16.0 - (2.0 - c) ** 2)
    want_d = math.sqrt(16.0 - (d - c) ** 2) - want_c
    assert abs(cap_c - want_c) < 1e-15
    assert abs(cap_d - want_d) < 1e-15


def test_psi_node_values_and_interpolation():
    c, d = -1.375, 1.375
    psi = psi_build(c, d)
    cap_c, cap_d = cap_values(c, d)
    assert psi(-2.0) == 0.0
    assert psi(2.0) == 0.0
    assert abs(psi(c) + cap_c) < 1e-15
    assert abs(psi(d) - cap_d) < 1e-15
    # linear between breakpoints
    for (a, b) in ((-2.0, c), (c, d), (d, 2.0)):
        mid = 0.5 * (a + b)
        assert abs(psi(mid) - 0.5 * (float(psi(a)) + float(psi(b)))) < 1e-12


def test_psi_piecewise_matches_builder():
    rng = np.random.default_rng(3)
    for _ in range(20):
        c = rng.uniform(-2.0, 0.0)
        d = rng.uniform(0.05, 2.0)
        cap_c, cap_d = cap_values(c, d)
        psi = psi_build(c, d)
        s = rng.uniform(-2.0, 2.0, 200)
        a = np.asarray(psi_piecewise(s, c, d, cap_c, cap_d))
        b = np.asarray(psi(s))
        assert np.allclose(a, b, atol=1e-13)


def test_chord_bound_standard_case():
    rep = lemma_psi_verify(-1.375, 1.375)
    assert rep.passed
    assert rep.max_violation <= 1e-9
    cases = rep.details["case_values"]
    assert len(cases) == 6
    # pairs 4 and 5 are equalities by construction, pair 3 in normalization
    assert abs(cases[3] - 16.0) < 1e-12
    assert abs(cases[4] - 16.0) < 1e-12
    assert abs(cases[2] - 16.0) < 1e-12


def test_chord_bound_degenerate_c():
    # at c = -2 the cap collapses and the (-rho, d) chord saturates
    d = 1.0
    rep = lemma_psi_verify(-2.0, d)
    assert rep.passed
    assert abs(rep.details["case_values"][1] - 16.0) < 1e-12
    cap_c, _ = cap_values(-2.0, d)
    assert cap_c == 0.0


def test_cap_values_vectorized():
    cs = np.array([-1.375, -2.0, 0.0])
    ds = np.array([1.375, 1.0, 0.5])
    cap_c, cap_d = cap_values(cs, ds)
    for i in range(3):
        a, b = cap_values(float(cs[i]), float(ds[i]))
        assert abs(cap_c[i] - a) < 1e-15
        assert abs(cap_d[i] - b) < 1e-15


def test_invalid_nodes_rejected():
    with pytest.raises(ValueError):
        psi_build(1.0, -1.0)  # c must not exceed d
