"""Exact energies and calibration-based minimality checks for staircases.

The package verifies, numerically but at machine precision wherever the
underlying quantity is closed-form, that staircase-shaped functions minimize
a jump energy with a linear-forcing fidelity term:

* 1D: a pure-jump competitor pays ``alpha |jump|^theta`` per jump plus
  ``beta * integral (u - M x)^2``; the canonical staircase is optimal.
* 2D: piecewise-constant competitors on polygonal cells against forcing
  ``<xi, x>``; a two-phase staircase separated by an explicit curve is
  certified through a boundary-determined auxiliary functional whose value
  sandwiches every competitor's energy.

Entry points: exact energies (`jf_1d`, `jf_2d`), candidate builders
(`Staircase1D`, `BiStaircase`, `f_theta_build`), field checks
(`verify_equalities`, `verify_prop_hypotheses`, `lemma_psi_verify`),
randomized suites (`telescopic_stress`, `stress_2d`, `brute_force_1d`), and
a CLI (``staircal`` / ``python -m staircal``).
"""

from ._version import __version__
from .bistaircase import (
    BiStaircase,
    OnJumpSetError,
    bistaircase_jumpset,
    cells_from_samples,
    curve_samples,
    jf_semi_analytic,
)
from .calibration1d import (
    CalibrationField1D,
    TruncatedCubic,
    f_field,
    phi_hat,
    telescopic_bound,
    verify_equalities,
    verify_inequality_horizontal,
    verify_inequality_vertical,
)
from .calibration2d import (
    CalibrationField2D,
    FormIntegrand,
    GResult,
    a_field,
    explore_theta_scan,
    g_definition_form,
    g_functional,
    g_representation_form,
    line_integral_form,
    saturation_check,
    verify_minimality_chain,
    verify_prop_hypotheses,
)
from .curve import InterfaceCurve, f_dual_quadrature, f_theta_build, g_theta
from .energy1d import (
    BoundaryJumpError,
    EnergyBreakdown,
    Interval,
    PureJump1D,
    jf_1d,
)
from .energy2d import (
    PiecewiseCell2D,
    integral_min_quadratic,
    integral_quadratic_deviation,
    jf_2d,
    validate_cells,
)
from .geometry import InterfacePolyline, Polygon, rect_bounds
from .harness import (
    BruteForceResult,
    brute_force_1d,
    equidistance_test,
    extend_1d_to_2d,
    federer_slice_check,
    jump_merge_test,
    jump_symmetry_test,
    random_competitor_1d,
    slicing_product_check,
    stress_2d,
    stress_setup,
    telescopic_stress,
)
from .params import (
    Normalization,
    Params1D,
    Params2D,
    alpha_theta,
    canonical_h_v,
    normalize_params,
    sigma_theta,
    unit_energy_density,
)
from .psi import PsiFunction, cap_values, lemma_psi_verify, psi_build, psi_piecewise
from .quadrature import QuadratureError, adaptive_gl, fixed_gl, integrate_segments
from .reports import (
    CheckReport,
    SuiteReport,
    TrialReport,
    build_manifest,
    to_json,
    write_csv,
    write_json,
)
from .serialize import (
    SchemaError,
    dump_obj,
    load_energy_input,
    load_json,
    load_obj,
    save_json,
)
from .staircase import Staircase1D, s_base

__all__ = [
    "__version__",
    # parameters and normalization
    "Params1D",
    "Params2D",
    "Normalization",
    "alpha_theta",
    "sigma_theta",
    "canonical_h_v",
    "normalize_params",
    "unit_energy_density",
    # 1D energy
    "Interval",
    "PureJump1D",
    "EnergyBreakdown",
    "BoundaryJumpError",
    "jf_1d",
    # staircases
    "Staircase1D",
    "s_base",
    # geometry and 2D energy
    "Polygon",
    "InterfacePolyline",
    "rect_bounds",
    "PiecewiseCell2D",
    "jf_2d",
    "validate_cells",
    "integral_quadratic_deviation",
    "integral_min_quadratic",
    # interface curve and two-phase staircase
    "InterfaceCurve",
    "g_theta",
    "f_theta_build",
    "f_dual_quadrature",
    "BiStaircase",
    "OnJumpSetError",
    "bistaircase_jumpset",
    "jf_semi_analytic",
    "curve_samples",
    "cells_from_samples",
    # 1D calibration
    "TruncatedCubic",
    "CalibrationField1D",
    "phi_hat",
    "f_field",
    "verify_equalities",
    "verify_inequality_horizontal",
    "verify_inequality_vertical",
    "telescopic_bound",
    # profile cap and 2D calibration
    "PsiFunction",
    "cap_values",
    "psi_piecewise",
    "psi_build",
    "lemma_psi_verify",
    "CalibrationField2D",
    "a_field",
    "FormIntegrand",
    "GResult",
    "line_integral_form",
    "g_definition_form",
    "g_representation_form",
    "g_functional",
    "verify_prop_hypotheses",
    "verify_minimality_chain",
    "saturation_check",
    "explore_theta_scan",
    # randomized suites and oracles
    "random_competitor_1d",
    "telescopic_stress",
    "BruteForceResult",
    "brute_force_1d",
    "jump_symmetry_test",
    "equidistance_test",
    "extend_1d_to_2d",
    "slicing_product_check",
    "federer_slice_check",
    "jump_merge_test",
    "stress_setup",
    "stress_2d",
    # quadrature
    "fixed_gl",
    "adaptive_gl",
    "integrate_segments",
    "QuadratureError",
    # reports and serialization
    "CheckReport",
    "TrialReport",
    "SuiteReport",
    "build_manifest",
    "to_json",
    "write_json",
    "write_csv",
    "SchemaError",
    "dump_obj",
    "load_obj",
    "save_json",
    "load_json",
    "load_energy_input",
]
