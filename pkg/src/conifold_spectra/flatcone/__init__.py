"""Exact tensor-calculus oracle on the flat cone R^n \\ {0}."""

from .cases import (
    CASE_IDS,
    BranchCheck,
    CaseReport,
    CheegerTianRecord,
    IdentityReport,
    build_case_tensor,
    cheeger_tian_example,
    identity_b_dstar,
    identity_case_harmonics,
    identity_delta_star_radial,
    identity_trace_commutes,
    verify_case,
)
from .expr import (
    FieldExpr,
    PolyR,
    RadialMonomialTerm,
    bianchi_op,
    divergence,
    euclidean_metric,
    gradient,
    laplacian,
    normalize,
    partial_derivative,
    proportionality,
    radial_contraction,
    radial_form,
    sym_gradient,
    sym_product,
    trace,
)
from .harmonics import harmonic_polynomial, rotational_form
from .ode import OdeCheck, RadialLogPoly, conical_apply, default_grid, ode_grid, ode_residual

__all__ = [
    "CASE_IDS",
    "BranchCheck",
    "CaseReport",
    "CheegerTianRecord",
    "IdentityReport",
    "FieldExpr",
    "PolyR",
    "RadialMonomialTerm",
    "OdeCheck",
    "RadialLogPoly",
    "bianchi_op",
    "build_case_tensor",
    "cheeger_tian_example",
    "conical_apply",
    "default_grid",
    "divergence",
    "euclidean_metric",
    "gradient",
    "harmonic_polynomial",
    "identity_b_dstar",
    "identity_case_harmonics",
    "identity_delta_star_radial",
    "identity_trace_commutes",
    "laplacian",
    "normalize",
    "ode_grid",
    "ode_residual",
    "partial_derivative",
    "proportionality",
    "radial_contraction",
    "radial_form",
    "rotational_form",
    "sym_gradient",
    "sym_product",
    "trace",
    "verify_case",
]
