"""Indicial roots, convergence orders and stability for Ricci-flat cones.

From the spectral data of a cone's link this package computes the indicial
sets of the Lichnerowicz Laplacian, optimal convergence orders of
asymptotically conical and conically singular ends, linear-stability and
ADM-mass verdicts, and independently verifies the underlying eigensection
and gauge constructions by exact tensor calculus on the flat cone.
"""

from .core import (
    DEFAULT_DPS,
    DEFAULT_EPSILON,
    Radical,
    Scalar,
    Weight,
    discriminant,
    dual_weight,
    eta,
    resonance_pair,
    weight_pair_product,
    weight_pair_sum,
    xi_pair,
)
from .errors import (
    ConifoldSpectraError,
    DimensionTooSmall,
    EmptyRateSet,
    InsufficientSpectrum,
    InvariantViolation,
    NonTerminating,
    SchemaError,
    UnknownMultiplicity,
    UnsupportedCase,
    UnsupportedDimension,
)
from .indicial import (
    Box1Family,
    BoxLFamily,
    DropReason,
    IndicialRoot,
    TangentialEigenvalue,
    box1_spectrum,
    boxL_spectrum,
    eigenspace_dimension,
    indicial_set_bianchi,
    indicial_set_essential,
    indicial_set_full,
)
from .links import (
    EigenvalueEntry,
    EndKind,
    LinkSpectrum,
    SpectrumList,
    SpectrumMode,
    builtin_link,
    load_spectrum,
    product_einstein_example,
    require_complete,
    sphere_link,
    sphere_quotient_link,
)
from .rates import (
    AdmMassReport,
    EndOrderReport,
    RateElement,
    RateSet,
    Rates,
    StabilityReport,
    adm_mass_verdict,
    bootstrap_decay,
    e_minus_set,
    e_plus_set,
    end_order,
    is_resonance_dominated,
    linear_stability,
    resonance_analysis,
    xi_rates,
)
from .report import Report, ReportOptions, build_report, render_csv, render_json, render_text

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_DPS",
    "DEFAULT_EPSILON",
    "Radical",
    "Scalar",
    "Weight",
    "weight_pair_product",
    "weight_pair_sum",
    "discriminant",
    "dual_weight",
    "eta",
    "resonance_pair",
    "xi_pair",
    "ConifoldSpectraError",
    "DimensionTooSmall",
    "EmptyRateSet",
    "InsufficientSpectrum",
    "InvariantViolation",
    "NonTerminating",
    "SchemaError",
    "UnknownMultiplicity",
    "UnsupportedCase",
    "UnsupportedDimension",
    "Box1Family",
    "BoxLFamily",
    "DropReason",
    "IndicialRoot",
    "TangentialEigenvalue",
    "box1_spectrum",
    "boxL_spectrum",
    "eigenspace_dimension",
    "indicial_set_bianchi",
    "indicial_set_essential",
    "indicial_set_full",
    "EigenvalueEntry",
    "EndKind",
    "LinkSpectrum",
    "SpectrumList",
    "SpectrumMode",
    "builtin_link",
    "load_spectrum",
    "product_einstein_example",
    "require_complete",
    "sphere_link",
    "sphere_quotient_link",
    "AdmMassReport",
    "EndOrderReport",
    "RateElement",
    "RateSet",
    "Rates",
    "StabilityReport",
    "adm_mass_verdict",
    "bootstrap_decay",
    "e_minus_set",
    "e_plus_set",
    "end_order",
    "is_resonance_dominated",
    "linear_stability",
    "resonance_analysis",
    "xi_rates",
    "Report",
    "ReportOptions",
    "build_report",
    "render_csv",
    "render_json",
    "render_text",
    "__version__",
]
