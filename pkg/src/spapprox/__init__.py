"""Coefficient-norm approximation toolkit for periodic functions.

Sparse spectra, moduli of smoothness (plain and averaged), multiplier
calculus, sharp direct-estimate constants, and two-sided width certificates,
plus a batch verification CLI (``spapprox``).
"""

from .spectral import (
    COEFF_TOL,
    Exponent,
    GridTooSmallError,
    SpectralFunction,
    SpectrumFormatError,
    best_approximation,
    fourier_from_samples,
    partial_sum,
    sp_norm,
)
from .smoothness import (
    ModulusCurve,
    ModulusGrid,
    ShapeFunction,
    check_shape,
    difference_modulus_oracle,
    generalized_modulus,
    phi_alpha,
    tabulated_shape,
)
from .averaging import (
    WeightMeasure,
    atom_measure,
    averaged_modulus,
    averaged_pow_modulus,
    mu1,
    mu2,
    stieltjes_integral,
    tabulated_density,
    weight_measure,
)
from .psi import (
    MonotoneEvenCheck,
    PsiSequence,
    TailSup,
    ZeroMultiplierError,
    const_multiplier,
    is_monotone_even,
    power,
    psi_derivative,
    psi_integral,
    tabulated_psi,
    tail_sup,
    tail_sup_info,
)
from .jackson import (
    InfReport,
    JacksonBound,
    SharpnessNotCertifiedError,
    SharpnessReport,
    closed_form_inf,
    equiv_condition_check,
    extremal_function,
    inf_quantity,
    jackson_bound,
    shape_mass,
    sharp_constant,
    sharpness_certificate,
)
from .widths import (
    LowerEvidence,
    Majorant,
    MajorantCheck,
    SmoothnessClass,
    UpperEvidence,
    WidthCertificate,
    WidthValue,
    bernstein_radius,
    certify_widths,
    linear_majorant,
    lower_certificate,
    majorant,
    majorant_condition_check,
    membership,
    upper_certificate,
    width_closed_form,
)
from .quadrature import (
    NonFiniteIntegrandError,
    QuadratureBudgetError,
    adaptive_simpson,
)
from .sampling import random_full_spectrum, random_sparse_spectrum

__version__ = "0.1.0"

__all__ = [
    "COEFF_TOL",
    "Exponent",
    "GridTooSmallError",
    "SpectralFunction",
    "SpectrumFormatError",
    "best_approximation",
    "fourier_from_samples",
    "partial_sum",
    "sp_norm",
    "ModulusCurve",
    "ModulusGrid",
    "ShapeFunction",
    "check_shape",
    "difference_modulus_oracle",
    "generalized_modulus",
    "phi_alpha",
    "tabulated_shape",
    "WeightMeasure",
    "atom_measure",
    "averaged_modulus",
    "averaged_pow_modulus",
    "mu1",
    "mu2",
    "stieltjes_integral",
    "tabulated_density",
    "weight_measure",
    "MonotoneEvenCheck",
    "PsiSequence",
    "TailSup",
    "ZeroMultiplierError",
    "const_multiplier",
    "is_monotone_even",
    "power",
    "psi_derivative",
    "psi_integral",
    "tabulated_psi",
    "tail_sup",
    "tail_sup_info",
    "InfReport",
    "JacksonBound",
    "SharpnessNotCertifiedError",
    "SharpnessReport",
    "closed_form_inf",
    "equiv_condition_check",
    "extremal_function",
    "inf_quantity",
    "jackson_bound",
    "shape_mass",
    "sharp_constant",
    "sharpness_certificate",
    "LowerEvidence",
    "Majorant",
    "MajorantCheck",
    "SmoothnessClass",
    "UpperEvidence",
    "WidthCertificate",
    "WidthValue",
    "bernstein_radius",
    "certify_widths",
    "linear_majorant",
    "lower_certificate",
    "majorant",
    "majorant_condition_check",
    "membership",
    "upper_certificate",
    "width_closed_form",
    "NonFiniteIntegrandError",
    "QuadratureBudgetError",
    "adaptive_simpson",
    "random_full_spectrum",
    "random_sparse_spectrum",
]
