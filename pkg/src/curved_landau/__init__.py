"""Bound states of a charged spin-1/2 particle in a uniform magnetic
field on the two curved 3-spaces of constant curvature.

Layers:

* :mod:`curved_landau.hyp2f1` — Gauss-series special functions on
  complex parameters (series, derivatives, connection coefficients,
  contiguous relations).
* :mod:`curved_landau.model` — shared vocabulary: enums, solution
  forms, spectrum/region/report records, error taxonomy.
* :mod:`curved_landau.lobachevsky` — the hyperbolic (pseudosphere)
  model: radial/axial solutions, quantization, pair factors, flat
  limit, helicity link.
* :mod:`curved_landau.spherical` — the spherical model: fully discrete
  two-index spectrum, variant tables, pair factors, total energy.
* :mod:`curved_landau.oracle` — independent numerics: finite-volume
  eigensolvers, ODE/system residuals, commutator convergence, series
  connection integration.
* :mod:`curved_landau.checks` — named verification suites.
* :mod:`curved_landau.cli` — the ``curved-landau`` command.
"""

__version__ = "1.0.0"

from .model import (
    Component,
    DomainError,
    EvaluationDomain,
    Geometry,
    InadmissibleState,
    InadmissibleVariant,
    MasslessUnsupported,
    ModelConfig,
    NegativeDiscriminant,
    NonPositiveLambda,
    NonTerminating,
    QuantumNumbers,
    RegionVerdict,
    SigmaBranch,
    SolutionForm,
    SpectrumEntry,
    SubthresholdEnergy,
    SupportTooCloseToSingularity,
    TruncationTooSmall,
    UnifiedReport,
    Variable,
    Variant,
    ZeroLambda,
)
from .hyp2f1 import (
    ConnectionCoefficients,
    DegenerateConnection,
    Hyp2F1Error,
    Hyp2F1Params,
    InvalidC,
    KummerBranch,
    NonConvergent,
    PoleAtNonPositiveInteger,
    contiguous_lower_c,
    contiguous_raise_c,
    eval_2f1,
    kummer_connection,
    log_gamma,
    series_with_derivatives,
    u2_value,
    u5_value,
    u6_value,
)
from .lobachevsky import (
    RadialPair as H3RadialPair,
    flat_limit,
    h3_admissibility_region,
    h3_axial_connection,
    h3_axial_pair_factor,
    h3_axial_solution,
    h3_quantize,
    h3_radial_pair_factor,
    h3_radial_solution,
    h3_unified_report,
    helicity_link,
    mu_potential,
    mu_potential_prime,
    radial_potential,
)
from .spherical import (
    RadialPair as S3RadialPair,
    s3_admissibility_region,
    s3_axial_pair_factor,
    s3_axial_quantize,
    s3_axial_solution,
    s3_mu_potential,
    s3_mu_potential_prime,
    s3_quantize,
    s3_radial_pair_factor,
    s3_radial_potential,
    s3_radial_solution,
    s3_total_energy,
    s3_unified_report,
)
from .oracle import (
    Boundary,
    EigenReport,
    Grid1D,
    Grid2D,
    OdeEquation,
    ResidualReport,
    SystemKind,
    axial_connection_check,
    commutator_residual,
    first_order_system_residual,
    gaussian_bump_spinor,
    ode_residual,
    radial_eigenvalues_h3,
    radial_eigenvalues_s3,
)
from .checks import CheckResult, SUITE_NAMES, run_suites

__all__ = [
    "__version__",
    # model
    "Component", "DomainError", "EvaluationDomain", "Geometry",
    "InadmissibleState", "InadmissibleVariant", "MasslessUnsupported",
    "ModelConfig", "NegativeDiscriminant", "NonPositiveLambda",
    "NonTerminating", "QuantumNumbers", "RegionVerdict", "SigmaBranch",
    "SolutionForm", "SpectrumEntry", "SubthresholdEnergy",
    "SupportTooCloseToSingularity", "TruncationTooSmall", "UnifiedReport",
    "Variable", "Variant", "ZeroLambda",
    # hyp2f1
    "ConnectionCoefficients", "DegenerateConnection", "Hyp2F1Error",
    "Hyp2F1Params", "InvalidC", "KummerBranch", "NonConvergent",
    "PoleAtNonPositiveInteger", "contiguous_lower_c", "contiguous_raise_c",
    "eval_2f1", "kummer_connection", "log_gamma", "series_with_derivatives",
    "u2_value", "u5_value", "u6_value",
    # lobachevsky
    "H3RadialPair", "flat_limit", "h3_admissibility_region",
    "h3_axial_connection", "h3_axial_pair_factor", "h3_axial_solution",
    "h3_quantize", "h3_radial_pair_factor", "h3_radial_solution",
    "h3_unified_report", "helicity_link", "mu_potential",
    "mu_potential_prime", "radial_potential",
    # spherical
    "S3RadialPair", "s3_admissibility_region", "s3_axial_pair_factor",
    "s3_axial_quantize", "s3_axial_solution", "s3_mu_potential",
    "s3_mu_potential_prime", "s3_quantize", "s3_radial_pair_factor",
    "s3_radial_potential", "s3_radial_solution", "s3_total_energy",
    "s3_unified_report",
    # oracle
    "Boundary", "EigenReport", "Grid1D", "Grid2D", "OdeEquation",
    "ResidualReport", "SystemKind", "axial_connection_check",
    "commutator_residual", "first_order_system_residual",
    "gaussian_bump_spinor", "ode_residual", "radial_eigenvalues_h3",
    "radial_eigenvalues_s3",
    # checks
    "CheckResult", "SUITE_NAMES", "run_suites",
]
