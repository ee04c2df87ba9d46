"""Shared domain types for the two curved-space models.

Half-integer azimuthal numbers are stored as odd integers two_m = 2m so
variant-range tests are exact. SolutionForm carries the universal shape
y^A (1-y)^C F(a,b,c;y) together with the coordinate-to-y map, and can
evaluate itself and its first two coordinate derivatives in closed form
(series derivatives plus exact chain rule), which is what the residual
oracles consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .hyp2f1 import Hyp2F1Params, series_with_derivatives

__all__ = [
    "DomainError",
    "ZeroLambda",
    "InadmissibleVariant",
    "InadmissibleState",
    "SubthresholdEnergy",
    "MasslessUnsupported",
    "NonTerminating",
    "NonPositiveLambda",
    "NegativeDiscriminant",
    "EvaluationDomain",
    "TruncationTooSmall",
    "SupportTooCloseToSingularity",
    "Geometry",
    "Component",
    "Variant",
    "SigmaBranch",
    "Variable",
    "ModelConfig",
    "QuantumNumbers",
    "SolutionForm",
    "SpectrumEntry",
    "RegionVerdict",
    "UnifiedReport",
]


class DomainError(ValueError):
    """Argument outside the mathematical domain of the operation."""


class ZeroLambda(DomainError):
    """Pair construction at lambda = 0: the first-order system decouples."""


class InadmissibleVariant(DomainError):
    """Requested variant is outside its m-range or finiteness rule."""


class InadmissibleState(DomainError):
    """Quantum numbers do not label an admissible bound state."""


class SubthresholdEnergy(DomainError):
    """epsilon < M: no real momentum."""


class MasslessUnsupported(DomainError):
    """M = 0 breaks the helicity-link ratio (division by mass)."""


class NonTerminating(DomainError):
    """Hypergeometric factor does not terminate where finiteness needs it."""


class NonPositiveLambda(DomainError):
    """lambda <= 0 on the canonical branch; use the symmetric branch."""


class NegativeDiscriminant(DomainError):
    """Square-root argument of a quantization relation is negative."""


class EvaluationDomain(DomainError):
    """Variable transform leaves the convergence domain of the series."""


class TruncationTooSmall(ValueError):
    """Eigenfunction mass leaks into the truncated tail of the grid."""


class SupportTooCloseToSingularity(ValueError):
    """2D check grid touches a coordinate singularity."""


class Geometry(Enum):
    H3 = "h3"
    S3 = "s3"


class Component(Enum):
    R1 = "r1"
    R2 = "r2"
    Z1 = "z1"
    Z2 = "z2"


class Variant(Enum):
    """Solution-variant tags. Unprimed variants belong to R1, primed to
    R2. The hyperbolic model uses V1/V2 and V3P/V4P; the spherical model
    uses V1/V2/V3 and V1P/V3P/V4P."""

    V1 = "1"
    V2 = "2"
    V3 = "3"
    V1P = "1p"
    V3P = "3p"
    V4P = "4p"


class SigmaBranch(Enum):
    MINUS_P = "minus_p"
    PLUS_P = "plus_p"


class Variable(Enum):
    """Coordinate-to-argument maps for the four solution families."""

    YZ = "yz"        # y = (1 + tanh z)/2,  z real        -> y in (0,1)
    YR = "yr"        # y = (1 + cosh r)/2,  r > 0         -> y in (1,inf)
    YZ_S3 = "yz_s3"  # y = (1 + i tan z)/2, |z| < pi/2    -> Re y = 1/2
    YR_S3 = "yr_s3"  # y = (1 + cos r)/2,   r in (0,pi)   -> y in (0,1)

    def y_of(self, x):
        x = np.asarray(x, dtype=float)
        if self is Variable.YZ:
            return (1.0 + np.tanh(x)) / 2.0 + 0.0j
        if self is Variable.YR:
            return (1.0 + np.cosh(x)) / 2.0 + 0.0j
        if self is Variable.YZ_S3:
            return (1.0 + 1j * np.tan(x)) / 2.0
        return (1.0 + np.cos(x)) / 2.0 + 0.0j

    def dy_dx(self, x):
        x = np.asarray(x, dtype=float)
        if self is Variable.YZ:
            return 0.5 / np.cosh(x) ** 2 + 0.0j
        if self is Variable.YR:
            return np.sinh(x) / 2.0 + 0.0j
        if self is Variable.YZ_S3:
            return 0.5j / np.cos(x) ** 2
        return -np.sin(x) / 2.0 + 0.0j

    def d2y_dx2(self, x):
        x = np.asarray(x, dtype=float)
        if self is Variable.YZ:
            return -np.tanh(x) / np.cosh(x) ** 2 + 0.0j
        if self is Variable.YR:
            return np.cosh(x) / 2.0 + 0.0j
        if self is Variable.YZ_S3:
            return 1j * np.tan(x) / np.cos(x) ** 2
        return -np.cos(x) / 2.0 + 0.0j


@dataclass
class ModelConfig:
    """Geometry, field strength B (= eB in curvature-radius units),
    particle mass M >= 0, curvature radius rho > 0."""

    geometry: Geometry
    B: float
    M: float = 0.0
    rho: float = 1.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.B):
            raise DomainError("B must be finite")
        if not (self.M >= 0.0 and math.isfinite(self.M)):
            raise DomainError("M must be >= 0")
        if not (self.rho > 0.0 and math.isfinite(self.rho)):
            raise DomainError("rho must be > 0")


@dataclass
class QuantumNumbers:
    two_m: int
    n: int = 0
    n_z: int = 0
    sigma_branch: SigmaBranch = SigmaBranch.MINUS_P
    variant: Optional[Variant] = None

    def __post_init__(self) -> None:
        if self.two_m % 2 == 0:
            raise DomainError(f"two_m = {self.two_m} must be odd (m half-integer)")
        if self.n < 0 or self.n_z < 0:
            raise DomainError("n and n_z must be >= 0")

    @property
    def m(self) -> float:
        return self.two_m / 2.0


@dataclass
class SolutionForm:
    """y^exp_a (1-y)^exp_c F(a,b,c;y) on the variable's coordinate line.

    Powers are principal-branch; on Yr (y > 1) the factor (1-y)^exp_c
    therefore carries the constant phase exp(i*pi*exp_c). Pair factors
    are stated for exactly this convention.
    """

    exp_a: complex
    exp_c: complex
    params: Hyp2F1Params
    variable: Variable

    def value_y(self, y):
        f = series_with_derivatives(self.params, y)[0]
        y = np.asarray(y, dtype=complex)
        return y ** self.exp_a * (1 - y) ** self.exp_c * f

    def derivs_y(self, y):
        """(G, dG/dy, d2G/dy2) for the full form G."""
        y = np.asarray(y, dtype=complex)
        f0, f1, f2 = series_with_derivatives(self.params, y)
        A, C = self.exp_a, self.exp_c
        pref = y ** A * (1 - y) ** C
        lg1 = A / y - C / (1 - y)
        lg2 = A * (A - 1) / y**2 - 2 * A * C / (y * (1 - y)) + C * (C - 1) / (1 - y) ** 2
        g0 = pref * f0
        g1 = pref * (lg1 * f0 + f1)
        g2 = pref * (lg2 * f0 + 2 * lg1 * f1 + f2)
        return g0, g1, g2

    def evaluate(self, x):
        """Form value at coordinate points (z or r per `variable`)."""
        return self.value_y(self.variable.y_of(x))

    def evaluate_with_derivs(self, x):
        """(G, dG/dx, d2G/dx2) via exact chain rule through y(x)."""
        y = self.variable.y_of(x)
        g0, gy, gyy = self.derivs_y(y)
        y1 = self.variable.dy_dx(x)
        y2 = self.variable.d2y_dx2(x)
        return g0, gy * y1, gyy * y1**2 + gy * y2


@dataclass
class SpectrumEntry:
    """One quantized level. p is None for the hyperbolic model (the
    axial momentum stays continuous there); epsilon is populated only
    when p is known. lambda_sq is None when no variant covers (m, B)."""

    lambda_sq: Optional[float]
    p: Optional[float]
    epsilon: Optional[float]
    variant: Optional[Variant]
    admissible: bool
    violated: Optional[str] = None


@dataclass
class RegionVerdict:
    """Admissibility verdict plus the figure predicate for cross-checks."""

    admissible: bool
    variant: Optional[Variant]
    violated: Optional[str]
    predicate: float
    note: str = ""


@dataclass
class UnifiedReport:
    """Unified-formula right-hand side vs the variant formula.

    discrepancy = |unified_rhs| - variant_rhs (the magnitude comparison
    absorbs the sign convention of the square root); flagged when the
    residual offset exceeds 1e-9.
    """

    unified_rhs: float
    variant_rhs: Optional[float]
    variant: Optional[Variant]
    discrepancy: Optional[float]
    flagged: Optional[bool]
