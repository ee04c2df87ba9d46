"""Independent numerical verification layer.

Everything here cross-checks the closed-form layer without reusing its
algebra: a finite-volume Sturm-Liouville eigensolver reproduces the
bound-state lambda^2 sets from the raw potentials; residual evaluators
substitute constructed solutions into the second-order equations and
the coupled first-order systems; a grid commutator check confirms that
the generalized helicity operator commutes with the reduced
Hamiltonian; and a connection-formula check integrates the axial
equation across the interval and compares with the two-term
recombination near y = 1.

Eigensolver design: the radial operators -u'' + V u with V ~ C/r^2 at
the endpoints are discretized after the substitution u = phi * w with
phi carrying the exact endpoint exponents (indicial roots), which turns
the singular problem into a flux-form symmetric tridiagonal matrix on
cell centers; eigenvalues come from LAPACK's deterministic
Sturm-sequence bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigh_tridiagonal, eigvalsh_tridiagonal

from . import lobachevsky as lob
from . import spherical as sph
from .hyp2f1 import KummerBranch, u2_value, u6_value
from .model import (
    Component,
    DomainError,
    EvaluationDomain,
    Geometry,
    ModelConfig,
    SolutionForm,
    SupportTooCloseToSingularity,
    TruncationTooSmall,
    Variable,
    ZeroLambda,
)
from .hyp2f1 import DegenerateConnection

__all__ = [
    "Boundary",
    "Grid1D",
    "Grid2D",
    "ResidualReport",
    "EigenReport",
    "OdeEquation",
    "SystemKind",
    "radial_eigenvalues_h3",
    "radial_eigenvalues_s3",
    "ode_residual",
    "first_order_system_residual",
    "commutator_residual",
    "gaussian_bump_spinor",
    "axial_connection_check",
]

_SINGULAR_INSET = 0.05
_EDGE_TRIM = 3


class Boundary(Enum):
    DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid with `points` nodes on [lo, hi]."""

    lo: float
    hi: float
    points: int

    def __post_init__(self) -> None:
        if not (self.lo < self.hi):
            raise DomainError("grid needs lo < hi")
        if self.points < 16:
            raise DomainError("grid needs at least 16 points")

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / (self.points - 1)

    def nodes(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)

    def refined(self) -> "Grid1D":
        """Same endpoints, halved spacing (nodes nest)."""
        return Grid1D(self.lo, self.hi, 2 * self.points - 1)


@dataclass(frozen=True)
class Grid2D:
    """Tensor grid for (r, z) fields."""

    r_lo: float
    r_hi: float
    z_lo: float
    z_hi: float
    r_points: int
    z_points: int

    def __post_init__(self) -> None:
        if not (self.r_lo < self.r_hi and self.z_lo < self.z_hi):
            raise DomainError("grid needs lo < hi on both axes")
        if min(self.r_points, self.z_points) < 16:
            raise DomainError("grid needs at least 16 points per axis")

    def axes(self) -> Tuple[np.ndarray, np.ndarray]:
        return (np.linspace(self.r_lo, self.r_hi, self.r_points),
                np.linspace(self.z_lo, self.z_hi, self.z_points))

    def scaled(self, factor: int) -> "Grid2D":
        return Grid2D(self.r_lo, self.r_hi, self.z_lo, self.z_hi,
                      self.r_points * factor, self.z_points * factor)


@dataclass(frozen=True)
class ResidualReport:
    """max_abs and l2 are normalized by the sup of the inputs;
    convergence_order (when measured) comes from two finite-difference
    refinements and is floored at 0."""

    max_abs: float
    l2: float
    convergence_order: Optional[float] = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.max_abs) and self.max_abs >= 0):
            raise DomainError("max_abs must be finite and >= 0")
        if not (math.isfinite(self.l2) and self.l2 >= 0):
            raise DomainError("l2 must be finite and >= 0")


@dataclass(frozen=True)
class EigenReport:
    eigenvalues: Tuple[float, ...]
    boundary: Boundary
    truncation: str

    def __post_init__(self) -> None:
        vals = self.eigenvalues
        if any(b < a for a, b in zip(vals, vals[1:])):
            raise DomainError("eigenvalues must be ascending")


class OdeEquation(Enum):
    """Second-order equations the residual evaluator knows.

    Axial, pseudosphere:
        Z'' + tanh z Z' + (p^2 +- i p tanh z - lambda^2 sech^2 z) Z = 0
        ('+' for Z1, '-' for Z2).
    Axial, sphere (the ip sign flips with the stretch derivative):
        Z'' - tan z Z' + (p^2 -+ i p tan z - lambda^2 sec^2 z) Z = 0
        ('-' for Z1, '+' for Z2).
    Radial: -R'' + (mu^2 +- mu') R = lambda^2 R ('+' for R1).
    """

    H3_AXIAL_Z1 = "h3-axial-z1"
    H3_AXIAL_Z2 = "h3-axial-z2"
    H3_RADIAL_R1 = "h3-radial-r1"
    H3_RADIAL_R2 = "h3-radial-r2"
    S3_AXIAL_Z1 = "s3-axial-z1"
    S3_AXIAL_Z2 = "s3-axial-z2"
    S3_RADIAL_R1 = "s3-radial-r1"
    S3_RADIAL_R2 = "s3-radial-r2"


class SystemKind(Enum):
    """First-order systems coupling a (f1, f2) pair through lambda.

    Axial: stretch (f1' + i p f1) = lambda f2,
           stretch (f2' - i p f2) = lambda f1
    with stretch = cosh z / cos z. Radial (same form on both spaces):
    f2' + mu f2 + lambda f1 = 0, f1' - mu f1 - lambda f2 = 0.
    """

    H3_AXIAL = "h3-axial"
    H3_RADIAL = "h3-radial"
    S3_AXIAL = "s3-axial"
    S3_RADIAL = "s3-radial"


# ---------------------------------------------------------------------------
# Eigensolver
# ---------------------------------------------------------------------------


def _h3_weight(r: np.ndarray, s: float) -> np.ndarray:
    return np.tanh(r / 2.0) ** s


def _h3_weight_curvature(r: np.ndarray, s: float) -> np.ndarray:
    """phi''/phi for phi = tanh(r/2)^s."""
    t = np.tanh(r / 2.0)
    sech2 = 1.0 - t * t
    return s * (s - 1) * sech2 * sech2 / (4.0 * t * t) - s * sech2 / 2.0


def _s3_weight(r: np.ndarray, s0: float, spi: float) -> np.ndarray:
    return np.sin(r / 2.0) ** s0 * np.cos(r / 2.0) ** spi


def _s3_weight_curvature(r: np.ndarray, s0: float, spi: float) -> np.ndarray:
    """phi''/phi for phi = sin(r/2)^s0 cos(r/2)^spi."""
    a, b = np.sin(r / 2.0), np.cos(r / 2.0)
    g = s0 * b / (2.0 * a) - spi * a / (2.0 * b)
    return g * g - s0 / (4.0 * a * a) - spi / (4.0 * b * b)


def _weighted_tridiagonal(faces, centers, F, W, v_tilde, h,
                          natural_hi: bool):
    """Flux-form symmetric tridiagonal for -(F w')'/W + v_tilde w.

    F carries the squared endpoint weight on faces (F[0] = 0 encodes
    the regular/limit-point condition at the inner endpoint), W the
    squared weight on centers. A ghost Dirichlet row closes the outer
    end unless natural_hi (used when the outer face itself is a regular
    singular endpoint with F -> 0).
    """
    h2 = h * h
    d = (F[:-1] + F[1:]) / (h2 * W) + v_tilde
    e = -F[1:-1] / (h2 * np.sqrt(W[:-1] * W[1:]))
    if not natural_hi:
        d[-1] = (F[-2] + 2.0 * F[-1]) / (h2 * W[-1]) + v_tilde[-1]
    return d, e


def _bound_mass_guard(d, e, centers, lo, hi) -> None:
    """Raise TruncationTooSmall if the ground state leaks into the
    outer 10% of the domain."""
    _, vecs = eigh_tridiagonal(d, e, select="i", select_range=(0, 0))
    w = np.abs(vecs[:, 0]) ** 2
    tail = centers >= hi - 0.1 * (hi - lo)
    if w[tail].sum() / w.sum() > 1e-6:
        raise TruncationTooSmall(
            "ground state carries > 1e-6 of its mass in the outer 10% "
            "of the truncated domain; increase hi")


def radial_eigenvalues_h3(m: float, B: float, component: Component,
                          grid: Grid1D) -> EigenReport:
    """Bound-state lambda^2 values (below the continuum edge B^2) of
    -R'' + (mu^2 +- mu') R = lambda^2 R on (0, grid.hi).

    grid.lo may be 0: the endpoint exponent max(m, 1-m) (R1; reflected
    for R2) is factored out exactly, so no inner inset is needed.
    """
    if component not in (Component.R1, Component.R2):
        raise DomainError("component must be R1 or R2")
    if grid.lo < 0.0:
        raise DomainError("grid.lo must be >= 0")
    mu_hi = lob.mu_potential(grid.hi, m, B)
    if abs(mu_hi * mu_hi - B * B) > 1e-3 * max(1.0, B * B):
        raise DomainError(
            "grid.hi too small: mu^2 has not reached its asymptote B^2")
    s = max(m, 1.0 - m) if component is Component.R1 else max(-m, 1.0 + m)
    faces = grid.nodes()
    h = grid.spacing
    centers = faces[:-1] + h / 2.0
    F = _h3_weight(faces, s) ** 2
    F[0] = 0.0
    W = _h3_weight(centers, s) ** 2
    v_tilde = (lob.radial_potential(centers, m, B, component)
               - _h3_weight_curvature(centers, s))
    d, e = _weighted_tridiagonal(faces, centers, F, W, v_tilde, h,
                                 natural_hi=False)
    gersh_lo = float(np.min(d - np.abs(np.r_[0.0, e]) - np.abs(np.r_[e, 0.0]))) - 1.0
    vals = eigvalsh_tridiagonal(d, e, select="v",
                                select_range=(gersh_lo, B * B))
    vals = vals[vals < B * B]
    if vals.size:
        _bound_mass_guard(d, e, centers, grid.lo, grid.hi)
    vals = vals[: grid.points - 2]
    return EigenReport(tuple(float(v) for v in vals), Boundary.DIRICHLET,
                       f"r truncated to [{grid.lo:g}, {grid.hi:g}], "
                       f"{grid.points} points")


def radial_eigenvalues_s3(m: float, B: float, component: Component,
                          grid: Grid1D, max_count: int = 8) -> EigenReport:
    """Lowest lambda^2 values of the spherical radial operator on
    (0, pi); the spectrum is fully discrete.

    Endpoint exponents are factored out exactly at both poles, so the
    grid may span the full (0, pi) (lo = 0, hi = pi allowed).
    """
    if component not in (Component.R1, Component.R2):
        raise DomainError("component must be R1 or R2")
    if grid.lo < 0.0 or grid.hi > math.pi + 1e-12:
        raise DomainError("grid must lie within [0, pi]")
    if max_count < 1:
        raise DomainError("max_count must be >= 1")
    if component is Component.R1:
        s0, spi = max(m, 1.0 - m), max(2 * B - m, m + 1.0 - 2 * B)
    else:
        s0, spi = max(-m, 1.0 + m), max(2 * B - m + 1.0, m - 2 * B)
    faces = grid.nodes()
    h = grid.spacing
    centers = faces[:-1] + h / 2.0
    at_pole = grid.hi > math.pi - 1e-9
    F = np.empty_like(faces)
    inner = slice(1, -1 if at_pole else None)
    F[inner] = _s3_weight(faces[inner], s0, spi) ** 2
    F[0] = 0.0
    if at_pole:
        F[-1] = 0.0
    W = _s3_weight(centers, s0, spi) ** 2
    v_tilde = (sph.s3_radial_potential(centers, m, B, component)
               - _s3_weight_curvature(centers, s0, spi))
    d, e = _weighted_tridiagonal(faces, centers, F, W, v_tilde, h,
                                 natural_hi=at_pole)
    k = min(max_count, grid.points - 2, d.size) - 1
    vals = eigvalsh_tridiagonal(d, e, select="i", select_range=(0, k))
    if vals.size and grid.hi < math.pi - 0.01:
        _bound_mass_guard(d, e, centers, grid.lo, grid.hi)
    return EigenReport(tuple(float(v) for v in vals), Boundary.DIRICHLET,
                       f"r truncated to [{grid.lo:g}, {grid.hi:g}], "
                       f"{grid.points} points")


# ---------------------------------------------------------------------------
# ODE residuals
# ---------------------------------------------------------------------------

_AXIAL_EQS = {
    OdeEquation.H3_AXIAL_Z1: (Variable.YZ, +1.0),
    OdeEquation.H3_AXIAL_Z2: (Variable.YZ, -1.0),
    # the ip-term sign flips between the geometries because
    # (1/cos)' = +sin/cos^2 while (1/cosh)' = -sinh/cosh^2
    OdeEquation.S3_AXIAL_Z1: (Variable.YZ_S3, -1.0),
    OdeEquation.S3_AXIAL_Z2: (Variable.YZ_S3, +1.0),
}
_RADIAL_EQS = {
    OdeEquation.H3_RADIAL_R1: (Variable.YR, Component.R1),
    OdeEquation.H3_RADIAL_R2: (Variable.YR, Component.R2),
    OdeEquation.S3_RADIAL_R1: (Variable.YR_S3, Component.R1),
    OdeEquation.S3_RADIAL_R2: (Variable.YR_S3, Component.R2),
}


def _check_domain(solution: SolutionForm, xs: np.ndarray) -> None:
    if solution.params.terminating:
        return
    y = solution.variable.y_of(xs)
    if np.max(np.abs(y)) >= 1.0 - 1e-12:
        raise EvaluationDomain(
            "non-terminating series needs |y| < 1 along the grid image")


def _axial_residual_fn(equation: OdeEquation, p: float, lam: float):
    _, sign = _AXIAL_EQS[equation]
    hyperbolic = equation in (OdeEquation.H3_AXIAL_Z1, OdeEquation.H3_AXIAL_Z2)

    def res(x, g, g1, g2):
        if hyperbolic:
            t, s2 = np.tanh(x), 1.0 / np.cosh(x) ** 2
            return g2 + t * g1 + (p * p + sign * 1j * p * t - lam * lam * s2) * g
        t, s2 = np.tan(x), 1.0 / np.cos(x) ** 2
        return g2 - t * g1 + (p * p + sign * 1j * p * t - lam * lam * s2) * g

    return res


def _radial_residual_fn(equation: OdeEquation, m: float, B: float,
                        lambda_sq: float):
    variable, component = _RADIAL_EQS[equation]
    potential = (lob.radial_potential if variable is Variable.YR
                 else sph.s3_radial_potential)

    def res(x, g, g1, g2):
        return -g2 + (potential(x, m, B, component) - lambda_sq) * g

    return res


def _fd_sup(solution: SolutionForm, grid: Grid1D, res_fn) -> float:
    """Sup of the residual with derivatives replaced by central
    differences of the sampled values (pure finite-difference pathway,
    independent of the analytic derivative formulas)."""
    xs = grid.nodes()
    g = solution.evaluate(xs)
    h = grid.spacing
    g1 = (g[2:] - g[:-2]) / (2.0 * h)
    g2 = (g[2:] - 2.0 * g[1:-1] + g[:-2]) / (h * h)
    r = res_fn(xs[1:-1], g[1:-1], g1, g2)
    scale = float(np.max(np.abs(g)))
    return float(np.max(np.abs(r))) / (scale if scale > 0 else 1.0)


def _order_from(coarse: float, fine: float) -> float:
    if fine <= 0 or coarse <= 0:
        return 0.0
    return max(0.0, math.log2(coarse / fine))


def ode_residual(solution: SolutionForm, equation: OdeEquation, grid: Grid1D,
                 *, p: Optional[float] = None, lam: Optional[float] = None,
                 two_m: Optional[int] = None, B: Optional[float] = None,
                 lambda_sq: Optional[float] = None) -> ResidualReport:
    """Substitute `solution` into the named equation.

    max_abs / l2 use the analytic derivatives of the constructed form
    (term-wise series differentiation plus exact chain rule), so an
    exact solution sits at rounding level; convergence_order is
    measured on the independent finite-difference pathway at h and h/2
    and is ~2 for an exact solution, ~0 for a wrong one.
    """
    if equation in _AXIAL_EQS:
        variable, _ = _AXIAL_EQS[equation]
        if p is None or lam is None:
            raise DomainError("axial equations need p and lam")
        res_fn = _axial_residual_fn(equation, p, lam)
    else:
        variable, _ = _RADIAL_EQS[equation]
        if two_m is None or B is None or lambda_sq is None:
            raise DomainError("radial equations need two_m, B and lambda_sq")
        if variable is Variable.YR and grid.lo <= 0.0:
            raise DomainError("radial grid needs lo > 0 (mu ~ m/r)")
        if variable is Variable.YR_S3 and not (grid.lo > 0.0 and grid.hi < math.pi):
            raise DomainError("spherical radial grid must stay inside (0, pi)")
        res_fn = _radial_residual_fn(equation, two_m / 2.0, B, lambda_sq)
    if solution.variable is not variable:
        raise DomainError(
            f"solution is parametrized on {solution.variable.name}, "
            f"but {equation.value} lives on {variable.name}")
    xs = grid.nodes()
    _check_domain(solution, xs)
    g, g1, g2 = solution.evaluate_with_derivs(xs)
    r = res_fn(xs, g, g1, g2)
    scale = float(np.max(np.abs(g)))
    scale = scale if scale > 0 else 1.0
    order = _order_from(_fd_sup(solution, grid, res_fn),
                        _fd_sup(solution, grid.refined(), res_fn))
    return ResidualReport(float(np.max(np.abs(r))) / scale,
                          float(np.sqrt(grid.spacing * np.sum(np.abs(r) ** 2))) / scale,
                          order)


# ---------------------------------------------------------------------------
# First-order system residuals
# ---------------------------------------------------------------------------


def _system_residual_fns(system: SystemKind, *, p=None, lam=None,
                         two_m=None, B=None):
    if system in (SystemKind.H3_AXIAL, SystemKind.S3_AXIAL):
        if p is None:
            raise DomainError("axial systems need p")
        stretch = np.cosh if system is SystemKind.H3_AXIAL else np.cos

        def res1(x, f1, d1, f2):
            return stretch(x) * (d1 + 1j * p * f1) - lam * f2

        def res2(x, f2, d2, f1):
            return stretch(x) * (d2 - 1j * p * f2) - lam * f1

        return res1, res2
    if two_m is None or B is None:
        raise DomainError("radial systems need two_m and B")
    mu_fn = (lob.mu_potential if system is SystemKind.H3_RADIAL
             else sph.s3_mu_potential)
    m = two_m / 2.0

    def res1(x, f1, d1, f2):
        return d1 - mu_fn(x, m, B) * f1 - lam * f2

    def res2(x, f2, d2, f1):
        return d2 + mu_fn(x, m, B) * f2 + lam * f1

    return res1, res2


def first_order_system_residual(
        pair: Tuple[SolutionForm, SolutionForm, complex], system: SystemKind,
        grid: Grid1D, *, lam: float, p: Optional[float] = None,
        two_m: Optional[int] = None, B: Optional[float] = None) -> ResidualReport:
    """Residual of both coupled equations for (f1, ratio * f2).

    The relative factor is part of the claim under test: the correct
    factor brings both residuals to rounding level; any rescaling
    leaves an O(1) defect.
    """
    if lam == 0.0:
        raise ZeroLambda("first-order systems decouple at lambda = 0")
    sol1, sol2, ratio = pair
    if system in (SystemKind.H3_RADIAL, SystemKind.S3_RADIAL):
        if grid.lo <= 0.0:
            raise DomainError("radial grid needs lo > 0")
        if system is SystemKind.S3_RADIAL and grid.hi >= math.pi:
            raise DomainError("spherical radial grid must stay inside (0, pi)")
    res1_fn, res2_fn = _system_residual_fns(system, p=p, lam=lam,
                                            two_m=two_m, B=B)
    xs = grid.nodes()
    _check_domain(sol1, xs)
    _check_domain(sol2, xs)
    g1, d1, _ = sol1.evaluate_with_derivs(xs)
    g2, d2, _ = sol2.evaluate_with_derivs(xs)
    g2, d2 = ratio * g2, ratio * d2
    r1 = res1_fn(xs, g1, d1, g2)
    r2 = res2_fn(xs, g2, d2, g1)
    scale = max(float(np.max(np.abs(g1))), float(np.max(np.abs(g2))), 1e-300)

    def fd_sup(g: Grid1D) -> float:
        x = g.nodes()
        v1, v2 = sol1.evaluate(x), ratio * sol2.evaluate(x)
        h = g.spacing
        c1 = (v1[2:] - v1[:-2]) / (2.0 * h)
        c2 = (v2[2:] - v2[:-2]) / (2.0 * h)
        rr1 = res1_fn(x[1:-1], v1[1:-1], c1, v2[1:-1])
        rr2 = res2_fn(x[1:-1], v2[1:-1], c2, v1[1:-1])
        s = max(float(np.max(np.abs(v1))), float(np.max(np.abs(v2))), 1e-300)
        return max(float(np.max(np.abs(rr1))), float(np.max(np.abs(rr2)))) / s

    order = _order_from(fd_sup(grid), fd_sup(grid.refined()))
    sup = max(float(np.max(np.abs(r1))), float(np.max(np.abs(r2)))) / scale
    l2 = float(np.sqrt(grid.spacing
                       * (np.sum(np.abs(r1) ** 2) + np.sum(np.abs(r2) ** 2)))) / scale
    return ResidualReport(sup, l2, order)


# ---------------------------------------------------------------------------
# Commutator check
# ---------------------------------------------------------------------------

_SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)


def _gamma(k: int) -> np.ndarray:
    s = (_SIGMA1, _SIGMA2, _SIGMA3)[k - 1]
    g = np.zeros((4, 4), dtype=complex)
    g[:2, 2:] = s
    g[2:, :2] = -s
    return g


_G1, _G2, _G3 = _gamma(1), _gamma(2), _gamma(3)
_G23, _G31, _G12 = _G2 @ _G3, _G3 @ _G1, _G1 @ _G2


def _apply(mat: np.ndarray, psi: np.ndarray) -> np.ndarray:
    return np.einsum("ab,b...->a...", mat, psi)


def gaussian_bump_spinor(r0: float, z0: float, width: float,
                         amplitudes: Sequence[complex] = (1.0, 0.6 - 0.3j,
                                                          -0.4j, 0.25)
                         ) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Product-Gaussian test spinor centered at (r0, z0)."""
    amps = np.asarray(amplitudes, dtype=complex)
    if amps.shape != (4,):
        raise DomainError("need exactly 4 component amplitudes")

    def spinor(r: np.ndarray, z: np.ndarray) -> np.ndarray:
        bump = np.exp(-((r - r0) ** 2 + (z - z0) ** 2) / (2.0 * width ** 2))
        return amps[:, None, None] * bump[None, :, :]

    return spinor


def commutator_residual(model: ModelConfig,
                        test_spinor: Callable[[np.ndarray, np.ndarray], np.ndarray],
                        grid2d: Grid2D, *, two_m: int = 1,
                        flat_helicity: bool = False,
                        levels: int = 3) -> ResidualReport:
    """Grid sup-norm of (H Sigma - Sigma H) psi.

    H = stretch^-1 (i g1 d_r - g2 mu) + i g3 d_z and
    Sigma = stretch^-1 (g23 d_r + i g31 mu) + g12 d_z with
    stretch = cosh z (pseudosphere) or cos z (sphere).

    H Sigma psi is evaluated by composing the finite-difference
    operators; Sigma H psi is evaluated from its hand-expanded
    second-order form, whose coefficients carry the analytic
    derivatives mu'(r) and (1/stretch)'(z) produced by the product
    rule. The two agree iff the expansion (i.e. the cancellation
    making [H, Sigma] = 0) is correct, with the difference shrinking
    at the O(h^2) stencil order. Composing both sides numerically
    would prove nothing: the compositions cancel identically (the
    gamma factors are signed permutations and the commutation is a
    structural operator identity, independent of mu and stretch).

    With flat_helicity=True, Sigma drops the stretch factor (the
    flat-space operator); the expansion is adjusted consistently, so
    the residual then converges to the true nonzero commutator instead
    of 0.

    The reported convergence_order averages log2 ratios over `levels`
    grids (x1, x2, x4 ...); max_abs/l2 come from the finest level.
    """
    if grid2d.r_lo < _SINGULAR_INSET:
        raise SupportTooCloseToSingularity(
            "grid touches the r = 0 coordinate singularity")
    if model.geometry is Geometry.S3:
        if (grid2d.r_hi > math.pi - _SINGULAR_INSET
                or grid2d.z_lo < -math.pi / 2 + _SINGULAR_INSET
                or grid2d.z_hi > math.pi / 2 - _SINGULAR_INSET):
            raise SupportTooCloseToSingularity(
                "grid touches a spherical coordinate singularity")
    if levels < 1:
        raise DomainError("levels must be >= 1")
    m = two_m / 2.0
    hyperbolic = model.geometry is Geometry.H3
    mu_fn = lob.mu_potential if hyperbolic else sph.s3_mu_potential
    mu_prime_fn = (lob.mu_potential_prime if hyperbolic
                   else sph.s3_mu_potential_prime)
    gamma123 = _G1 @ _G2 @ _G3

    def residual_at(g: Grid2D) -> float:
        rs, zs = g.axes()
        R, Z = np.meshgrid(rs, zs, indexing="ij")
        psi = np.asarray(test_spinor(R, Z), dtype=complex)
        if psi.shape != (4,) + R.shape:
            raise DomainError("test spinor must return shape (4, nr, nz)")
        mu = mu_fn(rs, m, model.B)[None, :, None]
        mu_p = mu_prime_fn(rs, m, model.B)[None, :, None]
        stretch = np.cosh(zs) if hyperbolic else np.cos(zs)
        inv = (1.0 / stretch)[None, None, :]
        # d(1/stretch)/dz
        inv_p = (-np.sinh(zs) / np.cosh(zs) ** 2 if hyperbolic
                 else np.sin(zs) / np.cos(zs) ** 2)[None, None, :]

        def d_r(f):
            return np.gradient(f, rs, axis=1, edge_order=2)

        def d_z(f):
            return np.gradient(f, zs, axis=2, edge_order=2)

        def H(f):
            return (inv * (1j * _apply(_G1, d_r(f)) - mu * _apply(_G2, f))
                    + 1j * _apply(_G3, d_z(f)))

        def S(f):
            radial = _apply(_G23, d_r(f)) + 1j * mu * _apply(_G31, f)
            if not flat_helicity:
                radial = inv * radial
            return radial + _apply(_G12, d_z(f))

        psi_r, psi_z = d_r(psi), d_z(psi)
        psi_rr, psi_zz, psi_rz = d_r(psi_r), d_z(psi_z), d_z(psi_r)
        # Sigma H expanded: the radial-radial block collapses to
        # i G psi_rr - mu' g3 psi - i mu^2 G psi (G = g1 g2 g3), the
        # z-derivative of 1/stretch contributes inv' (i g2 psi_r
        # + mu g1 psi), and the mixed terms cancel (curved case) or
        # survive with weight (inv - 1) (flat case).
        block_rr = (1j * _apply(gamma123, psi_rr)
                    - mu_p * _apply(_G3, psi)
                    - 1j * mu * mu * _apply(gamma123, psi))
        block_invp = inv_p * (1j * _apply(_G2, psi_r) + mu * _apply(_G1, psi))
        expanded = 1j * _apply(gamma123, psi_zz) + block_invp
        if flat_helicity:
            expanded = expanded + inv * block_rr + (inv - 1.0) * (
                1j * _apply(_G2, psi_rz) + mu * _apply(_G1, psi_z))
        else:
            expanded = expanded + inv * inv * block_rr
        comm = H(S(psi)) - expanded
        # Trim a fixed *fraction* so every refinement level compares the
        # same physical region (mu' grows like 1/r^2 toward r_lo, so a
        # fixed cell count would slide the window into worse territory).
        tr = max(_EDGE_TRIM, g.r_points // 20)
        tz = max(_EDGE_TRIM, g.z_points // 20)
        core = comm[:, tr:-tr, tz:-tz]
        scale = float(np.max(np.abs(psi))) or 1.0
        return float(np.max(np.abs(core))) / scale

    residuals = [residual_at(grid2d.scaled(2 ** k)) for k in range(levels)]
    orders = [_order_from(a, b) for a, b in zip(residuals, residuals[1:])]
    order = sum(orders) / len(orders) if orders else None
    finest = residuals[-1]
    return ResidualReport(finest, finest, order)


# ---------------------------------------------------------------------------
# Connection-formula check
# ---------------------------------------------------------------------------


def axial_connection_check(p: float, lam: float,
                           grid: Optional[Grid1D] = None) -> ResidualReport:
    """Integrate the hyperbolic axial equation in the y variable from
    y = 0.1 and compare against the two-term recombination around
    y = 1 predicted by the connection coefficients.

    Z(y) = y^((1+ip)/2) (1-y)^(ip/2) F(a, b, c; y) solves
    4 y^2 (1-y)^2 Z'' + 2 y (1-y)(1-2y) Z'
    + (p^2 + i p (2y-1) - 4 lam^2 y (1-y)) Z = 0.
    """
    if p == 0.0:
        raise DomainError("p must be nonzero")
    if lam == 0.0:
        raise DegenerateConnection(
            "lambda = 0 makes the upper parameters coincide (a = b)")
    if grid is None:
        grid = Grid1D(0.90, 0.95, 16)
    if not (0.5 < grid.lo and grid.hi < 1.0):
        raise DomainError("comparison grid must lie in (0.5, 1)")
    sol = lob.h3_axial_solution(p, lam, KummerBranch.U1, Component.Z1)
    params = sol.params
    coeff = lob.h3_axial_connection(p, lam, KummerBranch.U1)

    def rhs(y, state):
        zr, zi, dr, di = state
        z = zr + 1j * zi
        dz = dr + 1j * di
        denom = 4.0 * y * y * (1.0 - y) ** 2
        coef1 = 2.0 * y * (1.0 - y) * (1.0 - 2.0 * y)
        coef0 = p * p + 1j * p * (2.0 * y - 1.0) - 4.0 * lam * lam * y * (1.0 - y)
        d2 = -(coef1 * dz + coef0 * z) / denom
        return [dr, di, d2.real, d2.imag]

    y0 = 0.1
    z0, dz0, _ = sol.derivs_y(y0)
    ys = grid.nodes()
    ivp = solve_ivp(rhs, (y0, grid.hi), [z0.real, z0.imag, dz0.real, dz0.imag],
                    t_eval=ys, method="DOP853", rtol=1e-11, atol=1e-13)
    if not ivp.success:
        raise DomainError(f"integration failed: {ivp.message}")
    z_num = ivp.y[0] + 1j * ivp.y[1]
    pref = ys ** complex(sol.exp_a) * (1.0 - ys) ** complex(sol.exp_c)
    z_pred = pref * np.array(
        [coeff.to_u2 * u2_value(params, y) + coeff.to_u6 * u6_value(params, y)
         for y in ys])
    scale = float(np.max(np.abs(z_pred)))
    diff = np.abs(z_num - z_pred)
    return ResidualReport(float(np.max(diff)) / scale,
                          float(np.sqrt(grid.spacing * np.sum(diff ** 2))) / scale,
                          None)
