"""Named verification suites driven by the command-line ``verify``.

Every check is normalized to "value <= threshold passes", so a single
tolerance override can be applied uniformly. Suites:

hyp
    Randomized special-function identities (Euler transformation, both
    contiguous relations, two-term recombination around y = 1).
radial
    Finite-volume eigensolver against the closed-form bound-state
    spectra on both spaces.
axial
    Constructed axial solutions substituted into their second-order
    equations; the spherical quantization rule checked exactly.
commutator
    Convergence order of the helicity-commutator residual, plus the
    flat-operator fault that must fail to converge.
pairs
    First-order systems with the closed-form relative factors, one
    admissible state per variant pair, plus a scaled-factor fault.
flat-limit
    |lambda0^2 - 2 b n| = n^2 / rho^2 verified as an identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import hyp2f1 as hyp
from . import lobachevsky as lob
from . import spherical as sph
from . import oracle
from .model import Component, DomainError, Geometry, ModelConfig, Variant

__all__ = ["CheckResult", "SUITE_NAMES", "run_suites"]

SUITE_NAMES = ("hyp", "radial", "axial", "commutator", "pairs", "flat-limit")

_RNG_SEED = 20250301
_DRAWS = 100


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    threshold: float
    detail: str = ""


def _result(name: str, value: float, threshold: float,
            detail: str = "") -> CheckResult:
    return CheckResult(name, value <= threshold, float(value),
                       float(threshold), detail)


def _random_params(rng: np.random.Generator) -> hyp.Hyp2F1Params:
    """Parameter draw kept >= 0.1 away from the non-positive integers
    that pole the series coefficients or gamma factors."""
    while True:
        a, b, c = (complex(rng.uniform(-5, 5), rng.uniform(-2, 2))
                   for _ in range(3))
        ok = True
        for v in (a, b, c, c - a, c - b, c - a - b, a - b):
            if abs(v - round(v.real)) < 0.1 and abs(v.imag) < 0.1:
                ok = False
        if ok:
            return hyp.Hyp2F1Params(a, b, c)


def _random_y(rng: np.random.Generator, lo=0.2, hi=0.8,
              lens: bool = False) -> complex:
    """Draw y in the annulus lo <= |y| <= hi; with lens=True also keep
    |1 - y| <= hi so series around both 0 and 1 converge comfortably."""
    while True:
        radius = rng.uniform(lo, hi)
        angle = rng.uniform(0, 2 * math.pi)
        y = complex(radius * math.cos(angle), radius * math.sin(angle))
        if not lens or abs(1 - y) <= hi:
            return y


def _suite_hyp(tol: Optional[float]) -> List[CheckResult]:
    rng = np.random.default_rng(_RNG_SEED)
    euler = contig_lo = contig_hi = recon = 0.0
    for _ in range(_DRAWS):
        params = _random_params(rng)
        a, b, c = params.a, params.b, params.c
        y = _random_y(rng)
        f = hyp.eval_2f1(params, y)
        scale = max(1.0, abs(f))
        transformed = ((1 - y) ** (c - a - b)
                       * hyp.eval_2f1(hyp.Hyp2F1Params(c - a, c - b, c), y))
        euler = max(euler, abs(f - transformed) / scale)
        lhs = hyp.contiguous_raise_c(params, y)
        rhs = ((a - c) * (b - c) / c) * hyp.eval_2f1(params.shifted(dc=1), y)
        contig_hi = max(contig_hi, abs(lhs - rhs) / max(1.0, abs(rhs)))
        lhs = hyp.contiguous_lower_c(params, y)
        rhs = ((a - c + 1) * (b - c + 1) / (c - 1)) * f
        contig_lo = max(contig_lo, abs(lhs - rhs) / max(1.0, abs(rhs)))
        y_lens = _random_y(rng, lens=True)
        f_lens = hyp.eval_2f1(params, y_lens)
        coeff = hyp.kummer_connection(params, hyp.KummerBranch.U1)
        t2 = coeff.to_u2 * hyp.u2_value(params, y_lens)
        t6 = coeff.to_u6 * hyp.u6_value(params, y_lens)
        recon = max(recon, abs(f_lens - (t2 + t6))
                    / max(1.0, abs(f_lens), abs(t2), abs(t6)))
    return [
        _result("hyp/euler-transformation", euler, tol or 1e-9,
                f"{_DRAWS} draws"),
        _result("hyp/contiguous-raise", contig_hi, tol or 1e-9,
                f"{_DRAWS} draws"),
        _result("hyp/contiguous-lower", contig_lo, tol or 1e-9,
                f"{_DRAWS} draws"),
        _result("hyp/two-term-recombination", recon, tol or 1e-9,
                f"{_DRAWS} draws, 0.2 <= |y| <= 0.8 and |1 - y| <= 0.8"),
    ]


def _worst_match(found: Sequence[float], targets: Sequence[float]) -> float:
    return max(abs(v - t) / max(1.0, abs(t)) for v, t in zip(found, targets))


def _suite_radial(tol: Optional[float]) -> List[CheckResult]:
    threshold = tol or 0.005
    out = []
    grid_h3 = oracle.Grid1D(0.0, 12.0, 4000)
    rep = oracle.radial_eigenvalues_h3(0.5, 5.0, Component.R1, grid_h3)
    found = [v for v in rep.eigenvalues if v > 1.0]
    out.append(_result("radial/h3-B5-m+1/2",
                       _worst_match(found[:4], [9, 16, 21, 24]), threshold,
                       f"eigenvalues {found[:4]}"))
    rep = oracle.radial_eigenvalues_h3(-0.5, 5.0, Component.R1, grid_h3)
    found = [v for v in rep.eigenvalues if v > 1.0]
    out.append(_result("radial/h3-B5-m-1/2",
                       _worst_match(found[:4], [9, 16, 21, 24]), threshold,
                       f"eigenvalues {found[:4]}"))
    grid_s3 = oracle.Grid1D(0.0, math.pi, 4000)
    rep = oracle.radial_eigenvalues_s3(0.5, 1.0, Component.R1, grid_s3)
    out.append(_result("radial/s3-B1-m+1/2",
                       _worst_match(rep.eigenvalues[1:4], [3.0, 8.0, 15.0]),
                       threshold, f"eigenvalues {rep.eigenvalues[:4]}"))
    rep = oracle.radial_eigenvalues_s3(-0.5, 1.0, Component.R1, grid_s3)
    out.append(_result("radial/s3-B1-m-1/2",
                       _worst_match(rep.eigenvalues[:3], [3.0, 8.0, 15.0]),
                       threshold, f"eigenvalues {rep.eigenvalues[:3]}"))
    return out


def _suite_axial(tol: Optional[float]) -> List[CheckResult]:
    threshold = tol or 1e-8
    out = []
    lam = math.sqrt(3.0)
    worst = 0.0
    exact_p = 0.0
    grid = oracle.Grid1D(-1.0, 1.0, 1500)
    for n_z in range(3):
        p = sph.s3_axial_quantize(lam, n_z)
        exact_p = max(exact_p, abs(p - (lam + n_z + 0.5)))
        z1 = sph.s3_axial_solution(p, lam, Component.Z1)
        z2 = sph.s3_axial_solution(p, lam, Component.Z2)
        r1 = oracle.ode_residual(z1, oracle.OdeEquation.S3_AXIAL_Z1, grid,
                                 p=p, lam=lam)
        r2 = oracle.ode_residual(z2, oracle.OdeEquation.S3_AXIAL_Z2, grid,
                                 p=p, lam=lam)
        worst = max(worst, r1.max_abs, r2.max_abs)
    out.append(_result("axial/s3-polynomial-solutions", worst, threshold,
                       "lam=sqrt(3), n_z=0..2"))
    out.append(_result("axial/s3-quantization-exact", exact_p, 1e-15,
                       "p = lam + n_z + 1/2"))
    p, lam = 0.7, 1.3
    z1 = lob.h3_axial_solution(p, lam, hyp.KummerBranch.U1, Component.Z1)
    z2 = lob.h3_axial_solution(p, lam, hyp.KummerBranch.U1, Component.Z2)
    grid_h = oracle.Grid1D(-2.0, 2.0, 1500)
    r1 = oracle.ode_residual(z1, oracle.OdeEquation.H3_AXIAL_Z1, grid_h,
                             p=p, lam=lam)
    r2 = oracle.ode_residual(z2, oracle.OdeEquation.H3_AXIAL_Z2, grid_h,
                             p=p, lam=lam)
    out.append(_result("axial/h3-series-solutions", max(r1.max_abs, r2.max_abs),
                       threshold, "p=0.7, lam=1.3"))
    orders = [abs(r.convergence_order - 2.0) for r in (r1, r2)]
    out.append(_result("axial/h3-fd-order", max(orders), 0.3,
                       "finite-difference pathway"))
    return out


def _suite_commutator(tol: Optional[float]) -> List[CheckResult]:
    spinor = oracle.gaussian_bump_spinor(2.0, 0.0, 0.5)
    grid = oracle.Grid2D(0.05, 4.0, -2.0, 2.0, 80, 80)
    rep = oracle.commutator_residual(ModelConfig(Geometry.H3, 5.0), spinor,
                                     grid, two_m=1)
    fault = oracle.commutator_residual(ModelConfig(Geometry.H3, 5.0), spinor,
                                       grid, two_m=1, flat_helicity=True)
    spinor_s = oracle.gaussian_bump_spinor(1.5, 0.0, 0.3)
    grid_s = oracle.Grid2D(0.05, math.pi - 0.05, -1.2, 1.2, 80, 80)
    rep_s = oracle.commutator_residual(ModelConfig(Geometry.S3, 1.0), spinor_s,
                                       grid_s, two_m=1)
    return [
        _result("commutator/h3-order", abs(rep.convergence_order - 2.0),
                tol or 0.3, f"order {rep.convergence_order:.3f}"),
        _result("commutator/s3-order", abs(rep_s.convergence_order - 2.0),
                tol or 0.3, f"order {rep_s.convergence_order:.3f}"),
        _result("commutator/flat-fault-detected", fault.convergence_order,
                0.5, f"flat-operator order {fault.convergence_order:.4f} "
                f"(residual {fault.max_abs:.3g} must not converge)"),
    ]


def _suite_pairs(tol: Optional[float]) -> List[CheckResult]:
    threshold = tol or 1e-8
    out = []
    grid_h3 = oracle.Grid1D(0.3, 8.0, 1200)
    grid_s3 = oracle.Grid1D(0.2, math.pi - 0.2, 1200)

    def h3_pair(two_m, B, n, pair, v1, v2):
        entry = lob.h3_quantize(two_m, B, n, Component.R1)
        lam = math.sqrt(entry.lambda_sq)
        s1 = lob.h3_radial_solution(two_m, B, entry.lambda_sq, Component.R1, v1)
        s2 = lob.h3_radial_solution(two_m, B, entry.lambda_sq, Component.R2, v2)
        fac = lob.h3_radial_pair_factor(two_m, B, lam, pair)
        return (s1, s2, fac), dict(lam=lam, two_m=two_m, B=B)

    pair, kw = h3_pair(1, 5.0, 2, lob.RadialPair.V1_V4P, Variant.V1, Variant.V4P)
    base = oracle.first_order_system_residual(pair, oracle.SystemKind.H3_RADIAL,
                                              grid_h3, **kw)
    out.append(_result("pairs/h3-radial-1-4p", base.max_abs, threshold,
                       "B=5, m=1/2, n=2"))
    scaled = oracle.first_order_system_residual(
        (pair[0], pair[1], 2.0 * pair[2]), oracle.SystemKind.H3_RADIAL,
        grid_h3, **kw)
    out.append(_result("pairs/h3-scaled-factor-rejected",
                       base.max_abs / scaled.max_abs, 0.01,
                       f"x2 factor residual {scaled.max_abs:.3g}"))
    pair, kw = h3_pair(-1, 5.0, 1, lob.RadialPair.V2_V3P, Variant.V2, Variant.V3P)
    rep = oracle.first_order_system_residual(pair, oracle.SystemKind.H3_RADIAL,
                                             grid_h3, **kw)
    out.append(_result("pairs/h3-radial-2-3p", rep.max_abs, threshold,
                       "B=5, m=-1/2, n=1"))

    p, lam = 0.7, 1.3
    z1 = lob.h3_axial_solution(p, lam, hyp.KummerBranch.U1, Component.Z1)
    z2 = lob.h3_axial_solution(p, lam, hyp.KummerBranch.U1, Component.Z2)
    fac = lob.h3_axial_pair_factor(p, lam, hyp.KummerBranch.U1)
    rep = oracle.first_order_system_residual(
        (z1, z2, fac), oracle.SystemKind.H3_AXIAL,
        oracle.Grid1D(-2.0, 2.0, 1200), lam=lam, p=p)
    out.append(_result("pairs/h3-axial", rep.max_abs, threshold,
                       "p=0.7, lam=1.3"))

    lam = math.sqrt(3.0)
    p = sph.s3_axial_quantize(lam, 1)
    z1 = sph.s3_axial_solution(p, lam, Component.Z1)
    z2 = sph.s3_axial_solution(p, lam, Component.Z2)
    fac = sph.s3_axial_pair_factor(p, lam)
    rep = oracle.first_order_system_residual(
        (z1, z2, fac), oracle.SystemKind.S3_AXIAL,
        oracle.Grid1D(-1.0, 1.0, 1200), lam=lam, p=p)
    out.append(_result("pairs/s3-axial", rep.max_abs, threshold,
                       "lam=sqrt(3), n_z=1"))

    s3_cases = [
        ("pairs/s3-radial-1-3p", -1, 1.0, 0, sph.RadialPair.V1_V3P,
         Variant.V1, Variant.V3P),
        ("pairs/s3-radial-2-4p", 1, 1.0, 1, sph.RadialPair.V2_V4P,
         Variant.V2, Variant.V4P),
        ("pairs/s3-radial-3-1p", 7, 1.0, 0, sph.RadialPair.V3_V1P,
         Variant.V3, Variant.V1P),
    ]
    for name, two_m, B, n, pair_kind, v1, v2 in s3_cases:
        entry = sph.s3_quantize(two_m, B, n, Component.R1)
        lam = math.sqrt(entry.lambda_sq)
        s1 = sph.s3_radial_solution(two_m, B, entry.lambda_sq, Component.R1, v1)
        s2 = sph.s3_radial_solution(two_m, B, entry.lambda_sq, Component.R2, v2)
        fac = sph.s3_radial_pair_factor(two_m, B, lam, pair_kind)
        rep = oracle.first_order_system_residual(
            (s1, s2, fac), oracle.SystemKind.S3_RADIAL, grid_s3,
            lam=lam, two_m=two_m, B=B)
        out.append(_result(name, rep.max_abs, threshold,
                           f"B={B}, m={two_m}/2, n={n}"))
    return out


def _suite_flat_limit(tol: Optional[float]) -> List[CheckResult]:
    threshold = tol or 1e-12
    worst = 0.0
    for n in (1, 2, 3):
        for rho in (10.0, 30.0, 100.0):
            lam_sq_physical, flat_target = lob.flat_limit(1.0, n, rho)
            gap = abs(lam_sq_physical - flat_target)
            worst = max(worst, abs(gap - n * n / rho ** 2))
    return [_result("flat-limit/quadratic-gap", worst, threshold,
                    "b=1, n in {1,2,3}, rho in {10,30,100}")]


_SUITES = {
    "hyp": _suite_hyp,
    "radial": _suite_radial,
    "axial": _suite_axial,
    "commutator": _suite_commutator,
    "pairs": _suite_pairs,
    "flat-limit": _suite_flat_limit,
}


def run_suites(names: Sequence[str],
               tol: Optional[float] = None) -> List[CheckResult]:
    """Run the named suites ("all" expands to every suite) with an
    optional uniform tolerance override."""
    expanded: List[str] = []
    for name in names:
        if name == "all":
            expanded.extend(SUITE_NAMES)
        elif name in _SUITES:
            expanded.append(name)
        else:
            raise DomainError(f"unknown suite {name!r}; "
                              f"choose from {', '.join(SUITE_NAMES)} or all")
    results: List[CheckResult] = []
    for name in dict.fromkeys(expanded):
        results.extend(_SUITES[name](tol))
    return results
