"""Complex Gauss hypergeometric engine.

Series evaluation of 2F1 with complex parameters (including the
terminating polynomial cases that carry all bound states), a
self-contained principal-branch log-gamma, Kummer connection
coefficients between the y ~ 0 and y ~ 1 solution bases, and the two
contiguous-parameter derivative identities used to couple first-order
solution pairs.

Everything here is pure and reentrant: no caching, no mutation of
shared state.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

__all__ = [
    "Hyp2F1Error",
    "NonConvergent",
    "InvalidC",
    "PoleAtNonPositiveInteger",
    "DegenerateConnection",
    "KummerBranch",
    "Hyp2F1Params",
    "ConnectionCoefficients",
    "eval_2f1",
    "series_with_derivatives",
    "log_gamma",
    "kummer_connection",
    "u2_value",
    "u5_value",
    "u6_value",
    "contiguous_lower_c",
    "contiguous_raise_c",
]

_TERM_TOL = 1e-12     # distance to a non-positive integer that counts as exact
_SERIES_TOL = 1e-16   # relative term size considered converged
_SERIES_CAP = 10_000  # hard cap on summed terms


class Hyp2F1Error(ValueError):
    """Base class for hypergeometric-engine failures."""


class NonConvergent(Hyp2F1Error):
    """Series does not converge (|y| >= 1 non-terminating, or cap hit)."""


class InvalidC(Hyp2F1Error):
    """(c)_k vanishes before the series terminates."""


class PoleAtNonPositiveInteger(Hyp2F1Error):
    """log_gamma evaluated at a pole of Gamma."""


class DegenerateConnection(Hyp2F1Error):
    """c-a-b is an integer: logarithmic Kummer case, not computed."""


class KummerBranch(Enum):
    """Which of Kummer's y ~ 0 solutions is being connected: U1 is the
    plain series F(a,b,c;y), U5 is y^(1-c) F(a+1-c, b+1-c, 2-c; y)."""

    U1 = "u1"
    U5 = "u5"


def _nonpos_int_degree(x: complex) -> Optional[int]:
    """n >= 0 such that x is (numerically) -n, else None."""
    if abs(x.imag) > _TERM_TOL:
        return None
    k = round(x.real)
    if abs(x.real - k) <= _TERM_TOL and k <= 0:
        return -k
    return None


def _require_finite(*vals: complex) -> None:
    for v in vals:
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise Hyp2F1Error("non-finite parameter or argument")


@dataclass
class Hyp2F1Params:
    """Parameter triple (a, b, c) of F(a,b,c;y).

    `terminating` is set iff a or b is a non-positive real integer to
    within 1e-12; `degree` is then the polynomial degree (the smaller
    one if both qualify). Construction rejects c at a non-positive
    integer unless the series terminates before the vanishing
    denominator term.
    """

    a: complex
    b: complex
    c: complex
    terminating: bool = field(init=False)
    degree: Optional[int] = field(init=False)

    def __post_init__(self) -> None:
        self.a = complex(self.a)
        self.b = complex(self.b)
        self.c = complex(self.c)
        _require_finite(self.a, self.b, self.c)
        degs = [d for d in (_nonpos_int_degree(self.a), _nonpos_int_degree(self.b))
                if d is not None]
        self.degree = min(degs) if degs else None
        self.terminating = self.degree is not None
        q = _nonpos_int_degree(self.c)
        if q is not None and (self.degree is None or self.degree > q):
            raise InvalidC(
                f"c = {self.c} is a non-positive integer and the series "
                f"does not terminate before the vanishing denominator")

    def shifted(self, da: int = 0, db: int = 0, dc: int = 0) -> "Hyp2F1Params":
        return Hyp2F1Params(self.a + da, self.b + db, self.c + dc)


@dataclass(frozen=True)
class ConnectionCoefficients:
    """Gamma-built coefficients mapping a y ~ 0 solution onto the
    y ~ 1 basis {U2, U6}."""

    to_u2: complex
    to_u6: complex


def _series_array(params: Hyp2F1Params, y: np.ndarray, dmax: int):
    """F and its first dmax y-derivatives, summed simultaneously over an
    array of arguments. Terminating series are summed exactly; otherwise
    convergence requires every element's terms to stay below _SERIES_TOL
    relative for 3 consecutive terms."""
    a, b, c = params.a, params.b, params.c
    y = np.asarray(y, dtype=complex)
    out = [np.zeros(y.shape, dtype=complex) for _ in range(dmax + 1)]
    if params.terminating and params.degree == 0:
        out[0][...] = 1.0
        return out
    term = np.ones(y.shape, dtype=complex)
    # y appears in denominators of the derivative accumulators; guard
    # exact zeros (the series derivatives at y=0 are handled via the k
    # offset below, and 0-division never contributes there).
    ysafe = np.where(y == 0, 1.0, y)
    k = 0
    calm = 0
    while True:
        out[0] += term
        if dmax >= 1 and k >= 1:
            out[1] += k * term / ysafe
        if dmax >= 2 and k >= 2:
            out[2] += k * (k - 1) * term / ysafe**2
        if params.terminating and k >= params.degree:
            break
        if not params.terminating:
            scale = np.maximum(np.abs(out[0]), 1.0)
            if np.all(np.abs(term) <= _SERIES_TOL * scale):
                calm += 1
                if calm >= 3:
                    break
            else:
                calm = 0
            if k >= _SERIES_CAP:
                raise NonConvergent(
                    f"series cap {_SERIES_CAP} hit at |y|max = "
                    f"{float(np.max(np.abs(y))):.6g}")
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1))) * y
        k += 1
    if dmax >= 1:
        # derivative contributions at exact y = 0 reduce to single terms
        zero = (y == 0)
        if np.any(zero):
            out[1][zero] = a * b / c
            if dmax >= 2:
                num = a * (a + 1) * b * (b + 1)
                out[2][zero] = 0.0 if num == 0 else num / (c * (c + 1))
    return out


def eval_2f1(params: Hyp2F1Params, y: complex) -> complex:
    """Gauss series F(a,b,c;y).

    Terminating parameter sets are summed exactly (valid for all y);
    otherwise |y| < 1 is required and summation stops once the relative
    term stays below 1e-16 for 3 consecutive terms (cap 10,000).
    """
    y = complex(y)
    _require_finite(y)
    if not params.terminating and abs(y) >= 1.0:
        raise NonConvergent(f"|y| = {abs(y):.6g} >= 1 and series does not terminate")
    return complex(_series_array(params, np.array(y), 0)[0])


def series_with_derivatives(params: Hyp2F1Params, y) -> tuple:
    """(F, dF/dy, d2F/dy2) by term-wise differentiated series; y may be
    a scalar or an array. Same domain rules as eval_2f1."""
    arr = np.asarray(y, dtype=complex)
    _require_finite(complex(np.max(np.abs(arr))))
    if not params.terminating and float(np.max(np.abs(arr))) >= 1.0:
        raise NonConvergent("series argument leaves |y| < 1")
    f0, f1, f2 = _series_array(params, arr, 2)
    if np.isscalar(y) or arr.shape == ():
        return complex(f0), complex(f1), complex(f2)
    return f0, f1, f2


# Bernoulli numbers B_2..B_14 for the asymptotic log-gamma tail
_BERNOULLI = (
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6,
)
_LOG_2PI = math.log(2.0 * math.pi)


def log_gamma(z: complex) -> complex:
    """Principal-branch log Gamma.

    Conjugate reflection into the upper half plane, upward recurrence
    until Re z >= 8, then the Stirling series with fixed Bernoulli
    coefficients through B_14. Relative accuracy ~1e-13 on |z| <= 100.
    """
    z = complex(z)
    _require_finite(z)
    if _nonpos_int_degree(z) is not None and abs(z.imag) <= 1e-13:
        raise PoleAtNonPositiveInteger(f"Gamma pole at z = {z}")
    if z.imag < 0.0:
        return log_gamma(z.conjugate()).conjugate()
    acc = 0.0 + 0.0j
    while z.real < 8.0:
        acc -= cmath.log(z)
        z += 1.0
    s = (z - 0.5) * cmath.log(z) - z + 0.5 * _LOG_2PI
    w = 1.0 / z
    w2 = w * w
    t = w
    for n, bern in enumerate(_BERNOULLI, start=1):
        s += bern / (2 * n * (2 * n - 1)) * t
        t *= w2
    return acc + s


def _gamma_ratio(num, den) -> complex:
    """exp(sum log Gamma(num) - sum log Gamma(den))."""
    s = 0.0 + 0.0j
    for z in num:
        s += log_gamma(z)
    for z in den:
        s -= log_gamma(z)
    return cmath.exp(s)


def kummer_connection(params: Hyp2F1Params,
                      which: KummerBranch) -> ConnectionCoefficients:
    """Connection coefficients expanding U1 or U5 over the y ~ 1 basis:

        U1 = [G(c)G(c-a-b)/(G(c-a)G(c-b))] U2 + [G(c)G(a+b-c)/(G(a)G(b))] U6
        U5 = [G(2-c)G(c-a-b)/(G(1-a)G(1-b))] U2
             + [G(2-c)G(a+b-c)/(G(a+1-c)G(b+1-c))] U6

    Raises DegenerateConnection when c-a-b is an integer (logarithmic
    case); Gamma poles in the coefficient arguments propagate as
    PoleAtNonPositiveInteger.
    """
    a, b, c = params.a, params.b, params.c
    cab = c - a - b
    if abs(cab.imag) <= _TERM_TOL and abs(cab.real - round(cab.real)) <= _TERM_TOL:
        raise DegenerateConnection(f"c-a-b = {cab} is an integer")
    if which is KummerBranch.U1:
        return ConnectionCoefficients(
            to_u2=_gamma_ratio((c, cab), (c - a, c - b)),
            to_u6=_gamma_ratio((c, -cab), (a, b)),
        )
    return ConnectionCoefficients(
        to_u2=_gamma_ratio((2 - c, cab), (1 - a, 1 - b)),
        to_u6=_gamma_ratio((2 - c, -cab), (a + 1 - c, b + 1 - c)),
    )


def u2_value(params: Hyp2F1Params, y: complex) -> complex:
    """U2 = F(a, b, a+b-c+1; 1-y), the y ~ 1 solution analytic at y=1."""
    a, b, c = params.a, params.b, params.c
    return eval_2f1(Hyp2F1Params(a, b, a + b - c + 1), 1 - complex(y))


def u6_value(params: Hyp2F1Params, y: complex) -> complex:
    """U6 = (1-y)^(c-a-b) F(c-a, c-b, c-a-b+1; 1-y)."""
    a, b, c = params.a, params.b, params.c
    y = complex(y)
    cab = c - a - b
    return (1 - y) ** cab * eval_2f1(Hyp2F1Params(c - a, c - b, cab + 1), 1 - y)


def u5_value(params: Hyp2F1Params, y: complex) -> complex:
    """U5 = y^(1-c) F(a+1-c, b+1-c, 2-c; y), the second y ~ 0 solution."""
    a, b, c = params.a, params.b, params.c
    y = complex(y)
    return y ** (1 - c) * eval_2f1(Hyp2F1Params(a + 1 - c, b + 1 - c, 2 - c), y)


def contiguous_lower_c(params: Hyp2F1Params, y: complex) -> complex:
    """Left-hand side of the c-lowering contiguous identity,

        (c-1-a-b) F(a,b,c-1;y) + (1-y) F'(a,b,c-1;y)
            = ((a-c+1)(b-c+1)/(c-1)) F(a,b,c;y),

    evaluated by term-wise differentiated series. (This is the raise
    identity reindexed c -> c-1; the constant prefix is the one that
    balances the leading coefficients at y = 0.)
    """
    a, b, c = params.a, params.b, params.c
    if abs(c - 1) <= _TERM_TOL:
        raise InvalidC("c = 1: lowered parameter hits the denominator pole")
    low = Hyp2F1Params(a, b, c - 1)
    y = complex(y)
    f, fp, _ = series_with_derivatives(low, y)
    return (c - 1 - a - b) * f + (1 - y) * fp


def contiguous_raise_c(params: Hyp2F1Params, y: complex) -> complex:
    """Left-hand side of the c-raising contiguous identity,

        (c-a-b) F(a,b,c;y) + (1-y) F'(a,b,c;y)
            = ((a-c)(b-c)/c) F(a,b,c+1;y),

    evaluated by term-wise differentiated series.
    """
    a, b, c = params.a, params.b, params.c
    if abs(c) <= _TERM_TOL:
        raise InvalidC("c = 0")
    y = complex(y)
    f, fp, _ = series_with_derivatives(params, y)
    return (c - a - b) * f + (1 - y) * fp
