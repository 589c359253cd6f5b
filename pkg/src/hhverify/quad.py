"""Adaptive quadrature with explicit error estimates.

A Gauss(7)/Kronrod(15) embedded pair drives plain adaptive bisection: a
segment is accepted once the Kronrod-Gauss discrepancy drops below the share
of the tolerance proportional to the segment's width.  All integrals are
signed, so reversed limits need no special casing by callers.  Every routine
enforces an evaluation budget and raises instead of silently truncating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .hmean import HInterval

__all__ = [
    "QuadResult",
    "QuadratureBudgetError",
    "integrate",
    "weighted_integral",
    "reflected_weighted_integral",
    "refinement_double_integral",
]


class QuadratureBudgetError(RuntimeError):
    """The evaluation budget was exhausted before the tolerance was met."""


@dataclass(frozen=True, slots=True)
class QuadResult:
    value: float
    abs_error_estimate: float
    subdivisions: int

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError("integral value is not finite")
        if self.abs_error_estimate < 0.0:
            raise ValueError("error estimate must be nonnegative")


# Gauss(7)/Kronrod(15) abscissae and weights on [-1, 1].
_XGK = (
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993944,
    0.5860872354676911,
    0.4058451513773972,
    0.2077849550078985,
)
_WGK = (
    0.0229353220105292,
    0.0630920926299786,
    0.1047900103222502,
    0.1406532597155259,
    0.1690047266392679,
    0.1903505780647854,
    0.2044329400752989,
    0.2094821410847278,
)
_WG = (
    0.1294849661688697,
    0.2797053914892767,
    0.3818300505051189,
    0.4179591836734694,
)

_NODES = tuple(-x for x in _XGK) + (0.0,) + tuple(reversed(_XGK))
_KWEIGHTS = _WGK[:7] + (_WGK[7],) + tuple(reversed(_WGK[:7]))
# Gauss weights sit on nodes 1, 3, ..., 13; zero elsewhere.
_GWEIGHTS = tuple(
    _WG[min(i, 14 - i) // 2] if i % 2 == 1 else 0.0 for i in range(15)
)


def _gk15(f: Callable[[float], float], lo: float, hi: float) -> tuple[float, float]:
    """One Kronrod-15 application on [lo, hi]; returns (value, |K15 - G7|)."""
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    k = 0.0
    g = 0.0
    for i in range(15):
        fv = f(c + h * _NODES[i])
        k += _KWEIGHTS[i] * fv
        g += _GWEIGHTS[i] * fv
    return h * k, abs(h) * abs(k - g)


def integrate(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_evals: int = 1_000_000,
) -> QuadResult:
    """Signed adaptive integral of ``f`` from ``lo`` to ``hi``.

    A segment of width w is accepted once its local error estimate is below
    ``tol * w / |hi - lo|``, so the accumulated estimate stays below ``tol``
    on success.  Raises :class:`QuadratureBudgetError` after ``max_evals``
    integrand evaluations, and propagates evaluation errors from ``f``.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("integration limits must be finite")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if lo == hi:
        return QuadResult(0.0, 0.0, 0)
    if lo > hi:
        res = integrate(f, hi, lo, tol=tol, max_evals=max_evals)
        return QuadResult(-res.value, res.abs_error_estimate, res.subdivisions)

    span = hi - lo
    width_floor = 1e-14 * max(abs(lo), abs(hi), 1.0)
    evals = 0

    def rule(l: float, r: float) -> tuple[float, float]:
        nonlocal evals
        evals += 15
        if evals > max_evals:
            raise QuadratureBudgetError(
                f"budget of {max_evals} evaluations exhausted on [{lo!r}, {hi!r}]"
            )
        return _gk15(f, l, r)

    total = 0.0
    err_total = 0.0
    accepted = 0
    work = [(lo, hi, *rule(lo, hi))]
    while work:
        l, r, v, e = work.pop()
        w = r - l
        if e <= tol * (w / span) or w <= width_floor:
            total += v
            err_total += e
            accepted += 1
            continue
        m = 0.5 * (l + r)
        work.append((l, m, *rule(l, m)))
        work.append((m, r, *rule(m, r)))
    return QuadResult(total, err_total, accepted)


def weighted_integral(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_evals: int = 1_000_000,
) -> QuadResult:
    """The raw ``integral of f(t)/t^2`` from ``lo`` to ``hi`` (callers apply
    any ``ab/(b-a)`` prefactor themselves)."""
    return integrate(lambda t: f(t) / (t * t), lo, hi, tol=tol, max_evals=max_evals)


def reflected_weighted_integral(
    f: Callable[[float], float],
    interval: HInterval,
    x: float,
    y: float,
    tol: float = 1e-10,
    max_evals: int = 1_000_000,
) -> QuadResult:
    """``integral of f(t)/t^2`` from r(y) to r(x), r the interval reflection.

    By the substitution u = r(t) (du/u^2 = -dt/t^2) this equals the integral
    of f(r(t))/t^2 over [x, y], which is how it enters the split chains.
    """
    return weighted_integral(
        f, interval.reflect(y), interval.reflect(x), tol=tol, max_evals=max_evals
    )


def refinement_double_integral(
    f: Callable[[float], float],
    interval: HInterval,
    tol: float = 1e-9,
    max_outer_evals: int = 100_000,
    inner_max_evals: int = 1_000_000,
) -> QuadResult:
    """Mean over x in [a, b] of  G(x) = [abx/(2ab-(a+b)x)] * int_x^{r(x)} f/t^2.

    G has a removable singularity at the harmonic midpoint x* = 2ab/(a+b):
    the coefficient blows up while the inner integral shrinks, and the
    product tends to f(x*) (from r(x) - x = x(2ab-(a+b)x)/((a+b)x-ab)).
    Nodes within 1e-8 of the relative width of x* use that continuity value.

    The reported error estimate combines the outer rule discrepancies with a
    width-weighted bound on how much the inner quadrature errors can move G.
    """
    a, b = interval.a, interval.b
    span = b - a
    xstar = interval.harmonic_midpoint
    near = 1e-8 * span
    f_star = f(xstar)
    ab = a * b
    s = a + b
    outer_evals = 0

    def g_point(x: float) -> tuple[float, float]:
        if abs(x - xstar) <= near:
            return f_star, 0.0
        r = interval.reflect(x)
        coef = ab * x / (2.0 * ab - s * x)
        # keep |coef| * inner error bounded by tol pointwise
        inner_tol = max(tol * abs(r - x) / abs(x * r), 1e-15)
        inner = weighted_integral(f, x, r, tol=inner_tol, max_evals=inner_max_evals)
        return coef * inner.value, abs(coef) * inner.abs_error_estimate

    def rule(l: float, r: float) -> tuple[float, float, float]:
        nonlocal outer_evals
        outer_evals += 15
        if outer_evals > max_outer_evals:
            raise QuadratureBudgetError(
                f"outer budget of {max_outer_evals} evaluations exhausted on [{a!r}, {b!r}]"
            )
        c = 0.5 * (l + r)
        h = 0.5 * (r - l)
        k = 0.0
        gq = 0.0
        point_err = 0.0
        for i in range(15):
            gv, ge = g_point(c + h * _NODES[i])
            k += _KWEIGHTS[i] * gv
            gq += _GWEIGHTS[i] * gv
            if ge > point_err:
                point_err = ge
        return h * k, h * abs(k - gq), point_err

    width_floor = 1e-14 * max(abs(a), abs(b), 1.0)
    total = 0.0
    err_quad = 0.0
    err_inner = 0.0
    accepted = 0
    work = [(a, b, *rule(a, b))]
    while work:
        l, r, v, e, pe = work.pop()
        w = r - l
        if e <= tol * (w / span) or w <= width_floor:
            total += v
            err_quad += e
            err_inner += pe * w
            accepted += 1
            continue
        m = 0.5 * (l + r)
        work.append((l, m, *rule(l, m)))
        work.append((m, r, *rule(m, r)))
    return QuadResult(total / span, (err_quad + err_inner) / span, accepted)
