"""Inequality chains as numeric term sequences with quadrature error bars.

Each evaluator returns a :class:`ChainReport`: an ordered list of terms, the
pairwise slacks (right minus left, sign-flipped for the concave direction),
and a pass/fail flag that only trips when a slack is negative beyond the
tolerance plus the adjacent error bars.

Several of the displays these chains verify circulate in print with
coefficient slips that contradict their own derivations (an extra 1/2 on a
reflected integral, a missing weight application, a swapped coefficient in a
product bound).  Every affected evaluator therefore supports
``variant="as_printed"`` (the display as commonly printed) and
``variant="derived_corrected"`` (the form forced by the derivation, and the
only one under which constant functions give all-equal terms).  The default
is always ``derived_corrected`` and reports name their variant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from . import fnspec
from .hmean import HInterval, sym_transform
from .quad import (
    integrate,
    refinement_double_integral,
    reflected_weighted_integral,
    weighted_integral,
)

__all__ = [
    "HFunction",
    "IDENTITY_H",
    "ChainTerm",
    "ChainReport",
    "VARIANTS",
    "chain_hh_classic",
    "chain_harmonic_hh",
    "bounds_pointwise",
    "chain_subinterval",
    "chain_reflected_pair",
    "chain_refinement",
    "chain_harmonic_full",
    "product_inequalities",
    "chain_h_subinterval",
    "bounds_h_pointwise",
    "weighted_bounds",
]

VARIANTS = ("derived_corrected", "as_printed")
DEFAULT_TOL = 1e-8
DEFAULT_QUAD_TOL = 1e-10


def _check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, not {variant!r}")
    return variant


@dataclass(frozen=True)
class HFunction:
    """A nonnegative weight function on (0, 1) with its two derived scalars:
    the value at 1/2 (every lower bound divides by 2*h(1/2)) and the integral
    over [0, 1] (every upper bound multiplies by it)."""

    fn: Callable[[float], float] = field(compare=False)
    source: str
    name: str
    h_half: float
    h_int: float

    def __call__(self, t: float) -> float:
        return self.fn(t)

    @classmethod
    def from_source(cls, text: str, name: Optional[str] = None, quad_tol: float = 1e-12) -> "HFunction":
        spec = fnspec.parse(text)
        return cls.from_callable(spec, name=name or text, source=text, quad_tol=quad_tol)

    @classmethod
    def from_callable(
        cls,
        fn: Callable[[float], float],
        name: str,
        source: str = "",
        quad_tol: float = 1e-12,
    ) -> "HFunction":
        for k in range(1, 32):
            v = fn(k / 32.0)
            if v < 0.0:
                raise ValueError(f"weight function is negative at {k / 32.0}: {v!r}")
        h_half = fn(0.5)
        if not h_half > 0.0:
            raise ValueError(f"h(1/2) must be positive, got {h_half!r}")
        h_int = integrate(fn, 0.0, 1.0, tol=quad_tol).value
        if not h_int > 0.0:
            raise ValueError("weight function must not be identically zero")
        return cls(fn=fn, source=source or name, name=name, h_half=h_half, h_int=h_int)

    def to_dict(self) -> dict:
        return {"name": self.name, "source": self.source, "h_half": self.h_half, "h_int": self.h_int}


IDENTITY_H = HFunction.from_source("x", name="t")


@dataclass(frozen=True, slots=True)
class ChainTerm:
    label: str
    value: float
    abs_error: float = 0.0


@dataclass(frozen=True)
class ChainReport:
    chain_id: str
    variant: str
    direction: str  # "convex" | "concave"
    terms: tuple[ChainTerm, ...]
    slacks: tuple[float, ...]
    slack_errors: tuple[float, ...]
    tol: float
    passed: bool
    metadata: dict

    @classmethod
    def build(
        cls,
        chain_id: str,
        variant: str,
        direction: str,
        terms: list[ChainTerm],
        tol: float,
        metadata: Optional[dict] = None,
    ) -> "ChainReport":
        if direction not in ("convex", "concave"):
            raise ValueError(f"direction must be 'convex' or 'concave', not {direction!r}")
        sign = 1.0 if direction == "convex" else -1.0
        slacks = tuple(
            sign * (terms[i + 1].value - terms[i].value) for i in range(len(terms) - 1)
        )
        errors = tuple(
            terms[i].abs_error + terms[i + 1].abs_error for i in range(len(terms) - 1)
        )
        passed = all(s >= -(tol + e) for s, e in zip(slacks, errors))
        return cls(
            chain_id=chain_id,
            variant=variant,
            direction=direction,
            terms=tuple(terms),
            slacks=slacks,
            slack_errors=errors,
            tol=tol,
            passed=passed,
            metadata=metadata or {},
        )

    def term_values(self) -> tuple[float, ...]:
        return tuple(t.value for t in self.terms)

    def to_dict(self) -> dict:
        return {
            "chain": self.chain_id,
            "variant": self.variant,
            "direction": self.direction,
            "terms": [
                {"label": t.label, "value": t.value, "abs_error": t.abs_error}
                for t in self.terms
            ],
            "slacks": list(self.slacks),
            "slack_error_bars": list(self.slack_errors),
            "tol": self.tol,
            "passed": self.passed,
            "metadata": self.metadata,
        }


def _source_of(f) -> Optional[str]:
    return getattr(f, "source", None) or getattr(f, "name", None)


def _meta(f, interval: Optional[HInterval] = None, **extra) -> dict:
    meta: dict = {}
    src = _source_of(f)
    if src is not None:
        meta["f"] = src
    if interval is not None:
        meta["a"] = interval.a
        meta["b"] = interval.b
    for key, value in extra.items():
        if value is None:
            continue
        if isinstance(value, HFunction):
            meta[key] = value.name
        elif callable(value):
            meta[key] = _source_of(value) or "<callable>"
        else:
            meta[key] = value
    return meta


def _endpoint_avg(f, interval: HInterval) -> float:
    return 0.5 * (f(interval.a) + f(interval.b))


# --- plain and harmonic Hermite-Hadamard chains ------------------------------


def chain_hh_classic(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = DEFAULT_TOL,
    quad_tol: float = DEFAULT_QUAD_TOL,
    direction: str = "convex",
) -> ChainReport:
    """Classic three-term chain for plain convexity:
    f((lo+hi)/2)  <=  mean of f  <=  (f(lo)+f(hi))/2."""
    if not lo < hi:
        raise ValueError(f"need lo < hi, got {lo!r}, {hi!r}")
    mean = integrate(f, lo, hi, tol=quad_tol)
    scale = 1.0 / (hi - lo)
    terms = [
        ChainTerm("midpoint", f(0.5 * (lo + hi))),
        ChainTerm("integral_mean", scale * mean.value, scale * mean.abs_error_estimate),
        ChainTerm("endpoint_avg", 0.5 * (f(lo) + f(hi))),
    ]
    return ChainReport.build(
        "hh_classic", "derived_corrected", direction, terms, tol, _meta(f, lo=lo, hi=hi)
    )


def chain_harmonic_hh(
    f: Callable[[float], float],
    interval: HInterval,
    tol: float = DEFAULT_TOL,
    quad_tol: float = DEFAULT_QUAD_TOL,
    direction: str = "convex",
) -> ChainReport:
    """Harmonic Hermite-Hadamard chain (chain id t1):
    f(2ab/(a+b))  <=  (ab/(b-a)) * int_a^b f/t^2  <=  (f(a)+f(b))/2."""
    a, b = interval.a, interval.b
    wi = weighted_integral(f, a, b, tol=quad_tol)
    scale = a * b / (b - a)
    terms = [
        ChainTerm("midpoint", f(interval.harmonic_midpoint)),
        ChainTerm("weighted_mean", scale * wi.value, abs(scale) * wi.abs_error_estimate),
        ChainTerm("endpoint_avg", _endpoint_avg(f, interval)),
    ]
    return ChainReport.build("t1", "derived_corrected", direction, terms, tol, _meta(f, interval))


def bounds_pointwise(
    f: Callable[[float], float],
    interval: HInterval,
    x: float,
    tol: float = DEFAULT_TOL,
    direction: str = "convex",
) -> ChainReport:
    """Pointwise sandwich for the symmetric part (chain id t2):
    f(2ab/(a+b))  <=  sym(f)(x)  <=  (f(a)+f(b))/2."""
    fb = sym_transform(f, interval)
    terms = [
        ChainTerm("midpoint", f(interval.harmonic_midpoint)),
        ChainTerm("symmetric_value", fb(x)),
        ChainTerm("endpoint_avg", _endpoint_avg(f, interval)),
    ]
    return ChainReport.build("t2", "derived_corrected", direction, terms, tol, _meta(f, interval, x=x))


def chain_subinterval(
    f: Callable[[float], float],
    interval: HInterval,
    x: float,
    y: float,
    tol: float = DEFAULT_TOL,
    quad_tol: float = DEFAULT_QUAD_TOL,
    variant: str = "derived_corrected",
    direction: str = "convex",
) -> ChainReport:
    """Subinterval chain for the symmetric part (chain id t3).

    Left: the symmetric part at the harmonic midpoint of {x, y}, written out
    as a two-point average of f.  Right: the four-point endpoint average.
    Middle: (xy/(2(y-x))) * [int_x^y f/t^2  +  int_{r(y)}^{r(x)} f/t^2].

    The derivation forces both integrals unweighted (the symmetric part
    contributes exactly half of each), and constants then give all-equal
    terms.  The as_printed variant carries the extra 1/2 some displays put on
    the reflected integral, which already breaks f == const.
    """
    _check_variant(variant)
    if x == y:
        raise ValueError("need x != y")
    a, b = interval.a, interval.b
    mid_xy = 2.0 * x * y / (x + y)
    left = 0.5 * (f(mid_xy) + f(interval.reflect(mid_xy)))
    i_plain = weighted_integral(f, x, y, tol=quad_tol)
    i_refl = reflected_weighted_integral(f, interval, x, y, tol=quad_tol)
    w2 = 0.5 if variant == "as_printed" else 1.0
    coef = x * y / (2.0 * (y - x))
    middle = coef * (i_plain.value + w2 * i_refl.value)
    mid_err = abs(coef) * (i_plain.abs_error_estimate + w2 * i_refl.abs_error_estimate)
    right = 0.25 * (
        f(x) + f(interval.reflect(x)) + f(y) + f(interval.reflect(y))
    )
    terms = [
        ChainTerm("sym_midpoint_pair", left),
        ChainTerm("split_weighted_mean", middle, mid_err),
        ChainTerm("four_point_avg", right),
    ]
    return ChainReport.build("t3", variant, direction, terms, tol, _meta(f, interval, x=x, y=y))


def chain_reflected_pair(
    f: Callable[[float], float],
    interval: HInterval,
    x: float,
    tol: float = DEFAULT_TOL,
    quad_tol: float = DEFAULT_QUAD_TOL,
    variant: str = "derived_corrected",
    direction: str = "convex",
) -> ChainReport:
    """Chain id r2: the subinterval chain with y = r(x).

    f(2ab/(a+b))  <=  [abx/(2ab-(a+b)x)] * int_x^{r(x)} f/t^2
                  <=  (f(x)+f(r(x)))/2.

    Constants force the middle coefficient shown above; the as_printed
    variant halves it.  x must avoid the harmonic midpoint, where the
    coefficient denominator vanishes.
    """
    _check_variant(variant)
    a, b = interval.a, interval.b
    xstar = interval.harmonic_midpoint
    if abs(x - xstar) <= 1e-12 * interval.width:
        raise ValueError(f"x={x!r} coincides with the excluded harmonic midpoint")
    rx = interval.reflect(x)
    coef = a * b * x / (2.0 * a * b - (a + b) * x)
    if variant == "as_printed":
        coef *= 0.5
    inner = weighted_integral(f, x, rx, tol=quad_tol)
    terms = [
        ChainTerm("midpoint", f(xstar)),
        ChainTerm("reflected_span_mean", coef * inner.value, abs(coef) * inner.abs_error_estimate),
        ChainTerm("pair_avg", 0.5 * (f(x) + f(rx))),
    ]
    return ChainReport.build("r2", variant, direction, terms, tol, _meta(f, interval, x=x))


def chain_refinement(
    f: Callable[[float], float],
    interval: HInterval,
    h: Optional[HFunction] = None,
    tol: float = DEFAULT_TOL,
    quad_tol: float = 1e-9,
    variant: str = "derived_corrected",
    direction: str = "convex",
) -> ChainReport:
    """Chain id r4: the reflected-pair chain averaged over x in [a, b].

    f(2ab/(a+b))  <=  mean_x G(x)  <=  mean_x sym(f)(x),

    with G as in :func:`hhverify.quad.refinement_double_integral`.  This
    refines the first link of the t1 chain.  With a weight function h the
    left term is scaled by 1/(2h(1/2)) and the right one by 2*int_0^1 h.

    as_printed halves the double-integral mean (plain form), or halves the
    left and right scalings and quarters the middle (weighted form).
    """
    _check_variant(variant)
    fb = sym_transform(f, interval)
    dbl = refinement_double_integral(f, interval, tol=quad_tol)
    mean_fb = integrate(fb, interval.a, interval.b, tol=quad_tol)
    scale = 1.0 / interval.width
    left = f(interval.harmonic_midpoint)
    middle, mid_err = dbl.value, dbl.abs_error_estimate
    right, right_err = scale * mean_fb.value, scale * mean_fb.abs_error_estimate
    if h is not None:
        left = left / (2.0 * h.h_half)
        right, right_err = 2.0 * h.h_int * right, 2.0 * h.h_int * right_err
    if variant == "as_printed":
        if h is None:
            middle, mid_err = 0.5 * middle, 0.5 * mid_err
        else:
            left = 0.5 * left
            middle, mid_err = 0.25 * middle, 0.25 * mid_err
            right, right_err = 0.5 * right, 0.5 * right_err
    terms = [
        ChainTerm("scaled_midpoint", left),
        ChainTerm("double_integral_mean", middle, mid_err),
        ChainTerm("scaled_sym_mean", right, right_err),
    ]
    return ChainReport.build("r4", variant, direction, terms, tol, _meta(f, interval, h=h))


def chain_harmonic_full(
    f: Callable[[float], float],
    interval: HInterval,
    x: float,
    y: float,
    tol: float = DEFAULT_TOL,
    quad_tol: float = DEFAULT_QUAD_TOL,
    direction: str = "convex",
) -> ChainReport:
    """Chain id r3: for plainly harmonic convex f the global midpoint value
    also sits below the t3 chain, giving four terms."""
    base = chain_subinterval(
        f, interval, x, y, tol=tol, quad_tol=quad_tol, direction=direction
    )
    terms = [ChainTerm("midpoint", f(interval.harmonic_midpoint))] + list(base.terms)
    return ChainReport.build("r3", "derived_corrected", direction, terms, tol, _meta(f, interval, x=x, y=y))


# --- product of a harmonic convex and a symmetrized harmonic convex function -


def product_inequalities(
    f: Callable[[float], float],
    g: Callable[[float], float],
    interval: HInterval,
    tol: float = DEFAULT_TOL,
    quad_tol: float = DEFAULT_QUAD_TOL,
    variant: str = "derived_corrected",
) -> tuple[ChainReport, ChainReport]:
    """Chain id t4: two-sided bounds on W = (ab/(b-a)) int sym(f)*g/t^2.

    Lower report:  Af*Ig + Ag*If - Af*Ag  <=  W   with Af = (f(a)+f(b))/2,
    Ag likewise, and If, Ig the weighted means of f and g.

    Upper report:  W  <=  Ag*If + f(m)*Ig - f(m)*Ag,  m the harmonic
    midpoint.  Expanding the underlying product of nonnegative factors
    forces the first coefficient to be Ag; the as_printed variant uses f(m)
    there as some displays do (constants mask the difference, affine f
    exposes it).

    Both hold with the same orientation when f and g are both convex-type or
    both concave-type for their classes, so reports carry direction
    "convex" either way.
    """
    _check_variant(variant)
    a, b = interval.a, interval.b
    scale = a * b / (b - a)
    avg_f = _endpoint_avg(f, interval)
    avg_g = _endpoint_avg(g, interval)
    f_mid = f(interval.harmonic_midpoint)
    fb = sym_transform(f, interval)
    i_f = weighted_integral(f, a, b, tol=quad_tol)
    i_g = weighted_integral(g, a, b, tol=quad_tol)
    i_fg = integrate(lambda t: fb(t) * g(t) / (t * t), a, b, tol=quad_tol)
    w_val = scale * i_fg.value
    w_err = abs(scale) * i_fg.abs_error_estimate

    lower_combo = avg_f * scale * i_g.value + avg_g * scale * i_f.value - avg_f * avg_g
    lower_err = abs(avg_f * scale) * i_g.abs_error_estimate + abs(avg_g * scale) * i_f.abs_error_estimate
    lower = ChainReport.build(
        "t4_lower",
        variant,
        "convex",
        [
            ChainTerm("cross_combination", lower_combo, lower_err),
            ChainTerm("weighted_product_mean", w_val, w_err),
        ],
        tol,
        _meta(f, interval, g=g),
    )

    first_coef = f_mid if variant == "as_printed" else avg_g
    upper_combo = first_coef * scale * i_f.value + f_mid * scale * i_g.value - f_mid * avg_g
    upper_err = abs(first_coef * scale) * i_f.abs_error_estimate + abs(f_mid * scale) * i_g.abs_error_estimate
    upper = ChainReport.build(
        "t4_upper",
        variant,
        "convex",
        [
            ChainTerm("weighted_product_mean", w_val, w_err),
            ChainTerm("upper_combination", upper_combo, upper_err),
        ],
        tol,
        _meta(f, interval, g=g),
    )
    return lower, upper


# --- weighted (h-convex) chains ----------------------------------------------


def chain_h_subinterval(
    f: Callable[[float], float],
    h: HFunction,
    interval: HInterval,
    x: float,
    y: float,
    tol: float = DEFAULT_TOL,
    quad_tol: float = DEFAULT_QUAD_TOL,
    direction: str = "convex",
) -> ChainReport:
    """Chain id t5: the subinterval chain for h-convex symmetric parts.

    Left term scaled by 1/(4h(1/2)), right term by the integral of h; the
    middle is identical to the t3 middle with both integrals unweighted.
    With h(t) = t this reduces exactly to the corrected t3 chain.
    """
    if x == y:
        raise ValueError("need x != y")
    mid_xy = 2.0 * x * y / (x + y)
    left = (f(mid_xy) + f(interval.reflect(mid_xy))) / (4.0 * h.h_half)
    i_plain = weighted_integral(f, x, y, tol=quad_tol)
    i_refl = reflected_weighted_integral(f, interval, x, y, tol=quad_tol)
    coef = x * y / (2.0 * (y - x))
    middle = coef * (i_plain.value + i_refl.value)
    mid_err = abs(coef) * (i_plain.abs_error_estimate + i_refl.abs_error_estimate)
    right = (
        0.5
        * (f(x) + f(interval.reflect(x)) + f(y) + f(interval.reflect(y)))
        * h.h_int
    )
    terms = [
        ChainTerm("h_scaled_midpoint_pair", left),
        ChainTerm("split_weighted_mean", middle, mid_err),
        ChainTerm("h_scaled_four_point_avg", right),
    ]
    return ChainReport.build(
        "t5", "derived_corrected", direction, terms, tol, _meta(f, interval, x=x, y=y, h=h)
    )


def _barycentric_weights(interval: HInterval, x: float) -> tuple[float, float]:
    """Weights (w1, w2) with w1 + w2 = 1 such that x is the harmonic
    combination of (a, b) carrying weight w1 on the value at b."""
    a, b = interval.a, interval.b
    den = x * (a - b)
    return b * (a - x) / den, a * (x - b) / den


def bounds_h_pointwise(
    f: Callable[[float], float],
    h: HFunction,
    interval: HInterval,
    x: float,
    tol: float = DEFAULT_TOL,
    variant: str = "derived_corrected",
    direction: str = "convex",
) -> ChainReport:
    """Chain id t6: pointwise h-weighted sandwich for the symmetric part.

    f(2ab/(a+b)) / (2h(1/2))  <=  sym(f)(x)  <=  [h(w1) + h(w2)] * (f(a)+f(b))/2

    where (w1, w2) are the harmonic barycentric weights of x.  The
    derivation applies h to both weights; the as_printed variant leaves the
    first weight bare, as one circulated display does.  With h(t) = t the
    weights sum to one and the t2 chain reappears.
    """
    _check_variant(variant)
    fb = sym_transform(f, interval)
    w1, w2 = _barycentric_weights(interval, x)
    first = w1 if variant == "as_printed" else h(w1)
    upper = (first + h(w2)) * _endpoint_avg(f, interval)
    terms = [
        ChainTerm("h_scaled_midpoint", f(interval.harmonic_midpoint) / (2.0 * h.h_half)),
        ChainTerm("symmetric_value", fb(x)),
        ChainTerm("h_weighted_endpoint_avg", upper),
    ]
    return ChainReport.build("t6", variant, direction, terms, tol, _meta(f, interval, x=x, h=h))


def weighted_bounds(
    f: Callable[[float], float],
    h: HFunction,
    w: Callable[[float], float],
    interval: HInterval,
    tol: float = DEFAULT_TOL,
    quad_tol: float = DEFAULT_QUAD_TOL,
    variant: str = "derived_corrected",
    direction: str = "convex",
) -> ChainReport:
    """Chain id c1: the t6 sandwich integrated against a weight w >= 0.

    f(m)/(2h(1/2)) * int w  <=  (1/2) int w(t) [f(t) + f(r(t))] dt
                             <=  (f(a)+f(b))/2 * int [h(w1(t)) + h(w2(t))] w(t) dt.

    The derived right-hand side keeps both weight evaluations under the
    integral (Jacobian-safe).  The as_printed variant instead uses
    int h(w1(t)) [w(t) + w(r(t))] dt, whose change of variables silently
    drops the factor r(t)^2/t^2; both right-hand values and their deviation
    are recorded in the metadata either way.
    """
    _check_variant(variant)
    a, b = interval.a, interval.b
    for k in range(65):
        t = a + (b - a) * k / 64.0
        if w(t) < 0.0:
            raise ValueError(f"weight w is negative at t={t!r}")
    avg_f = _endpoint_avg(f, interval)
    int_w = integrate(w, a, b, tol=quad_tol)
    mid_mass = integrate(
        lambda t: w(t) * (f(t) + f(interval.reflect(t))), a, b, tol=quad_tol
    )

    def corrected_weight(t: float) -> float:
        w1, w2 = _barycentric_weights(interval, t)
        return (h(w1) + h(w2)) * w(t)

    def printed_weight(t: float) -> float:
        w1, _ = _barycentric_weights(interval, t)
        return h(w1) * (w(t) + w(interval.reflect(t)))

    int_corr = integrate(corrected_weight, a, b, tol=quad_tol)
    int_printed = integrate(printed_weight, a, b, tol=quad_tol)
    right = int_printed if variant == "as_printed" else int_corr
    meta = _meta(f, interval, h=h, w=w)
    meta["right_derived_corrected"] = avg_f * int_corr.value
    meta["right_as_printed"] = avg_f * int_printed.value
    meta["printed_right_deviation"] = avg_f * (int_printed.value - int_corr.value)
    terms = [
        ChainTerm(
            "scaled_midpoint_mass",
            f(interval.harmonic_midpoint) / (2.0 * h.h_half) * int_w.value,
            abs(f(interval.harmonic_midpoint) / (2.0 * h.h_half)) * int_w.abs_error_estimate,
        ),
        ChainTerm("weighted_sym_mean", 0.5 * mid_mass.value, 0.5 * mid_mass.abs_error_estimate),
        ChainTerm("h_weighted_endpoint_bound", avg_f * right.value, abs(avg_f) * right.abs_error_estimate),
    ]
    return ChainReport.build("c1", variant, direction, terms, tol, meta)
