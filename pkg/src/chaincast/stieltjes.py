"""Stieltjes transform, reducer, Perron inversion and gap diagnostics.

The reducer phi(d-mu; x) is the boundary sum lim S(x - ie) + S(x + ie),
equivalently twice the principal-value transform; it is the real companion
of the density in every secondary-measure formula.  Two generic evaluation
routes are provided (the Lipschitz-regularized form and the
integrated-by-parts C^1 form) plus closed forms attached to the analytic
weight families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import quadrature
from .errors import (
    BracketFailure,
    EndpointEvaluation,
    GappedMeasure,
    PoleTooClose,
    UnsupportedMeasure,
)
from .measures import Measure
from .orthopoly import RecurrenceCoefficients, orthonormal_table

__all__ = [
    "GUARD_FRACTION",
    "ReducerEvaluator",
    "stieltjes_transform",
    "reducer",
    "perron_invert",
    "find_gap_zero",
    "pade_defect",
]

# Interior evaluation band: x must stay this fraction of the span away from
# the support endpoints, where the reducer diverges logarithmically.  Kept
# tiny so integrals of downstream densities over the band lose only
# O(guard / log^2 guard) mass.
GUARD_FRACTION = 1e-12

# Half-width (fraction of the span) of the band around t = x inside which
# the Lipschitz difference quotient is replaced by the derivative; wider
# than the evaluation guard because it fights cancellation, not divergence.
PV_BAND_FRACTION = 1e-6

# Minimum distance of a real Stieltjes argument from the support.
POLE_GUARD_FRACTION = 1e-8


def _span(m: Measure) -> float:
    s = m.span
    return s if math.isfinite(s) else 1.0


def evaluation_band(m: Measure) -> tuple[float, float]:
    """Interior range on which reducers (and everything built on them:
    sequence densities, residual densities) are evaluated."""
    a, b = m.hull
    g = GUARD_FRACTION * _span(m)
    return a + g, (b - g) if math.isfinite(b) else math.inf


def stieltjes_transform(m: Measure, z: complex) -> complex:
    """S(z) = integral of d-mu(x) / (z - x).

    z must either have a nonzero imaginary part or keep a relative distance
    of 1e-8 from every support interval (PoleTooClose otherwise).  For a
    gapped measure the integral runs interval by interval, so real z inside
    a gap is fine.
    """
    z = complex(z)
    guard = POLE_GUARD_FRACTION * _span(m)
    if z.imag == 0.0:
        x = z.real
        for lo, hi in m.support:
            if lo - guard <= x <= hi + guard:
                raise PoleTooClose(f"z={x} within guard distance of [{lo}, {hi}]")
    total = 0.0 + 0.0j
    for lo, hi in m._effective_intervals(0):
        val, _ = quadrature.integrate(lambda t: m.weight(t) / (z - t), lo, hi,
                                      rel_tol=1e-13)
        total += val
    for pm in m.point_masses:
        total += pm.mass / (z - pm.location)
    return total


@dataclass(frozen=True)
class ReducerEvaluator:
    """Callable reducer bound to a measure.

    method: "auto" | "analytic" | "lipschitz" | "derivative".  "auto" takes
    the family closed form when one exists, otherwise the Lipschitz route.
    """

    measure: Measure
    method: str = "auto"

    def __post_init__(self):
        if self.method not in ("auto", "analytic", "lipschitz", "derivative"):
            raise ValueError(f"unknown reducer method {self.method!r}")
        if not self.measure.gapless:
            raise GappedMeasure("reducer requires a gapless measure")

    def resolved_method(self) -> str:
        if self.method == "auto":
            fam = self.measure.family
            if fam is not None and fam.reducer(np.array([])) is not None:
                return "analytic"
            return "lipschitz"
        return self.method

    def __call__(self, x):
        return reducer(self.measure, x, method=self.method)


def _check_interior(m: Measure, x: np.ndarray) -> None:
    lo, hi = evaluation_band(m)
    hi_ok = x <= hi if math.isfinite(hi) else np.ones_like(x, bool)
    if not np.all((x >= lo) & hi_ok):
        raise EndpointEvaluation(f"reducer needs x in [{lo}, {hi}]")


def _weight_derivative(m: Measure, x: np.ndarray, step: float) -> np.ndarray:
    if m.weight_derivative is not None:
        return np.asarray(m.weight_derivative(x), float)
    return (m.weight(x + step) - m.weight(x - step)) / (2.0 * step)


def _reducer_lipschitz(m: Measure, x: np.ndarray) -> np.ndarray:
    """2 mu(x) ln((x-a)/(b-x)) - 2 int (mu(t)-mu(x))/(t-x) dt.

    Within |t - x| < delta the difference quotient is replaced by mu'(x);
    the quotient is regular there, but the cancellation in mu(t)-mu(x) is
    not worth fighting at machine precision.
    """
    a, b = m.hull
    span = b - a
    delta = PV_BAND_FRACTION * span
    mu_x = np.asarray(m.weight(x), float)
    # finite differences are centered inside the support even when x sits
    # in the evaluation band right next to an endpoint
    step = 0.5 * delta
    dmu_x = _weight_derivative(m, np.clip(x, a + step, b - step), step)

    prev = None
    for level in range(7, quadrature.MAX_LEVEL + 1):
        t, _, _, w = quadrature.map_nodes(level, a, b)
        mu_t = np.asarray(m.weight(t), float)
        diff = t[None, :] - x[:, None]
        near = np.abs(diff) < delta
        quot = np.where(near, dmu_x[:, None],
                        (mu_t[None, :] - mu_x[:, None]) / np.where(near, 1.0, diff))
        cur = quot @ w
        if prev is not None:
            scale = np.abs(cur) + np.abs(mu_x) + 1e-300
            if np.max(np.abs(cur - prev) / scale) < 1e-13:
                break
        prev = cur
    return 2.0 * mu_x * np.log((x - a) / (b - x)) - 2.0 * cur


def _reducer_derivative_form(m: Measure, x: np.ndarray) -> np.ndarray:
    """Integrated-by-parts form,
    2 [mu(a) ln(x-a) - mu(b) ln(b-x) + int mu'(t) ln|t-x| dt].

    Valid only when the weight has a bounded continuous first derivative on
    the closed support (the hypothesis of the underlying identity); weights
    with endpoint-singular derivatives belong to the Lipschitz route.  The
    common ln|x| reference of the printed boundary terms cancels and is
    dropped, so nothing divides by x.
    """
    a, b = m.hull
    span = b - a
    step = 0.5 * PV_BAND_FRACTION * span
    mu_a = float(np.asarray(m.weight(np.asarray(a)), float))
    mu_b = float(np.asarray(m.weight(np.asarray(b)), float))
    out = np.empty_like(x)
    for i, xi in enumerate(x):
        left, _ = quadrature.integrate(
            lambda t, da, db: _weight_derivative(m, t, step) * np.log(db),
            a, xi, rel_tol=1e-12, with_distances=True)
        right, _ = quadrature.integrate(
            lambda t, da, db: _weight_derivative(m, t, step) * np.log(da),
            xi, b, rel_tol=1e-12, with_distances=True)
        out[i] = 2.0 * (mu_a * math.log(xi - a) - mu_b * math.log(b - xi)
                        + left + right)
    return out


def reducer(m: Measure, x, method: str = "auto"):
    """phi(d-mu; x) at interior points of a gapless measure's support."""
    if not m.gapless:
        raise GappedMeasure("reducer requires a gapless measure")
    if m.point_masses:
        raise UnsupportedMeasure("reducer assumes a pure density")
    xs = np.atleast_1d(np.asarray(x, float))
    _check_interior(m, xs)
    if method == "auto":
        method = ReducerEvaluator(m, "auto").resolved_method()
    if method == "analytic":
        if m.family is None:
            raise UnsupportedMeasure("no analytic family attached")
        vals = m.family.reducer(xs)
        if vals is None:
            raise UnsupportedMeasure(
                f"family {m.family!r} has no closed-form reducer")
    elif method == "lipschitz":
        if not m.bounded:
            raise UnsupportedMeasure(
                "numeric reducer needs bounded support; use an analytic family")
        vals = _reducer_lipschitz(m, xs)
    elif method == "derivative":
        if not m.bounded:
            raise UnsupportedMeasure(
                "numeric reducer needs bounded support; use an analytic family")
        vals = _reducer_derivative_form(m, xs)
    else:
        raise ValueError(f"unknown reducer method {method!r}")
    vals = np.asarray(vals, float)
    return vals if np.ndim(x) else float(vals[0])


def perron_invert(m: Measure, x: float, eps: float):
    """(1/2 pi i) [S(x - ie) - S(x + ie)] = (1/pi) Im S(x - ie).

    Approaches the weight at interior Lipschitz points as eps -> 0; used as
    a self-test of the transform, not as a computation path.  The Poisson
    kernel is integrated with the singular point pinned at a panel
    endpoint, so small eps stays resolved.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    total = 0.0
    for lo, hi in m._effective_intervals(0):
        if lo < x < hi:
            pieces = [(lo, x, "end"), (x, hi, "start")]
        elif x <= lo:
            pieces = [(lo, hi, "start")]
        else:
            pieces = [(lo, hi, "end")]
        for a, b, where in pieces:
            # t - x measured from the piece endpoint nearest the pole, so the
            # Poisson kernel stays resolved for small eps.
            def f(t, da, db, a=a, b=b, where=where):
                d = da + (a - x) if where == "start" else db + (x - b)
                return m.weight(t) * eps / (d * d + eps * eps)
            val, _ = quadrature.integrate(f, a, b, rel_tol=1e-12,
                                          with_distances=True)
            total += val
    for pm in m.point_masses:
        total += pm.mass * eps / ((x - pm.location) ** 2 + eps * eps)
    return total / math.pi


def find_gap_zero(m: Measure, gap_index: int = 0):
    """Zero of S inside an interior gap; None for gapless measures.

    S is continuous on the gap with S -> +inf at its left edge and -> -inf
    at its right edge, so a sign change is guaranteed for positive measures.
    """
    if m.gapless:
        return None
    gaps = [(hi, lo2) for (_, hi), (lo2, _) in zip(m.support, m.support[1:])]
    if not 0 <= gap_index < len(gaps):
        raise IndexError(f"gap index {gap_index} outside 0..{len(gaps) - 1}")
    b, c = gaps[gap_index]
    width = c - b
    guard = max(POLE_GUARD_FRACTION * _span(m) * 1.01, 1e-13 * width)

    def s_real(x: float) -> float:
        return stieltjes_transform(m, complex(x)).real

    frac = 1e-3
    lo, hi = b + frac * width, c - frac * width
    f_lo, f_hi = s_real(lo), s_real(hi)
    while f_lo * f_hi > 0 and frac * width > guard:
        frac *= 0.1
        lo, hi = b + max(frac * width, guard), c - max(frac * width, guard)
        f_lo, f_hi = s_real(lo), s_real(hi)
    if f_lo * f_hi > 0:
        raise BracketFailure(
            f"no sign change of S found in gap ({b}, {c}); this should not "
            "happen for a positive measure")
    return float(brentq(s_real, lo, hi, xtol=1e-14 * max(1.0, abs(c)), rtol=8.9e-16))


def pade_defect(m: Measure, rc: RecurrenceCoefficients, n: int, z: float,
                terms: int = 10) -> float:
    """z**(2n+3) * (S(z) - Q_{n+1}(z)/P_{n+1}(z)), evaluated without
    cancellation.

    Uses the identity S(z) - Q_k(z)/P_k(z) = (1/P_k(z)) int P_k(t) d-mu(t)/(z-t)
    with the Cauchy kernel expanded geometrically; orthogonality kills the
    first k terms, so the series starts at the signal instead of recovering
    it from a ~30-digit subtraction.  The defect tends to
    beta_1 * ... * beta_{n+1} as z grows (for a unit-mass measure).
    """
    k = n + 1
    series = 0.0
    for j in range(k, k + terms):
        mj = m.integrate(lambda t: orthonormal_table(rc, k, t)[k] * t**j,
                         poly_degree=k + j)
        series += mj / z ** (j + 1)
    p_z = orthonormal_table(rc, k, np.asarray(z, float))[k]
    q_over_p_remainder = series / float(p_z)
    return z ** (2 * n + 3) * q_over_p_remainder


def secondary_polynomial_by_quadrature(m: Measure, rc: RecurrenceCoefficients,
                                       n: int, x, rule_size: int | None = None):
    """Q_n(x) from its defining integral, via the measure's Gauss rule.

    Oracle used to validate the recurrence seed Q_1 = sqrt(beta_0)/t_0;
    the integrand is a degree-(n-1) polynomial in t, integrated exactly by
    a rule of size >= n.
    """
    from .orthopoly import gauss_rule

    rule = gauss_rule(rc, rule_size or min(rc.n, 2 * n + 2))
    x = np.atleast_1d(np.asarray(x, float))
    pt = orthonormal_table(rc, n, rule.nodes)[n]
    px = orthonormal_table(rc, n, x)[n]
    diff = rule.nodes[None, :] - x[:, None]
    vals = ((pt[None, :] - px[:, None]) / diff) @ rule.weights
    return vals if np.ndim(x) else float(vals[0])
