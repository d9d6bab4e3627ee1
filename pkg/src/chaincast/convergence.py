"""Szego classification, asymptotic limits and terminal spectral densities.

If the transformed weight M^q has an integrable logarithm against the
equilibrium density of its support interval (the Szego condition), the
chain coefficients converge,

    alpha_n -> (G_q(w_max) + G_q(w_min)) / 2,
    beta_n  -> (G_q(w_max) - G_q(w_min))^2 / 16,

and the residual spectral densities converge weakly to the Wigner
semicircle (particle) or Rubin (phonon) terminal density.  Gapped or
unbounded spectral densities are never in the class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import quadrature
from .chainmap import chain_coefficients, mapping_kernel, measure_from_sd
from .errors import NotInSzegoClass, UnsupportedMapping
from .measures import SemicircleWeight, SpectralDensity
from .residual import ResidualDensity

__all__ = [
    "SzegoVerdict",
    "ConvergenceReport",
    "szego_check",
    "asymptotic_limits",
    "terminal_sd",
    "convergence_report",
]


@dataclass(frozen=True)
class SzegoVerdict:
    in_class: bool
    reason: str | None = None          # "unbounded" | "gapped" | "log_divergence"
    integral: float | None = None      # last exclusion value when computed

    def __str__(self) -> str:
        return "in_class" if self.in_class else f"out_of_class({self.reason})"


def szego_check(J: SpectralDensity, q: float) -> SzegoVerdict:
    """Verdict on int ln M^q(x) dx / sqrt((B-x)(x-A)) > -inf.

    Unbounded or gapped supports are classified immediately.  Otherwise the
    integral is evaluated on shrinking endpoint exclusions
    delta_k = 10^-k (B-A), k = 2..6; the verdict is in_class when the
    increments between consecutive exclusions decay (geometric ratio < 0.95),
    which distinguishes an integrable log singularity from divergence.
    """
    if not J.bounded:
        return SzegoVerdict(False, "unbounded")
    if not J.gapless:
        return SzegoVerdict(False, "gapped")
    m = measure_from_sd(J, q)
    a, b = m.hull
    span = b - a

    def integrand(x):
        w = np.maximum(np.asarray(m.weight(x), float), 1e-300)
        return np.log(w) / np.sqrt((b - x) * (x - a))

    values = []
    for k in range(2, 7):
        delta = 10.0 ** (-k) * span
        val, _ = quadrature.integrate(integrand, a + delta, b - delta,
                                      rel_tol=1e-11)
        values.append(val)
    inc = np.abs(np.diff(values))
    if np.all(inc < 1e-9 * (1.0 + abs(values[-1]))):
        return SzegoVerdict(True, integral=values[-1])
    ratios = inc[1:] / np.maximum(inc[:-1], 1e-300)
    if np.all(ratios < 0.95):
        return SzegoVerdict(True, integral=values[-1])
    return SzegoVerdict(False, "log_divergence", integral=values[-1])


def asymptotic_limits(J: SpectralDensity, q: float) -> tuple[float, float]:
    """(alpha_inf, beta_inf) of the chain coefficients for a Szego-class J."""
    verdict = szego_check(J, q)
    if not verdict.in_class:
        raise NotInSzegoClass(str(verdict))
    kernel = mapping_kernel(q)
    lo, hi = J.hull
    g_lo, g_hi = kernel.G(lo), kernel.G(hi)
    return 0.5 * (g_hi + g_lo), (g_hi - g_lo) ** 2 / 16.0


def terminal_sd(J: SpectralDensity, q: int) -> SpectralDensity:
    """Weak limit of the residual sequence: Wigner semicircle (particle)
    or the Rubin-model density (phonon), on the support of J."""
    if q not in (0, 1):
        raise UnsupportedMapping("terminal densities exist for q in {0, 1}")
    verdict = szego_check(J, q)
    if not verdict.in_class:
        raise NotInSzegoClass(str(verdict))
    lo, hi = J.hull
    if q == 0:
        fam = SemicircleWeight(0.5, lo, hi)
        return SpectralDensity(fam.weight, ((lo, hi),), ((0.5, 0.5),),
                               m0_family=SemicircleWeight(0.5 / math.pi, lo, hi))

    def rubin(w):
        w = np.asarray(w, float)
        rad = (w * w - lo * lo) * (hi * hi - w * w)
        return 0.5 * np.sqrt(np.maximum(rad, 0.0))

    left_exp = 1.0 if lo == 0.0 else 0.5
    return SpectralDensity(rubin, ((lo, hi),), ((left_exp, 0.5),),
                           m1_family=SemicircleWeight(0.5 / math.pi,
                                                      lo * lo, hi * hi))


@dataclass(frozen=True)
class ConvergenceReport:
    """Coefficient limits, deviations, and weak-convergence moment gaps.

    alpha_deviation[n] = |alpha_n - alpha_inf| (n = 0..); beta_deviation[n]
    starts at n = 1 (beta_0 carries the mass, not chain structure).
    terminal_moment_gap[n] holds |C_k(J_n) - C_k(J_T)| for k = 0..K over the
    computed residual orders n = 1...  hopping_ratio is the observable
    alpha_n / sqrt(beta_{n+1}), reported for every input without any claim
    attached (it appears to settle even off the Szego class).
    """

    szego: SzegoVerdict
    q: float
    alpha: np.ndarray
    beta: np.ndarray
    alpha_limit: float | None = None
    beta_limit: float | None = None
    alpha_deviation: np.ndarray = field(default_factory=lambda: np.empty(0))
    beta_deviation: np.ndarray = field(default_factory=lambda: np.empty(0))
    terminal_moment_gap: dict[int, np.ndarray] = field(default_factory=dict)
    hopping_ratio: np.ndarray = field(default_factory=lambda: np.empty(0))

    def gap_aggregate(self, k_max: int = 4) -> np.ndarray:
        """max_k |C_k(J_n) - C_k(J_T)| per order n, the monotone summary."""
        orders = sorted(self.terminal_moment_gap)
        return np.array([self.terminal_moment_gap[n][:k_max + 1].max()
                         for n in orders])


def _density_moments(f, lo: float, hi: float, k_max: int) -> np.ndarray:
    out = np.empty(k_max + 1)
    for k in range(k_max + 1):
        val, _ = quadrature.integrate(
            lambda x: np.asarray(f(x), float) * x**k, lo, hi, rel_tol=1e-11)
        out[k] = val
    return out


def convergence_report(J: SpectralDensity, q: float, n: int,
                       residual_orders: int = 4, moment_order: int = 8,
                       method: str = "auto") -> ConvergenceReport:
    """Assemble coefficients, Szego verdict, limits and moment gaps.

    Moment gaps compare int w^k J_m(w) dw with the terminal density's
    moments for m = 1..min(residual_orders, 6); they are only computed for
    q in {0, 1} on Szego-class inputs (elsewhere there is no terminal
    density to compare against).
    """
    verdict = szego_check(J, q)
    cc = chain_coefficients(J, q, n, method=method)
    alpha, beta = cc.alpha, cc.beta
    ratio = alpha / cc.E4

    if not verdict.in_class:
        return ConvergenceReport(szego=verdict, q=q, alpha=alpha, beta=beta,
                                 hopping_ratio=ratio)

    kernel = mapping_kernel(q)
    lo, hi = J.hull
    a_inf = 0.5 * (kernel.G(hi) + kernel.G(lo))
    b_inf = (kernel.G(hi) - kernel.G(lo)) ** 2 / 16.0
    gaps: dict[int, np.ndarray] = {}
    if q in (0.0, 1.0) and residual_orders >= 1:
        orders = min(residual_orders, 6)
        rd = ResidualDensity.build(J, int(q), orders)
        jt = terminal_sd(J, int(q))
        glo, ghi = rd.clipped_range()
        ct = _density_moments(jt, glo, ghi, moment_order)
        for m in range(1, orders + 1):
            cm = _density_moments(lambda w: rd(m, w), glo, ghi, moment_order)
            gaps[m] = np.abs(cm - ct)
    return ConvergenceReport(
        szego=verdict, q=q, alpha=alpha, beta=beta,
        alpha_limit=a_inf, beta_limit=b_inf,
        alpha_deviation=np.abs(alpha - a_inf),
        beta_deviation=np.abs(beta[1:] - b_inf),
        terminal_moment_gap=gaps,
        hopping_ratio=ratio,
    )
