"""Prevalence estimation from cohort screening data.

Four estimation routes:

* Rogan-Gladen inversion of the apparent prevalence with Wald intervals
  (frequentist point estimate, clamped to [0, 1] when the raw value is
  meaningless).
* Beta-binomial conjugate updating with closed-form moments.
* The known-parameters posterior for an imperfect test: density
  proportional to [(1-b) + J*phi]^t [b - J*phi]^(n-t) under a uniform
  prior, normalized through the incomplete beta function.
* The marginal posterior when sensitivity and specificity are themselves
  uncertain, integrating the known-parameters posterior against beta
  validation posteriors over (a, b) by nested trapezoidal quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats
from scipy.special import xlog1py, xlogy

from . import special
from .errors import (
    EmptyCohort,
    InvalidPrior,
    UninformativeTest,
    UnnormalizedDensity,
)
from .screening import TestCharacteristics

__all__ = [
    "CohortObservation",
    "ValidationData",
    "BetaParams",
    "BetaMoments",
    "DensityGrid",
    "PosteriorSummary",
    "IntervalEstimate",
    "apparent_prevalence",
    "rogan_gladen",
    "beta_update",
    "beta_moments",
    "beta_pdf",
    "incomplete_beta",
    "baxter_posterior_known",
    "posterior_summary",
    "baxter_posterior_unknown",
]


@dataclass(frozen=True)
class CohortObservation:
    """n subjects tested, t positive results."""

    n: int
    t: int

    def __post_init__(self):
        if self.n < 0 or self.t < 0:
            raise ValueError("counts must be non-negative")
        if self.t > self.n:
            raise ValueError(f"t={self.t} exceeds n={self.n}")


@dataclass(frozen=True)
class ValidationData:
    """Validation counts for test characteristics.

    ``t_a`` true positives out of ``n_a`` known positives; ``t_b`` false
    positives out of ``n_b`` known negatives.
    """

    n_a: int
    t_a: int
    n_b: int
    t_b: int

    def __post_init__(self):
        if min(self.n_a, self.t_a, self.n_b, self.t_b) < 0:
            raise ValueError("counts must be non-negative")
        if self.t_a > self.n_a or self.t_b > self.n_b:
            raise ValueError("successes cannot exceed trials")


@dataclass(frozen=True)
class BetaParams:
    """Shape pair of a beta distribution; both strictly positive."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise InvalidPrior(
                f"beta shapes must be positive, got ({self.alpha}, {self.beta})"
            )


@dataclass(frozen=True)
class BetaMoments:
    mean: float
    second_moment: float
    variance: float
    sd: float


@dataclass(frozen=True)
class DensityGrid:
    """A density sampled on an ordered grid over [0, 1].

    A normalized grid integrates (trapezoid rule) to 1 within 1e-6.
    """

    support: np.ndarray
    values: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "support", np.asarray(self.support, dtype=float))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.support.shape != self.values.shape:
            raise ValueError("support and values must have the same length")
        if np.any(self.values < 0):
            raise ValueError("density values must be non-negative")

    def integral(self) -> float:
        return float(np.trapezoid(self.values, self.support))


@dataclass(frozen=True)
class PosteriorSummary:
    mean: float
    mode: float
    variance: float
    credible_interval: tuple[float, float]
    level: float


@dataclass(frozen=True)
class IntervalEstimate:
    """Point estimate with a confidence interval, clamped to [0, 1].

    ``clamped`` records that the raw point estimate fell outside [0, 1]
    before clamping.
    """

    point: float
    lo: float
    hi: float
    clamped: bool
    level: float = 0.95


def apparent_prevalence(obs: CohortObservation) -> float:
    """Raw positive fraction t/n (biased by test error)."""
    if obs.n == 0:
        raise EmptyCohort("apparent prevalence undefined for n=0")
    return obs.t / obs.n


def _z_value(level: float) -> float:
    if not 0.0 < level < 1.0:
        raise ValueError(f"confidence level must be in (0, 1), got {level}")
    if level == 0.95:
        return 1.96  # conventional value rather than the exact quantile
    from scipy.stats import norm

    return float(norm.ppf(0.5 * (1.0 + level)))


def rogan_gladen(
    obs: CohortObservation,
    test: TestCharacteristics,
    level: float = 0.95,
) -> IntervalEstimate:
    """Rogan-Gladen prevalence estimate (t/n - (1-b)) / J with a Wald CI.

    The raw point estimate can leave [0, 1] when the apparent prevalence
    falls below the false-positive floor; it is clamped with a flag.

    Raises
    ------
    UninformativeTest
        If Youden's J <= 0.
    EmptyCohort
        If n = 0.
    """
    if obs.n == 0:
        raise EmptyCohort("Rogan-Gladen requires at least one subject")
    j = test.youden_j
    if j <= 0:
        raise UninformativeTest(f"Youden's J must be positive, got {j}")
    raw = (obs.t / obs.n - (1.0 - test.specificity)) / j
    point = min(max(raw, 0.0), 1.0)
    clamped = point != raw
    half = _z_value(level) * math.sqrt(point * (1.0 - point) / obs.n)
    lo = min(max(point - half, 0.0), 1.0)
    hi = min(max(point + half, 0.0), 1.0)
    return IntervalEstimate(point=point, lo=lo, hi=hi, clamped=clamped, level=level)


def beta_update(prior: BetaParams, obs: CohortObservation) -> BetaParams:
    """Conjugate update: (alpha + t, beta + n - t)."""
    return BetaParams(prior.alpha + obs.t, prior.beta + obs.n - obs.t)


def beta_moments(p: BetaParams) -> BetaMoments:
    """Closed-form mean, second moment, variance, and sd of Beta(alpha, beta)."""
    a, b = p.alpha, p.beta
    s = a + b
    mean = a / s
    second = a * (a + 1.0) / (s * (s + 1.0))
    variance = a * b / (s * s * (s + 1.0))
    return BetaMoments(mean=mean, second_moment=second,
                       variance=variance, sd=math.sqrt(variance))


def incomplete_beta(x: float, p: BetaParams) -> float:
    """Unnormalized lower incomplete beta at x for shapes (alpha, beta)."""
    return special.incomplete_beta(x, p.alpha, p.beta)


def beta_pdf(p: BetaParams, grid_size: int = 2048) -> DensityGrid:
    """Beta density sampled on a uniform closed grid, trapezoid-normalized."""
    if grid_size < 16:
        raise ValueError("grid_size must be at least 16")
    support = np.linspace(0.0, 1.0, grid_size)
    log_norm = special.log_beta(p.alpha, p.beta)
    with np.errstate(divide="ignore"):
        log_pdf = (xlogy(p.alpha - 1.0, support)
                   + xlog1py(p.beta - 1.0, -support) - log_norm)
    values = np.exp(log_pdf)
    # Endpoints diverge for shapes < 1; zero them so the trapezoid rule
    # stays finite (the endpoints carry no trapezoid mass anyway).
    values[~np.isfinite(values)] = 0.0
    values /= np.trapezoid(values, support)
    return DensityGrid(support=support, values=values, normalized=True)


def baxter_posterior_known(
    obs: CohortObservation,
    test: TestCharacteristics,
    grid_size: int = 2048,
) -> DensityGrid:
    """Posterior over prevalence for an imperfect test with known (a, b).

    Uniform prior; density proportional to
    [(1-b) + J*phi]^t * [b - J*phi]^(n-t) on [0, 1]. The normalization
    constant is the incomplete-beta difference B(a) - B(1-b) at shapes
    (t+1, n-t+1), scaled by 1/J; a final trapezoid renormalization
    absorbs grid-level discretization error.
    """
    if obs.n == 0:
        raise EmptyCohort("posterior requires at least one subject")
    a, b = test.sensitivity, test.specificity
    j = test.youden_j
    if j <= 0:
        raise UninformativeTest(f"Youden's J must be positive, got {j}")
    support = np.linspace(0.0, 1.0, grid_size)
    values = _known_density(support, obs.t, obs.n, a, b)
    values /= np.trapezoid(values, support)
    return DensityGrid(support=support, values=values, normalized=True)


def _known_density(phi: np.ndarray, t: int, n: int, a: float, b: float) -> np.ndarray:
    """Normalized known-parameters posterior values, computed in log space."""
    j = a + b - 1.0
    phat = (1.0 - b) + j * phi
    with np.errstate(divide="ignore"):
        log_like = xlogy(t, phat) + xlog1py(n - t, -phat)
    # log normalization: (1/J) * [B(a) - B(1-b)] at shapes (t+1, n-t+1),
    # with the incomplete betas factored through their regularized form
    # to avoid underflow at large n.
    reg_diff = (special.regularized_incbeta(a, t + 1.0, n - t + 1.0)
                - special.regularized_incbeta(1.0 - b, t + 1.0, n - t + 1.0))
    log_norm = (math.log(reg_diff) + special.log_beta(t + 1.0, n - t + 1.0)
                - math.log(j))
    return np.exp(log_like - log_norm)


def posterior_summary(d: DensityGrid, level: float = 0.95) -> PosteriorSummary:
    """Mean/variance by trapezoid quadrature, quadratic-refined mode, and
    an equal-tailed credible interval from the cumulative trapezoid."""
    if not d.normalized:
        raise UnnormalizedDensity("posterior_summary requires a normalized grid")
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must be in (0, 1), got {level}")
    x, f = d.support, d.values
    mean = float(np.trapezoid(x * f, x))
    second = float(np.trapezoid(x * x * f, x))
    variance = max(second - mean * mean, 0.0)
    mode = _refine_mode(x, f)
    tail = 0.5 * (1.0 - level)
    cdf = np.concatenate(([0.0], np.cumsum(np.diff(x) * 0.5 * (f[1:] + f[:-1]))))
    cdf /= cdf[-1]
    lo = float(np.interp(tail, cdf, x))
    hi = float(np.interp(1.0 - tail, cdf, x))
    return PosteriorSummary(mean=mean, mode=mode, variance=variance,
                            credible_interval=(lo, hi), level=level)


def _refine_mode(x: np.ndarray, f: np.ndarray) -> float:
    i = int(np.argmax(f))
    if i == 0 or i == len(x) - 1:
        return float(x[i])
    # Quadratic fit through the argmax and its neighbours.
    y0, y1, y2 = f[i - 1], f[i], f[i + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom == 0.0:
        return float(x[i])
    shift = 0.5 * (y0 - y2) / denom
    shift = min(max(shift, -1.0), 1.0)
    return float(x[i] + shift * (x[i] - x[i - 1]))


def baxter_posterior_unknown(
    obs: CohortObservation,
    val: ValidationData,
    priors: tuple[BetaParams, BetaParams] = (BetaParams(1, 1), BetaParams(1, 1)),
    grid_sizes: tuple[int, int, int] = (2048, 128, 128),
) -> DensityGrid:
    """Marginal posterior over prevalence with uncertain (a, b).

    The known-parameters posterior at each (a, b) quadrature node with
    J > 0 is weighted by the product of the validation posteriors on a
    and on the false-positive rate 1-b; nodes with J <= 0 contribute
    nothing. Validation posteriors are Beta(t + alpha, m - t + beta)
    on the corresponding rate.
    """
    if obs.n == 0:
        raise EmptyCohort("posterior requires at least one subject")
    prior_a, prior_b = priors
    n_phi, n_a, n_b = grid_sizes
    if n_phi < 32 or n_a < 32 or n_b < 32:
        raise ValueError("grid sizes must be at least 32 per axis")

    phi = np.linspace(0.0, 1.0, n_phi)

    # Posterior on sensitivity a; posterior on specificity b through the
    # false-positive rate 1-b observed in the known-negative sample.
    post_a = BetaParams(val.t_a + prior_a.alpha, val.n_a - val.t_a + prior_a.beta)
    post_fp = BetaParams(val.t_b + prior_b.alpha, val.n_b - val.t_b + prior_b.beta)

    # Large validation samples concentrate these posteriors far below
    # the grid spacing of a fixed unit grid, so place the quadrature
    # nodes on the central mass instead (the full unit interval when the
    # posteriors are diffuse). Truncated tail mass is restored by the
    # final renormalization.
    tail = 1e-9
    a_lo, a_hi = stats.beta.ppf([tail, 1.0 - tail], post_a.alpha, post_a.beta)
    fp_lo, fp_hi = stats.beta.ppf([tail, 1.0 - tail],
                                  post_fp.alpha, post_fp.beta)
    a_nodes = np.linspace(max(a_lo, 0.0), min(a_hi, 1.0), n_a)
    b_nodes = np.linspace(max(1.0 - fp_hi, 0.0), min(1.0 - fp_lo, 1.0), n_b)
    w_a = _pdf_values(a_nodes, post_a) * _trapezoid_weights(a_nodes)
    w_b = _pdf_values(1.0 - b_nodes, post_fp) * _trapezoid_weights(b_nodes)

    acc = np.zeros_like(phi)
    for i, a in enumerate(a_nodes):
        if w_a[i] == 0.0:
            continue
        j = a + b_nodes - 1.0
        mask = (j > 0) & (w_b > 0)
        if not np.any(mask):
            continue
        # (nb_masked, n_phi) apparent-prevalence surface for this a.
        phat = (1.0 - b_nodes[mask])[:, None] + j[mask][:, None] * phi[None, :]
        with np.errstate(divide="ignore"):
            log_like = (xlogy(obs.t, phat)
                        + xlog1py(obs.n - obs.t, -phat))
        like = np.exp(log_like)
        norms = np.trapezoid(like, phi, axis=1)
        good = norms > 0
        if not np.any(good):
            continue
        dens = like[good] / norms[good][:, None]
        acc += w_a[i] * (w_b[mask][good] @ dens)

    total = np.trapezoid(acc, phi)
    if total <= 0:
        raise UninformativeTest("validation posteriors place no mass on J > 0")
    acc /= total
    return DensityGrid(support=phi, values=acc, normalized=True)


def _pdf_values(x: np.ndarray, p: BetaParams) -> np.ndarray:
    log_norm = special.log_beta(p.alpha, p.beta)
    with np.errstate(divide="ignore"):
        log_pdf = (xlogy(p.alpha - 1.0, x)
                   + xlog1py(p.beta - 1.0, -x) - log_norm)
    values = np.exp(log_pdf)
    values[~np.isfinite(values)] = 0.0
    return values


def _trapezoid_weights(x: np.ndarray) -> np.ndarray:
    w = np.zeros_like(x)
    dx = np.diff(x)
    w[:-1] += 0.5 * dx
    w[1:] += 0.5 * dx
    return w
