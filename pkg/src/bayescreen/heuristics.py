"""Logit-based bedside heuristics for pretest and post-test probabilities.

Two closely related constants coexist on purpose. The linear
approximation to the logit function has slope 0.22 (divisor ~4.545),
which is what the post-test shortcut and its published worked values
use; the rounded divisor 5 is what the a-priori pretest bound and its
published table use. ``HeuristicConstant`` carries both so each
operation can document its default while letting callers override.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidTarget
from .screening import CurveSeries, _check_lr, _check_probability

__all__ = [
    "HeuristicConstant",
    "Finding",
    "FindingSet",
    "PretestEstimate",
    "McgeeResult",
    "RiskCategory",
    "PowerClass",
    "AuditResult",
    "RISK_CATEGORIES",
    "POWER_CLASSES",
    "mcgee_delta",
    "mcgee_posttest",
    "pretest_min_bound",
    "pretest_estimate",
    "required_lr",
    "tipping_curve",
    "threshold_crossing_kappa",
    "medow_lucey_category",
    "medow_lucey_update",
    "clinical_power_class",
    "heuristic_audit",
]


@dataclass(frozen=True)
class HeuristicConstant:
    """Slope of the linear logit approximation plus its display rounding.

    ``divisor`` is always 1/slope; ``display_divisor`` is the rounded
    divisor used by the a-priori pretest bound.
    """

    slope: float = 0.22
    display_divisor: float = 5.0

    def __post_init__(self):
        if not self.slope > 0:
            raise ValueError("slope must be positive")
        if not self.display_divisor > 0:
            raise ValueError("display divisor must be positive")

    @property
    def divisor(self) -> float:
        return 1.0 / self.slope


DEFAULT_CONSTANT = HeuristicConstant()


@dataclass(frozen=True)
class Finding:
    """A sign, symptom, or risk factor with its likelihood ratio."""

    label: str
    kappa: float

    def __post_init__(self):
        kappa = _check_lr(self.kappa)
        if math.isinf(kappa):
            raise ValueError("finding likelihood ratios must be finite")


@dataclass(frozen=True)
class FindingSet:
    """A collection of findings plus an optional baseline prevalence."""

    findings: tuple[Finding, ...] = ()
    baseline_prevalence: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "findings", tuple(self.findings))
        if self.baseline_prevalence is not None:
            _check_probability(self.baseline_prevalence, "baseline_prevalence")

    def log_kappa_product(self) -> float:
        # Summed in sorted-by-label order so permutations of the input
        # are bit-identical.
        return math.fsum(
            math.log(f.kappa)
            for f in sorted(self.findings, key=lambda f: f.label)
        )


@dataclass(frozen=True)
class PretestEstimate:
    min_bound: float
    max_bound: float
    mean: float
    constant_used: HeuristicConstant
    clamped: bool = False


@dataclass(frozen=True)
class McgeeResult:
    """Heuristic post-test probability with bookkeeping flags."""

    value: float
    clamped: bool
    out_of_domain: bool


@dataclass(frozen=True)
class RiskCategory:
    name: str
    lo: float
    hi: float


@dataclass(frozen=True)
class PowerClass:
    name: str
    log10_kappa: float


# Qualitative pretest categories; printed bounds leave gaps, so interval
# edges sit at the midpoints of those gaps for total coverage of [0, 1].
RISK_CATEGORIES: tuple[RiskCategory, ...] = (
    RiskCategory("very unlikely", 0.0, 0.10),
    RiskCategory("unlikely", 0.10, 0.335),
    RiskCategory("uncertain", 0.335, 0.665),
    RiskCategory("likely", 0.665, 0.905),
    RiskCategory("very likely", 0.905, 1.0),
)

POWER_CLASSES: tuple[PowerClass, ...] = (
    PowerClass("Very strong confirmer", 2.0),
    PowerClass("Strong confirmer", 1.5),
    PowerClass("Good confirmer", 1.0),
    PowerClass("Weak confirmer", 0.5),
    PowerClass("Useless", 0.0),
    PowerClass("Weak excluder", -0.5),
    PowerClass("Good excluder", -1.0),
    PowerClass("Strong excluder", -1.5),
    PowerClass("Very strong excluder", -2.0),
)


def mcgee_delta(kappa: float, c: HeuristicConstant = DEFAULT_CONSTANT) -> float:
    """Probability gain ln(kappa) * slope; negative for kappa < 1."""
    kappa = _check_lr(kappa)
    if math.isinf(kappa):
        raise ValueError("mcgee_delta requires a finite likelihood ratio")
    return math.log(kappa) * c.slope


def mcgee_posttest(
    pretest: float,
    kappa: float,
    c: HeuristicConstant = DEFAULT_CONSTANT,
) -> McgeeResult:
    """Heuristic post-test probability clamp(pretest + ln(kappa)*slope).

    Flags when the pretest probability is outside the 10-90% window the
    approximation was fitted for.
    """
    phi = _check_probability(pretest, "pretest")
    raw = phi + mcgee_delta(kappa, c)
    value = min(max(raw, 0.0), 1.0)
    return McgeeResult(
        value=value,
        clamped=value != raw,
        out_of_domain=not 0.1 <= phi <= 0.9,
    )


def pretest_min_bound(
    fs: FindingSet,
    c: HeuristicConstant = DEFAULT_CONSTANT,
) -> float:
    """Minimal pretest bound ln(prod kappa)/display_divisor + baseline.

    Zero when the product of finding likelihood ratios is <= 1; clamped
    to [0, 1].
    """
    raw = fs.log_kappa_product() / c.display_divisor
    if fs.baseline_prevalence is not None:
        raw += fs.baseline_prevalence
    return min(max(raw, 0.0), 1.0)


def pretest_estimate(
    fs: FindingSet,
    c: HeuristicConstant = DEFAULT_CONSTANT,
) -> PretestEstimate:
    """Min bound, max bound (1), and midpoint mean of the pretest range."""
    raw = fs.log_kappa_product() / c.display_divisor
    if fs.baseline_prevalence is not None:
        raw += fs.baseline_prevalence
    min_bound = min(max(raw, 0.0), 1.0)
    return PretestEstimate(
        min_bound=min_bound,
        max_bound=1.0,
        mean=(1.0 + min_bound) / 2.0,
        constant_used=c,
        clamped=min_bound != raw,
    )


def required_lr(
    pretest: float,
    target_posttest: float,
    c: HeuristicConstant = DEFAULT_CONSTANT,
) -> float:
    """Likelihood ratio needed to move pretest to target: exp(divisor * gap)."""
    phi = _check_probability(pretest, "pretest")
    target = _check_probability(target_posttest, "target_posttest")
    if target < phi:
        raise InvalidTarget(
            f"target {target} below pretest {phi}: heuristic covers "
            "positive evidence only"
        )
    return math.exp(c.divisor * (target - phi))


def tipping_curve(
    c: HeuristicConstant = DEFAULT_CONSTANT,
    kappa_grid: np.ndarray | None = None,
) -> CurveSeries:
    """Pretest probability at which a positive test tips past 50%:
    clamp(0.5 - ln(kappa)*slope) over a kappa grid."""
    if kappa_grid is None:
        kappa_grid = np.linspace(1.0, 10.0, 181)
    kappa_grid = np.asarray(kappa_grid, dtype=float)
    if np.any(kappa_grid <= 0):
        raise ValueError("kappa grid must be positive")
    y = np.clip(0.5 - np.log(kappa_grid) * c.slope, 0.0, 1.0)
    return CurveSeries(kappa_grid, y, x_label="likelihood ratio",
                       y_label="tipping pretest probability")


def threshold_crossing_kappa(
    c: HeuristicConstant = DEFAULT_CONSTANT,
    divisor: float | None = None,
) -> float:
    """Likelihood ratio where the pretest bound meets the prevalence
    threshold curve 1/(1 + sqrt(kappa)); bisection on (1, 100) to 1e-9."""
    d = c.display_divisor if divisor is None else divisor

    def objective(k: float) -> float:
        return math.log(k) / d - 1.0 / (1.0 + math.sqrt(k))

    lo, hi = 1.0, 100.0
    if objective(lo) >= 0 or objective(hi) <= 0:
        raise ValueError("no sign change on (1, 100) for this divisor")
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if objective(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def medow_lucey_category(p: float) -> RiskCategory:
    """Qualitative pretest category for a probability."""
    p = _check_probability(p, "p")
    for cat in RISK_CATEGORIES[:-1]:
        if p < cat.hi:
            return cat
    return RISK_CATEGORIES[-1]


def medow_lucey_update(cat: RiskCategory, test_positive: bool) -> RiskCategory:
    """Shift one category up (positive test) or down (negative test),
    saturating at the extremes."""
    idx = next(
        i for i, c in enumerate(RISK_CATEGORIES) if c.name == cat.name
    )
    idx += 1 if test_positive else -1
    idx = min(max(idx, 0), len(RISK_CATEGORIES) - 1)
    return RISK_CATEGORIES[idx]


def clinical_power_class(kappa: float) -> PowerClass:
    """Nearest clinical power class by log10 likelihood ratio.

    Exact midpoints between anchors resolve toward the middle of the
    scale ("Useless").
    """
    kappa = _check_lr(kappa)
    if math.isinf(kappa):
        raise ValueError("clinical power class requires a finite ratio")
    lk = math.log10(kappa)
    best = min(
        POWER_CLASSES,
        key=lambda pc: (abs(pc.log10_kappa - lk), abs(pc.log10_kappa)),
    )
    return best


@dataclass(frozen=True)
class AuditResult:
    """Error surface |heuristic - exact| over a (pretest, kappa) grid."""

    phi_grid: np.ndarray
    kappa_grid: np.ndarray
    errors: np.ndarray  # shape (len(phi_grid), len(kappa_grid))
    max_error_core: float  # max over pretest in [0.1, 0.9]


def heuristic_audit(
    phi_grid: np.ndarray,
    kappa_grid: np.ndarray,
    c: HeuristicConstant = DEFAULT_CONSTANT,
) -> AuditResult:
    """Quantify the gap between the linear shortcut and exact Bayes."""
    phi_grid = np.asarray(phi_grid, dtype=float)
    kappa_grid = np.asarray(kappa_grid, dtype=float)
    if np.any((phi_grid <= 0) | (phi_grid >= 1)):
        raise ValueError("pretest grid must lie strictly inside (0, 1)")
    if np.any(kappa_grid <= 0):
        raise ValueError("kappa grid must be positive")
    deltas = np.log(kappa_grid) * c.slope
    heur = np.clip(phi_grid[:, None] + deltas[None, :], 0.0, 1.0)
    exact = (kappa_grid[None, :] * phi_grid[:, None]
             / (1.0 + (kappa_grid[None, :] - 1.0) * phi_grid[:, None]))
    errors = np.abs(heur - exact)
    core = (phi_grid >= 0.1) & (phi_grid <= 0.9)
    max_core = float(errors[core].max()) if np.any(core) else float("nan")
    return AuditResult(phi_grid=phi_grid, kappa_grid=kappa_grid,
                       errors=errors, max_error_core=max_core)
