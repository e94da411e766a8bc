"""Closed-form screening algebra.

Positive/negative predictive values, likelihood ratios, the prevalence
threshold, logit/odds conversions, exact Bayes post-test updates, and the
coordinate generation behind PPV curves and Fagan nomograms.

All functions are pure; probabilities are plain floats validated on entry.
An infinite positive likelihood ratio (specificity 1 with sensitivity > 0)
is represented by ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryLogit, DegenerateTest, UndefinedRatio

__all__ = [
    "TestCharacteristics",
    "CurveSeries",
    "ppv",
    "npv",
    "positive_lr",
    "prevalence_threshold",
    "ppv_at_threshold",
    "threshold_from_lr",
    "logit",
    "inv_logit",
    "prob_to_odds",
    "odds_to_prob",
    "posttest_exact",
    "ppv_curve",
    "fagan_coordinates",
]


def _check_probability(value: float, name: str = "probability") -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


def _check_lr(kappa: float) -> float:
    kappa = float(kappa)
    if math.isinf(kappa) and kappa > 0:
        return kappa
    if not kappa > 0:
        raise ValueError(f"likelihood ratio must be positive, got {kappa}")
    return kappa


@dataclass(frozen=True)
class TestCharacteristics:
    """Sensitivity/specificity pair for a binary test.

    Attributes
    ----------
    sensitivity : float
        True positive rate, in [0, 1].
    specificity : float
        True negative rate, in [0, 1].
    """

    sensitivity: float
    specificity: float

    def __post_init__(self):
        _check_probability(self.sensitivity, "sensitivity")
        _check_probability(self.specificity, "specificity")

    @property
    def kappa(self) -> float:
        """Positive likelihood ratio sensitivity / (1 - specificity)."""
        return positive_lr(self)

    @property
    def youden_j(self) -> float:
        """Youden's J = sensitivity + specificity - 1, in [-1, 1]."""
        return self.sensitivity + self.specificity - 1.0


@dataclass(frozen=True)
class CurveSeries:
    """An (x, y) series with axis labels; x is strictly increasing."""

    x: np.ndarray
    y: np.ndarray
    x_label: str = "x"
    y_label: str = "y"

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float))
        if self.x.shape != self.y.shape:
            raise ValueError("x and y must have the same length")
        if self.x.size >= 2 and not np.all(np.diff(self.x) > 0):
            raise ValueError("x must be strictly increasing")


def ppv(test: TestCharacteristics, pretest: float) -> float:
    """Positive predictive value a*phi / (a*phi + (1-b)(1-phi)).

    Raises
    ------
    DegenerateTest
        If the denominator is exactly zero (no mechanism for a positive
        test at this pretest probability).
    """
    phi = _check_probability(pretest, "pretest")
    a, b = test.sensitivity, test.specificity
    denom = a * phi + (1.0 - b) * (1.0 - phi)
    if denom == 0.0:
        raise DegenerateTest(
            f"no positive tests possible at sensitivity={a}, "
            f"specificity={b}, pretest={phi}"
        )
    return a * phi / denom


def npv(test: TestCharacteristics, pretest: float) -> float:
    """Negative predictive value b(1-phi) / (b(1-phi) + (1-a)phi)."""
    phi = _check_probability(pretest, "pretest")
    a, b = test.sensitivity, test.specificity
    denom = b * (1.0 - phi) + (1.0 - a) * phi
    if denom == 0.0:
        raise DegenerateTest(
            f"no negative tests possible at sensitivity={a}, "
            f"specificity={b}, pretest={phi}"
        )
    return b * (1.0 - phi) / denom


def positive_lr(test: TestCharacteristics) -> float:
    """Positive likelihood ratio a / (1 - b).

    Returns ``math.inf`` when specificity is 1 with sensitivity > 0.

    Raises
    ------
    UndefinedRatio
        For the 0/0 case (sensitivity 0 and specificity 1).
    """
    a, b = test.sensitivity, test.specificity
    if b == 1.0:
        if a == 0.0:
            raise UndefinedRatio("sensitivity 0 with specificity 1: 0/0")
        return math.inf
    return a / (1.0 - b)


def prevalence_threshold(test: TestCharacteristics) -> float:
    """Prevalence threshold sqrt(1-b) / (sqrt(a) + sqrt(1-b)).

    The pretest probability below which the PPV curve degrades sharply.
    """
    a, b = test.sensitivity, test.specificity
    if a == 0.0 and b == 1.0:
        raise DegenerateTest("prevalence threshold undefined for a=0, b=1")
    root_fp = math.sqrt(1.0 - b)
    return root_fp / (math.sqrt(a) + root_fp)


def ppv_at_threshold(test: TestCharacteristics) -> float:
    """PPV evaluated at the prevalence threshold: sqrt(a/(1-b)) * phi_e."""
    a, b = test.sensitivity, test.specificity
    if b == 1.0:
        raise DegenerateTest("infinite likelihood ratio: threshold PPV undefined")
    return math.sqrt(a / (1.0 - b)) * prevalence_threshold(test)


def threshold_from_lr(kappa: float) -> float:
    """Prevalence threshold 1 / (1 + sqrt(kappa)) from the likelihood ratio.

    Algebraically identical to the sensitivity/specificity form when
    kappa = a/(1-b).
    """
    kappa = _check_lr(kappa)
    if math.isinf(kappa):
        raise DegenerateTest("threshold_from_lr requires a finite likelihood ratio")
    return 1.0 / (1.0 + math.sqrt(kappa))


def logit(p: float) -> float:
    """Log-odds ln(p / (1-p)); requires 0 < p < 1."""
    p = _check_probability(p, "p")
    if p == 0.0 or p == 1.0:
        raise BoundaryLogit(f"logit undefined at p={p}")
    return math.log(p / (1.0 - p))


def inv_logit(x: float) -> float:
    """Inverse logit 1 / (1 + exp(-x))."""
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def prob_to_odds(p: float) -> float:
    """Odds p / (1-p); returns ``math.inf`` at p = 1."""
    p = _check_probability(p, "p")
    if p == 1.0:
        return math.inf
    return p / (1.0 - p)


def odds_to_prob(o: float) -> float:
    """Probability o / (1+o); accepts ``math.inf`` (-> 1)."""
    o = float(o)
    if o < 0:
        raise ValueError(f"odds must be non-negative, got {o}")
    if math.isinf(o):
        return 1.0
    return o / (1.0 + o)


def posttest_exact(pretest: float, kappa: float) -> float:
    """Exact Bayes update kappa*phi / (1 + (kappa-1)*phi).

    Sequential updates multiply: applying kappa1 then kappa2 equals a
    single update with kappa1*kappa2. An infinite kappa sends any
    positive pretest to 1.
    """
    phi = _check_probability(pretest, "pretest")
    kappa = _check_lr(kappa)
    if math.isinf(kappa):
        return 1.0 if phi > 0.0 else 0.0
    return kappa * phi / (1.0 + (kappa - 1.0) * phi)


def ppv_curve(test: TestCharacteristics, grid_size: int) -> CurveSeries:
    """PPV as a function of pretest probability on a uniform [0, 1] grid.

    The 0/0 corner (pretest 0 with specificity 1) takes the limiting
    value 0 so the curve stays total.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    phis = np.linspace(0.0, 1.0, grid_size)
    ys = np.empty_like(phis)
    for i, phi in enumerate(phis):
        if phi == 0.0 and test.specificity == 1.0:
            ys[i] = 0.0
        else:
            ys[i] = ppv(test, phi)
    return CurveSeries(phis, ys, x_label="pretest probability", y_label="PPV")


def fagan_coordinates(pretest: float, kappa: float) -> tuple[float, float, float]:
    """Axis ordinates of the Fagan nomogram straight line.

    Returns ``(left, mid, right)`` where left is the conventional
    inverted pretest axis value -logit(pretest), mid is ln(kappa), and
    right is logit of the exact post-test probability. The collinearity
    identity right = logit(pretest) + mid holds exactly.
    """
    phi = _check_probability(pretest, "pretest")
    kappa = _check_lr(kappa)
    if math.isinf(kappa):
        raise DegenerateTest("Fagan coordinates require a finite likelihood ratio")
    left = -logit(phi)
    mid = math.log(kappa)
    right = -left + mid  # logit(posttest) by log-odds additivity
    return (left, mid, right)
