"""Seeded Monte-Carlo screening cohorts and brute-force Bayes oracles.

The generator is numpy's PCG64; replicate r of a run with seed s uses
``SeedSequence((s, r))``, so serial and parallel execution produce the
same stream and identical configurations are bit-identical.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from scipy.special import xlog1py, xlogy

from .errors import UninformativeTest
from .estimators import (
    BetaParams,
    CohortObservation,
    DensityGrid,
    rogan_gladen,
)
from .screening import TestCharacteristics

__all__ = [
    "SimConfig",
    "ReplicateResult",
    "SimResult",
    "CoverageResult",
    "simulate",
    "coverage_experiment",
    "grid_bayes_oracle",
    "replicate_table",
]


@dataclass(frozen=True)
class SimConfig:
    n: int
    true_prevalence: float
    test: TestCharacteristics
    seed: int = 0
    replicates: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.replicates < 1:
            raise ValueError("replicates must be at least 1")
        if not 0.0 <= self.true_prevalence <= 1.0:
            raise ValueError("true_prevalence must lie in [0, 1]")


@dataclass(frozen=True)
class ReplicateResult:
    t: int
    tp: int
    fp: int
    tn: int
    fn: int


@dataclass(frozen=True)
class SimResult:
    """First-replicate counts plus the full per-replicate list."""

    t: int
    confusion: tuple[int, int, int, int]  # (TP, FP, TN, FN)
    replicates: tuple[ReplicateResult, ...]


@dataclass(frozen=True)
class CoverageResult:
    coverage: float
    clamp_rate: float
    replicates: int


def _run_replicate(cfg: SimConfig, index: int) -> ReplicateResult:
    rng = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence((cfg.seed, index))))
    diseased = rng.random(cfg.n) < cfg.true_prevalence
    u = rng.random(cfg.n)
    positive = np.where(diseased,
                        u < cfg.test.sensitivity,
                        u < 1.0 - cfg.test.specificity)
    tp = int(np.count_nonzero(positive & diseased))
    fp = int(np.count_nonzero(positive & ~diseased))
    fn = int(np.count_nonzero(~positive & diseased))
    tn = cfg.n - tp - fp - fn
    return ReplicateResult(t=tp + fp, tp=tp, fp=fp, tn=tn, fn=fn)


def simulate(cfg: SimConfig) -> SimResult:
    """Draw screening cohorts: disease ~ Bernoulli(true prevalence), test
    positive with probability a (diseased) or 1-b (healthy)."""
    reps = tuple(_run_replicate(cfg, i) for i in range(cfg.replicates))
    first = reps[0]
    return SimResult(
        t=first.t,
        confusion=(first.tp, first.fp, first.tn, first.fn),
        replicates=reps,
    )


def coverage_experiment(cfg: SimConfig, level: float = 0.95) -> CoverageResult:
    """Fraction of replicates whose Rogan-Gladen interval covers the true
    prevalence, with the clamp rate as a sidecar."""
    if cfg.replicates < 1:
        raise ValueError("coverage requires at least one replicate")
    hits = 0
    clamps = 0
    for i in range(cfg.replicates):
        rep = _run_replicate(cfg, i)
        est = rogan_gladen(CohortObservation(n=cfg.n, t=rep.t), cfg.test,
                           level=level)
        if est.lo <= cfg.true_prevalence <= est.hi:
            hits += 1
        if est.clamped:
            clamps += 1
    return CoverageResult(
        coverage=hits / cfg.replicates,
        clamp_rate=clamps / cfg.replicates,
        replicates=cfg.replicates,
    )


def grid_bayes_oracle(
    obs: CohortObservation,
    prior: BetaParams = BetaParams(1, 1),
    test: TestCharacteristics | None = None,
    grid_size: int = 2048,
) -> DensityGrid:
    """Brute-force pointwise prior x likelihood posterior on a grid.

    With ``test=None`` the likelihood is plain binomial in the
    prevalence; otherwise it is binomial in the apparent prevalence
    (1-b) + J*phi. This is the reference the conjugate and
    imperfect-test paths are checked against.
    """
    if grid_size < 256:
        raise ValueError("oracle grid must be at least 256")
    phi = np.linspace(0.0, 1.0, grid_size)
    if test is None:
        p = phi
    else:
        j = test.youden_j
        if j <= 0:
            raise UninformativeTest("oracle needs Youden's J > 0")
        p = (1.0 - test.specificity) + j * phi
    with np.errstate(divide="ignore", invalid="ignore"):
        log_like = xlogy(obs.t, p) + xlog1py(obs.n - obs.t, -p)
        log_prior = (xlogy(prior.alpha - 1.0, phi)
                     + xlog1py(prior.beta - 1.0, -phi))
        log_post = log_like + log_prior
        log_post = np.where(np.isnan(log_post), -np.inf, log_post)
    log_post -= log_post.max()
    values = np.exp(log_post)
    values /= np.trapezoid(values, phi)
    return DensityGrid(support=phi, values=values, normalized=True)


def replicate_table(result: SimResult) -> str:
    """Replicates as comma-separated text with a header row."""
    buf = io.StringIO()
    buf.write("replicate,t,TP,FP,TN,FN\n")
    for i, rep in enumerate(result.replicates):
        buf.write(f"{i},{rep.t},{rep.tp},{rep.fp},{rep.tn},{rep.fn}\n")
    return buf.getvalue()
