"""Diagnostic-screening probability engine.

Closed-form screening algebra (PPV, prevalence thresholds, likelihood
ratios, Bayes updates), prevalence estimators for imperfect tests,
logit-based bedside heuristics, and a seeded Monte-Carlo validation
harness, with CLI and JSON-service front ends.
"""

from .errors import (
    BayescreenError,
    BoundaryLogit,
    DegenerateTest,
    EmptyCohort,
    InvalidPrior,
    InvalidTarget,
    UndefinedRatio,
    UninformativeTest,
    UnnormalizedDensity,
)
from .estimators import (
    BetaMoments,
    BetaParams,
    CohortObservation,
    DensityGrid,
    IntervalEstimate,
    PosteriorSummary,
    ValidationData,
    apparent_prevalence,
    baxter_posterior_known,
    baxter_posterior_unknown,
    beta_moments,
    beta_pdf,
    beta_update,
    incomplete_beta,
    posterior_summary,
    rogan_gladen,
)
from .heuristics import (
    AuditResult,
    Finding,
    FindingSet,
    HeuristicConstant,
    McgeeResult,
    PowerClass,
    PretestEstimate,
    RiskCategory,
    clinical_power_class,
    heuristic_audit,
    mcgee_delta,
    mcgee_posttest,
    medow_lucey_category,
    medow_lucey_update,
    pretest_estimate,
    pretest_min_bound,
    required_lr,
    threshold_crossing_kappa,
    tipping_curve,
)
from .screening import (
    CurveSeries,
    TestCharacteristics,
    fagan_coordinates,
    inv_logit,
    logit,
    npv,
    odds_to_prob,
    posttest_exact,
    ppv,
    ppv_at_threshold,
    ppv_curve,
    prevalence_threshold,
    prob_to_odds,
    positive_lr,
    threshold_from_lr,
)
from .simulate import (
    CoverageResult,
    ReplicateResult,
    SimConfig,
    SimResult,
    coverage_experiment,
    grid_bayes_oracle,
    replicate_table,
    simulate,
)

__version__ = "0.1.0"
