"""Bedside logit shortcuts versus the exact Bayes update.

The linear approximation posttest = pretest + 0.22 * ln(LR) tracks the
exact update to within a few percentage points over most of the 10-90%
pretest window, degrading toward ~0.10 at the worst corner. This script
audits that error surface, builds a pretest probability from a handful
of clinical findings, and classifies results qualitatively.
"""

import numpy as np

from bayescreen import (
    Finding,
    FindingSet,
    clinical_power_class,
    heuristic_audit,
    mcgee_posttest,
    medow_lucey_category,
    medow_lucey_update,
    posttest_exact,
    pretest_estimate,
    required_lr,
    threshold_crossing_kappa,
)

# How wrong can the shortcut be inside its validity window?
phi = np.linspace(0.1, 0.9, 161)
kappa = np.linspace(1.0, 10.0, 181)
audit = heuristic_audit(phi, kappa)
print(f"max shortcut error for LR in [1, 10]: {audit.max_error_core:.4f}")

# Spot check in the middle of the window.
pre = 0.30
for lr in (2.0, 5.0, 10.0):
    approx = mcgee_posttest(pre, lr).value
    exact = posttest_exact(pre, lr)
    print(f"  pretest {pre:.2f}, LR {lr:4.1f}: "
          f"shortcut {approx:.3f} vs exact {exact:.3f}")

# Pretest probability from findings: multiply the ratios, take logs.
findings = FindingSet((
    Finding("pleuritic pain", 2.0),
    Finding("unilateral swelling", 5.0),
))
est = pretest_estimate(findings)
print(f"\nfindings product -> pretest at least {est.min_bound:.2f} "
      f"(midpoint {est.mean:.2f})")
print(f"qualitative read: {medow_lucey_category(est.mean).name}")

# What LR would push a 30% pretest to 90%?
needed = required_lr(0.30, 0.90)
print(f"LR needed for 0.30 -> 0.90: {needed:.1f} "
      f"({clinical_power_class(needed).name})")

# Where the findings-based floor overtakes the prevalence threshold.
print(f"crossing ratio (rounded divisor): "
      f"{threshold_crossing_kappa():.2f}")

# Category ladder: a positive result moves one rung.
cat = medow_lucey_category(0.5)
print(f"'{cat.name}' + positive test -> "
      f"'{medow_lucey_update(cat, True).name}'")
