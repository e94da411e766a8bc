"""Regeneration of the two published heuristic reference tables.

Table 3 maps likelihood ratios 1..10 to the probability gain of the
linear logit approximation (slope-0.22 constant, divisor ~4.545) and the
pretest probabilities needed to reach post-test certainty (1.0) or the
50% tipping point. Table 4 maps a product of finding likelihood ratios
to the minimal pretest bound and range midpoint (rounded divisor 5).
"""

from __future__ import annotations

from .heuristics import (
    Finding,
    FindingSet,
    HeuristicConstant,
    mcgee_delta,
    pretest_estimate,
)

__all__ = ["table3_rows", "table4_rows", "render_table3", "render_table4"]

TABLE4_KAPPAS = tuple(range(1, 11)) + tuple(range(20, 101, 10))


def table3_rows(c: HeuristicConstant | None = None):
    """Rows (kappa, delta, phi_for_certainty, phi_for_tipping)."""
    c = c or HeuristicConstant()
    rows = []
    for kappa in range(1, 11):
        delta = mcgee_delta(float(kappa), c)
        rows.append((
            kappa,
            delta,
            min(max(1.0 - delta, 0.0), 1.0),
            min(max(0.5 - delta, 0.0), 1.0),
        ))
    return rows


def table4_rows(c: HeuristicConstant | None = None):
    """Rows (kappa_product, mean, min_bound, max_bound)."""
    c = c or HeuristicConstant()
    rows = []
    for kappa in TABLE4_KAPPAS:
        fs = FindingSet((Finding("combined", float(kappa)),))
        est = pretest_estimate(fs, c)
        rows.append((kappa, est.mean, est.min_bound, est.max_bound))
    return rows


def render_table3(c: HeuristicConstant | None = None) -> str:
    lines = ["kappa,delta,phi_1.0,phi_0.5"]
    for kappa, delta, phi1, phi05 in table3_rows(c):
        lines.append(f"{kappa},{delta:.2f},{phi1:.2f},{phi05:.2f}")
    return "\n".join(lines) + "\n"


def render_table4(c: HeuristicConstant | None = None) -> str:
    lines = ["kappa_product,mean,min,max"]
    for kappa, mean, lo, hi in table4_rows(c):
        lines.append(f"{kappa},{mean:.2f},{lo:.2f},{hi:.0f}")
    return "\n".join(lines) + "\n"
