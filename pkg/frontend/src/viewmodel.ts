/**
 * Turns an encounter state into the strings each panel displays.
 *
 * Everything numeric is fetched from the API and only formatted here
 * (fixed decimals), so a displayed value always equals the API value
 * to the displayed precision. Panels that lack their inputs render as
 * null rather than inventing defaults.
 */

import { ApiClient } from "./api.js";
import type { NomogramResponse } from "./api.js";
import type { EncounterState } from "./state.js";
import { fmt } from "./state.js";

export interface FindingsPanel {
  min: string;
  mean: string;
  max: string;
  category: string;
  clampWarning: boolean;
  /** Empty finding list: the product is 1 and the bound says nothing. */
  uninformative: boolean;
}

export interface ThresholdPanel {
  threshold: string;
  pretestMin: string;
  exceeds: boolean;
  verdict: "above threshold" | "below threshold";
}

export interface NomogramPanel {
  pretest: string;
  posttestExact: string;
  posttestShortcut: string;
  gap: string;
  coords: NomogramResponse["result"];
}

export interface CategoryPanel {
  category: string;
  whatIfCategory: string | null;
}

export interface EncounterView {
  findings: FindingsPanel;
  threshold: ThresholdPanel | null;
  nomogram: NomogramPanel | null;
  category: CategoryPanel;
}

export async function buildView(
  api: ApiClient,
  state: EncounterState,
): Promise<EncounterView> {
  const pretest = await api.pretest(state.findings, {
    baseline: state.baseline,
    sens: state.test?.sens ?? null,
    spec: state.test?.spec ?? null,
  });
  const r = pretest.result;

  const findings: FindingsPanel = {
    min: fmt(r.min),
    mean: fmt(r.mean),
    max: fmt(r.max),
    category: r.category,
    clampWarning: r.clamped,
    uninformative: state.findings.length === 0,
  };

  let threshold: ThresholdPanel | null = null;
  if (state.test && r.prevalence_threshold !== undefined) {
    const exceeds = r.min_exceeds_threshold === true;
    threshold = {
      threshold: fmt(r.prevalence_threshold),
      pretestMin: fmt(r.min),
      exceeds,
      verdict: exceeds ? "above threshold" : "below threshold",
    };
  }

  let nomogram: NomogramPanel | null = null;
  // The nomogram needs an interior pretest and a test to take; it uses
  // the mean pretest as the line's starting point.
  if (state.test && r.mean > 0 && r.mean < 1) {
    const lr = await lrOf(api, state.test.sens, state.test.spec);
    if (lr !== null) {
      const nomo = await api.nomogram(r.mean, lr);
      nomogram = {
        pretest: fmt(r.mean),
        posttestExact: fmt(nomo.result.posttest),
        posttestShortcut: fmt(nomo.result.mcgee_posttest),
        gap: fmt(nomo.result.mcgee_gap),
        coords: nomo.result,
      };
    }
  }

  const whatIf =
    state.whatIf === null ? null : state.whatIf === "positive";
  const category = await api.category(r.mean, whatIf);
  const categoryPanel: CategoryPanel = {
    category: category.result.category,
    whatIfCategory: category.result.updated_category ?? null,
  };

  return { findings, threshold, nomogram, category: categoryPanel };
}

/**
 * Positive likelihood ratio of the selected test, fetched from the
 * API. Infinite or undefined ratios yield null and the nomogram panel
 * stays empty (no drawable middle anchor).
 */
async function lrOf(api: ApiClient, sens: number, spec: number): Promise<number | null> {
  try {
    const res = await api.lr(sens, spec);
    return res.result.infinite ? null : res.result.positive_lr;
  } catch {
    return null; // degenerate test (e.g. a = 0, b = 1)
  }
}
