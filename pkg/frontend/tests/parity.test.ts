import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { decodeState, encodeState, fmt, type EncounterState } from "../src/state.js";
import { buildView } from "../src/viewmodel.js";
import { BASE_URL } from "./globalSetup.js";

// 10 scripted encounter states, from empty through fully specified.
const ENCOUNTERS: EncounterState[] = [
  { findings: [], test: null, baseline: null, whatIf: null },
  { findings: [{ label: "fever", kappa: 2 }], test: null, baseline: null, whatIf: null },
  {
    findings: [
      { label: "fever", kappa: 2 },
      { label: "rash", kappa: 5 },
    ],
    test: null,
    baseline: null,
    whatIf: null,
  },
  {
    findings: [{ label: "cough", kappa: 10 }],
    test: { sens: 0.9, spec: 0.9 },
    baseline: null,
    whatIf: null,
  },
  {
    findings: [
      { label: "a", kappa: 2 },
      { label: "b", kappa: 5 },
    ],
    test: { sens: 0.6, spec: 0.95 },
    baseline: null,
    whatIf: "positive",
  },
  {
    findings: [{ label: "x", kappa: 50 }],
    test: { sens: 0.8, spec: 0.7 },
    baseline: 0.1,
    whatIf: null,
  },
  {
    findings: [{ label: "strong", kappa: 100 }],
    test: { sens: 0.9, spec: 0.8 },
    baseline: null,
    whatIf: "negative",
  },
  {
    findings: [{ label: "weak", kappa: 1.2 }],
    test: { sens: 0.95, spec: 1.0 }, // infinite ratio: no nomogram
    baseline: null,
    whatIf: null,
  },
  {
    findings: [
      { label: "p", kappa: 3 },
      { label: "q", kappa: 4 },
      { label: "r", kappa: 2 },
    ],
    test: { sens: 0.85, spec: 0.9 },
    baseline: 0.05,
    whatIf: "positive",
  },
  {
    findings: [{ label: "huge", kappa: 1000 }], // clamped bound
    test: { sens: 0.9, spec: 0.9 },
    baseline: 0.2,
    whatIf: null,
  },
];

describe("UI/engine parity against the live API", () => {
  const api = new ApiClient(BASE_URL);

  it("renders exactly the API numbers, to displayed precision", async () => {
    for (const state of ENCOUNTERS) {
      const view = await buildView(api, state);

      // Re-fetch the raw responses independently of the view model and
      // compare the displayed strings against them.
      const pretest = await api.pretest(state.findings, {
        baseline: state.baseline,
        sens: state.test?.sens ?? null,
        spec: state.test?.spec ?? null,
      });
      expect(view.findings.min).toBe(fmt(pretest.result.min));
      expect(view.findings.mean).toBe(fmt(pretest.result.mean));
      expect(view.findings.max).toBe(fmt(pretest.result.max));
      expect(view.findings.category).toBe(pretest.result.category);
      expect(view.findings.clampWarning).toBe(pretest.result.clamped);

      if (state.test && pretest.result.prevalence_threshold !== undefined) {
        expect(view.threshold).not.toBeNull();
        expect(view.threshold?.threshold).toBe(fmt(pretest.result.prevalence_threshold));
        expect(view.threshold?.exceeds).toBe(pretest.result.min_exceeds_threshold);
      }

      if (view.nomogram && state.test) {
        const lr = await api.lr(state.test.sens, state.test.spec);
        expect(lr.result.infinite).toBe(false);
        const nomo = await api.nomogram(pretest.result.mean, lr.result.positive_lr ?? NaN);
        expect(view.nomogram.posttestExact).toBe(fmt(nomo.result.posttest));
        expect(view.nomogram.posttestShortcut).toBe(fmt(nomo.result.mcgee_posttest));
        expect(view.nomogram.gap).toBe(fmt(nomo.result.mcgee_gap));
      }

      const category = await api.category(
        pretest.result.mean,
        state.whatIf === null ? null : state.whatIf === "positive",
      );
      expect(view.category.category).toBe(category.result.category);
      expect(view.category.whatIfCategory).toBe(category.result.updated_category ?? null);
    }
  });

  it("reproduces every rendered number after a URL round-trip", async () => {
    for (const state of ENCOUNTERS) {
      const reloaded = decodeState(encodeState(state));
      expect(reloaded).toEqual(state);
      const before = await buildView(api, state);
      const after = await buildView(api, reloaded);
      expect(after).toEqual(before);
    }
  });

  it("shows the documented two-finding example", async () => {
    const view = await buildView(api, ENCOUNTERS[2]!);
    expect(view.findings.min).toBe("0.4605");
    expect(view.findings.mean).toBe("0.7303");
    expect(view.findings.uninformative).toBe(false);
  });

  it("flags the empty encounter as uninformative", async () => {
    const view = await buildView(api, ENCOUNTERS[0]!);
    expect(view.findings.min).toBe("0.0000");
    expect(view.findings.mean).toBe("0.5000");
    expect(view.findings.uninformative).toBe(true);
  });

  it("skips the nomogram for an infinite-ratio test", async () => {
    const view = await buildView(api, ENCOUNTERS[7]!);
    expect(view.nomogram).toBeNull();
  });
});
