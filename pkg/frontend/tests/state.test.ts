import { describe, expect, it } from "vitest";

import {
  STATE_VERSION,
  decodeState,
  emptyState,
  encodeState,
  fmt,
  type EncounterState,
} from "../src/state.js";

const SCRIPTED_STATES: EncounterState[] = [
  emptyState(),
  { findings: [{ label: "fever", kappa: 2 }], test: null, baseline: null, whatIf: null },
  {
    findings: [
      { label: "fever", kappa: 2 },
      { label: "rash", kappa: 5 },
    ],
    test: { sens: 0.9, spec: 0.9 },
    baseline: null,
    whatIf: null,
  },
  {
    findings: [{ label: "weird ~|& label #=?", kappa: 3.7 }],
    test: { sens: 0.6, spec: 0.95 },
    baseline: 0.05,
    whatIf: "positive",
  },
  {
    findings: [{ label: "x", kappa: 0.1234567890123456 }],
    test: { sens: 0.123456789, spec: 0.987654321 },
    baseline: 0.1,
    whatIf: "negative",
  },
];

describe("URL fragment state codec", () => {
  it("round-trips every scripted state exactly", () => {
    for (const state of SCRIPTED_STATES) {
      const decoded = decodeState(encodeState(state));
      expect(decoded).toEqual(state);
    }
  });

  it("round-trips floats bit-exactly", () => {
    const kappa = 1 / 3;
    const state: EncounterState = {
      findings: [{ label: "a", kappa }],
      test: { sens: 0.1 + 0.2, spec: 1 - 1e-12 },
      baseline: null,
      whatIf: null,
    };
    const decoded = decodeState(encodeState(state));
    expect(decoded.findings[0]?.kappa).toBe(kappa);
    expect(decoded.test?.sens).toBe(0.1 + 0.2);
    expect(decoded.test?.spec).toBe(1 - 1e-12);
  });

  it("is versioned", () => {
    expect(encodeState(emptyState())).toContain(`v=${STATE_VERSION}`);
    expect(() => decodeState("#v=999")).toThrow(/unsupported version/);
    expect(() => decodeState("#f=a~2")).toThrow(/unsupported version/);
  });

  it("rejects malformed numbers and what-if values", () => {
    expect(() => decodeState("#v=1&sens=abc&spec=0.9")).toThrow(/finite/);
    expect(() => decodeState("#v=1&wi=maybe")).toThrow(/what-if/);
    expect(() => decodeState("#v=1&f=nokappa")).toThrow(/malformed/);
  });

  it("keeps the fragment self-contained (leading # optional)", () => {
    const encoded = encodeState(SCRIPTED_STATES[2]!);
    expect(decodeState(encoded.slice(1))).toEqual(SCRIPTED_STATES[2]);
  });
});

describe("display formatting", () => {
  it("uses fixed decimals", () => {
    expect(fmt(0.5)).toBe("0.5000");
    expect(fmt(0.46051701859880916)).toBe("0.4605");
    expect(fmt(1, 2)).toBe("1.00");
  });
});
