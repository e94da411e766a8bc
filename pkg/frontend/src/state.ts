/**
 * Encounter state and its URL-fragment codec.
 *
 * The whole client state is reconstructible from the fragment string,
 * so a session can be shared or replayed by copying the URL. The
 * encoding is versioned; decoding an unknown version throws rather
 * than guessing. Numbers survive the round trip exactly because
 * JavaScript's Number -> String -> Number conversion is lossless for
 * finite doubles.
 */

import type { FindingInput } from "./api.js";

export const STATE_VERSION = "1";

export interface EncounterState {
  findings: FindingInput[];
  /** Selected screening test, if any. */
  test: { sens: number; spec: number } | null;
  /** Additive background-risk term for the pretest bound. */
  baseline: number | null;
  /** Hypothetical result for the what-if category shift. */
  whatIf: "positive" | "negative" | null;
}

export function emptyState(): EncounterState {
  return { findings: [], test: null, baseline: null, whatIf: null };
}

// Labels may contain arbitrary text; the ~ and | separators and the
// fragment-reserved characters are percent-encoded.
function encodeLabel(label: string): string {
  return encodeURIComponent(label);
}

export function encodeState(state: EncounterState): string {
  const params = new URLSearchParams();
  params.set("v", STATE_VERSION);
  if (state.findings.length > 0) {
    params.set(
      "f",
      state.findings
        .map((f) => `${encodeLabel(f.label)}~${String(f.kappa)}`)
        .join("|"),
    );
  }
  if (state.test) {
    params.set("sens", String(state.test.sens));
    params.set("spec", String(state.test.spec));
  }
  if (state.baseline != null) params.set("eps", String(state.baseline));
  if (state.whatIf) params.set("wi", state.whatIf);
  return `#${params.toString()}`;
}

function parseNumber(text: string, field: string): number {
  const value = Number(text);
  if (!Number.isFinite(value)) {
    throw new Error(`state fragment: ${field} is not a finite number: ${text}`);
  }
  return value;
}

export function decodeState(fragment: string): EncounterState {
  const raw = fragment.startsWith("#") ? fragment.slice(1) : fragment;
  const params = new URLSearchParams(raw);
  const version = params.get("v");
  if (version !== STATE_VERSION) {
    throw new Error(`state fragment: unsupported version ${version ?? "(none)"}`);
  }
  const state = emptyState();
  const findings = params.get("f");
  if (findings) {
    state.findings = findings.split("|").map((entry) => {
      const sep = entry.lastIndexOf("~");
      if (sep < 0) throw new Error(`state fragment: malformed finding ${entry}`);
      return {
        label: decodeURIComponent(entry.slice(0, sep)),
        kappa: parseNumber(entry.slice(sep + 1), "kappa"),
      };
    });
  }
  const sens = params.get("sens");
  const spec = params.get("spec");
  if (sens != null && spec != null) {
    state.test = {
      sens: parseNumber(sens, "sens"),
      spec: parseNumber(spec, "spec"),
    };
  }
  const eps = params.get("eps");
  if (eps != null) state.baseline = parseNumber(eps, "eps");
  const whatIf = params.get("wi");
  if (whatIf != null) {
    if (whatIf !== "positive" && whatIf !== "negative") {
      throw new Error(`state fragment: bad what-if value ${whatIf}`);
    }
    state.whatIf = whatIf;
  }
  return state;
}

/** Display formatting shared by every panel: fixed decimals. */
export function fmt(value: number, digits = 4): string {
  return value.toFixed(digits);
}
