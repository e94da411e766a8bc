/**
 * DOM wiring for the pretest-probability explorer.
 *
 * State lives in the URL fragment; every edit re-encodes it there and
 * re-renders from a fresh API round trip, so reload and share both
 * reproduce the screen exactly. One in-flight request chain at a time
 * (latest wins).
 */

import { ApiClient, ApiError, LatestWins } from "./api.js";
import {
  AXIS_MAX,
  AXIS_MIN,
  DEFAULT_LAYOUT,
  anchorPixels,
  tickPixels,
} from "./nomogram.js";
import { decodeState, emptyState, encodeState, fmt } from "./state.js";
import type { EncounterState } from "./state.js";
import { buildView } from "./viewmodel.js";

const gate = new LatestWins();

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  text?: string,
  className?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (text !== undefined) node.textContent = text;
  if (className !== undefined) node.className = className;
  return node;
}

function readState(): EncounterState {
  if (!window.location.hash) return emptyState();
  try {
    return decodeState(window.location.hash);
  } catch {
    return emptyState();
  }
}

function writeState(state: EncounterState): void {
  history.replaceState(null, "", encodeState(state));
}

function svgLine(x1: number, y1: number, x2: number, y2: number, stroke: string): SVGLineElement {
  const line = document.createElementNS("http://www.w3.org/2000/svg", "line");
  line.setAttribute("x1", String(x1));
  line.setAttribute("y1", String(y1));
  line.setAttribute("x2", String(x2));
  line.setAttribute("y2", String(y2));
  line.setAttribute("stroke", stroke);
  return line;
}

function svgCircle(x: number, y: number, r: number, fill: string): SVGCircleElement {
  const dot = document.createElementNS("http://www.w3.org/2000/svg", "circle");
  dot.setAttribute("cx", String(x));
  dot.setAttribute("cy", String(y));
  dot.setAttribute("r", String(r));
  dot.setAttribute("fill", fill);
  return dot;
}

function renderError(container: HTMLElement, err: unknown): void {
  const message =
    err instanceof ApiError ? `${err.errorName}: ${err.message}` : String(err);
  container.appendChild(el("p", message, "error"));
}

async function render(api: ApiClient, root: HTMLElement, state: EncounterState): Promise<void> {
  const view = await gate.run((signal) => {
    void signal; // buildView issues sequential calls; abort is between renders
    return buildView(api, state);
  });
  if (view === null) return; // superseded by a newer edit

  root.textContent = "";

  // Findings panel ----------------------------------------------------
  const findingsPanel = el("section", undefined, "panel findings");
  findingsPanel.appendChild(el("h2", "Findings"));
  const list = el("ul");
  state.findings.forEach((f, index) => {
    const item = el("li", `${f.label}: LR ${String(f.kappa)} `);
    const remove = el("button", "remove");
    remove.addEventListener("click", () => {
      const next = structuredClone(state);
      next.findings.splice(index, 1);
      writeState(next);
      void render(api, root, next);
    });
    item.appendChild(remove);
    list.appendChild(item);
  });
  findingsPanel.appendChild(list);

  const labelInput = el("input") as HTMLInputElement;
  labelInput.placeholder = "finding label";
  const kappaInput = el("input") as HTMLInputElement;
  kappaInput.placeholder = "likelihood ratio";
  const addButton = el("button", "add finding");
  addButton.addEventListener("click", () => {
    const kappa = Number(kappaInput.value);
    if (!labelInput.value || !Number.isFinite(kappa) || kappa <= 0) {
      renderError(findingsPanel, "finding needs a label and a positive ratio");
      return;
    }
    const next = structuredClone(state);
    next.findings.push({ label: labelInput.value, kappa });
    writeState(next);
    void render(api, root, next);
  });
  findingsPanel.append(labelInput, kappaInput, addButton);

  findingsPanel.appendChild(
    el(
      "p",
      `pretest: min ${view.findings.min}, mean ${view.findings.mean}, ` +
        `max ${view.findings.max}`,
    ),
  );
  if (view.findings.uninformative) {
    findingsPanel.appendChild(el("span", "uninformative", "badge"));
  }
  if (view.findings.clampWarning) {
    findingsPanel.appendChild(el("p", "bound clamped to [0, 1]", "warning"));
  }
  root.appendChild(findingsPanel);

  // Threshold panel ---------------------------------------------------
  const thresholdPanel = el("section", undefined, "panel threshold");
  thresholdPanel.appendChild(el("h2", "Test & threshold"));
  const sensInput = el("input") as HTMLInputElement;
  sensInput.placeholder = "sensitivity";
  sensInput.value = state.test ? String(state.test.sens) : "";
  const specInput = el("input") as HTMLInputElement;
  specInput.placeholder = "specificity";
  specInput.value = state.test ? String(state.test.spec) : "";
  const applyTest = el("button", "set test");
  applyTest.addEventListener("click", () => {
    const sens = Number(sensInput.value);
    const spec = Number(specInput.value);
    if (!Number.isFinite(sens) || !Number.isFinite(spec)) {
      renderError(thresholdPanel, "sensitivity and specificity must be numbers");
      return;
    }
    const next = structuredClone(state);
    next.test = { sens, spec };
    writeState(next);
    void render(api, root, next);
  });
  thresholdPanel.append(sensInput, specInput, applyTest);
  if (view.threshold) {
    thresholdPanel.appendChild(
      el(
        "p",
        `prevalence threshold ${view.threshold.threshold}; ` +
          `pretest floor ${view.threshold.pretestMin} is ${view.threshold.verdict}`,
      ),
    );
    thresholdPanel.appendChild(
      el("span", view.threshold.exceeds ? "PASS" : "FAIL",
        view.threshold.exceeds ? "badge pass" : "badge fail"),
    );
  }
  root.appendChild(thresholdPanel);

  // Nomogram panel ----------------------------------------------------
  const nomogramPanel = el("section", undefined, "panel nomogram");
  nomogramPanel.appendChild(el("h2", "Nomogram"));
  if (view.nomogram) {
    const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    svg.setAttribute("width", "600");
    svg.setAttribute("height", "500");
    const layout = DEFAULT_LAYOUT;
    for (const x of [layout.xLeft, layout.xMid, layout.xRight]) {
      svg.appendChild(svgLine(x, layout.yTop, x, layout.yTop + layout.height, "#888"));
    }
    for (const tick of tickPixels(view.nomogram.coords.axis_ticks, layout)) {
      svg.appendChild(svgLine(layout.xRight - 4, tick.y, layout.xRight + 4, tick.y, "#888"));
    }
    const anchors = anchorPixels(view.nomogram.coords, layout);
    svg.appendChild(
      svgLine(anchors.left.x, anchors.left.y, anchors.right.x, anchors.right.y, "#d33"),
    );
    for (const a of [anchors.left, anchors.mid, anchors.right]) {
      svg.appendChild(svgCircle(a.x, a.y, 4, a.clamped ? "#f90" : "#d33"));
    }
    nomogramPanel.appendChild(svg);
    nomogramPanel.appendChild(
      el(
        "p",
        `pretest ${view.nomogram.pretest} -> exact ${view.nomogram.posttestExact}, ` +
          `shortcut ${view.nomogram.posttestShortcut} (gap ${view.nomogram.gap})`,
      ),
    );
    nomogramPanel.appendChild(
      el("p", `axes span log-odds [${String(AXIS_MIN)}, ${String(AXIS_MAX)}]`, "hint"),
    );
  } else {
    nomogramPanel.appendChild(el("p", "select a non-degenerate test to draw the line", "hint"));
  }
  root.appendChild(nomogramPanel);

  // Category strip ----------------------------------------------------
  const strip = el("section", undefined, "panel categories");
  strip.appendChild(el("h2", "Qualitative read"));
  strip.appendChild(el("span", view.category.category, "badge"));
  const whatIfButtons = el("p");
  for (const result of ["positive", "negative"] as const) {
    const button = el("button", `what if ${result}?`);
    button.addEventListener("click", () => {
      const next = structuredClone(state);
      next.whatIf = next.whatIf === result ? null : result;
      writeState(next);
      void render(api, root, next);
    });
    whatIfButtons.appendChild(button);
  }
  strip.appendChild(whatIfButtons);
  if (view.category.whatIfCategory !== null && state.whatIf !== null) {
    strip.appendChild(
      el("p", `hypothetical ${state.whatIf} result -> ${view.category.whatIfCategory}`),
    );
  }
  root.appendChild(strip);
}

export function bootstrap(baseUrl: string): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");
  const api = new ApiClient(baseUrl);
  const rerender = (): void => {
    render(api, root, readState()).catch((err: unknown) => {
      root.textContent = "";
      renderError(root, err);
    });
  };
  window.addEventListener("hashchange", rerender);
  rerender();
}

// Only self-start inside a real browser document; tests import the
// modules directly.
if (typeof document !== "undefined" && document.getElementById("app")) {
  bootstrap("http://127.0.0.1:8311");
}

export { fmt };
