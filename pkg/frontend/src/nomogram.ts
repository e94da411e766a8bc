/**
 * Pixel geometry for the three-axis nomogram.
 *
 * The left axis carries the negated pretest log-odds, the right axis
 * the post-test log-odds, both spanning [-5, 5]; the centered middle
 * axis carries ln(kappa) on a half scale (value v drawn at height
 * v / 2 on the shared log-odds scale), also clamped to [-5, 5] in
 * drawn units. With that geometry the additive log-odds identity makes
 * the three anchors exactly collinear, so any screen-space residual is
 * pure pixel arithmetic. Values beyond an axis end are clamped to the
 * end and flagged so the renderer can draw an off-scale marker.
 *
 * This module is the only place the client does arithmetic, and it is
 * strictly pixel mapping of numbers already computed by the API.
 */

export const AXIS_MIN = -5;
export const AXIS_MAX = 5;

export interface NomogramLayout {
  /** x pixel of the left / middle / right axes. */
  xLeft: number;
  xMid: number;
  xRight: number;
  /** y pixel of the top of each axis (value AXIS_MAX). */
  yTop: number;
  /** Axis height in pixels (yTop + height maps AXIS_MIN). */
  height: number;
}

export const DEFAULT_LAYOUT: NomogramLayout = {
  xLeft: 60,
  xMid: 300,
  xRight: 540,
  yTop: 20,
  height: 460,
};

export interface AnchorPoint {
  x: number;
  y: number;
  clamped: boolean;
}

/** Affine map from an axis value in [AXIS_MIN, AXIS_MAX] to a y pixel. */
export function valueToY(value: number, layout: NomogramLayout): { y: number; clamped: boolean } {
  const clampedValue = Math.min(Math.max(value, AXIS_MIN), AXIS_MAX);
  const t = (AXIS_MAX - clampedValue) / (AXIS_MAX - AXIS_MIN);
  return { y: layout.yTop + t * layout.height, clamped: clampedValue !== value };
}

export interface NomogramAnchors {
  left: AnchorPoint;
  mid: AnchorPoint;
  right: AnchorPoint;
}

/**
 * Anchor pixels from the API's nomogram coordinates
 * (left = -logit(pretest), mid = ln(kappa), right = logit(posttest)).
 */
export function anchorPixels(
  coords: { left: number; mid: number; right: number },
  layout: NomogramLayout = DEFAULT_LAYOUT,
): NomogramAnchors {
  const left = valueToY(coords.left, layout);
  const mid = valueToY(coords.mid / 2, layout);
  const right = valueToY(coords.right, layout);
  return {
    left: { x: layout.xLeft, y: left.y, clamped: left.clamped },
    mid: { x: layout.xMid, y: mid.y, clamped: mid.clamped },
    right: { x: layout.xRight, y: right.y, clamped: right.clamped },
  };
}

/**
 * Perpendicular distance (px) of the middle anchor from the line
 * through the outer two; zero for exactly collinear anchors.
 */
export function collinearityResidual(a: NomogramAnchors): number {
  const dx = a.right.x - a.left.x;
  const dy = a.right.y - a.left.y;
  const norm = Math.hypot(dx, dy);
  if (norm === 0) return 0;
  const cross = dx * (a.mid.y - a.left.y) - dy * (a.mid.x - a.left.x);
  return Math.abs(cross) / norm;
}

/** Tick marks for a probability axis drawn on the log-odds scale. */
export function tickPixels(
  ticks: { p: number; position: number }[],
  layout: NomogramLayout = DEFAULT_LAYOUT,
): { p: number; y: number }[] {
  return ticks
    .filter((t) => t.position >= AXIS_MIN && t.position <= AXIS_MAX)
    .map((t) => ({ p: t.p, y: valueToY(t.position, layout).y }));
}
