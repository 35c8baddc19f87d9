/** Explorer state and its pure transitions.
 *
 * Eigenvalue trails connect consecutive frames by nearest-neighbor matching:
 * each of the six trail slots is continued by the closest unclaimed point of
 * the new frame (a presentation device only; the stored coordinates are the
 * service's numbers verbatim, never recomputed or rounded).
 */

import type { SpectrumSampleJson, SweepResultJson } from "./api.js";
import type { Point } from "./geometry.js";

export const TRAIL_CAP = 200;
export const T_LIMIT = 6; // |re|, |im| clamp for draggable input

export interface ExplorerState {
  cycle: string;
  t: Point;
  alpha: number;
  showReference: boolean;
  trailLimit: number;
  current: SpectrumSampleJson | null;
  reference: SpectrumSampleJson | null;
  trails: Point[][]; // one slot per eigenvalue, each at most trailLimit long
  clamped: boolean;
  error: string | null;
}

export function initialState(cycle = "1,1", alpha = 2): ExplorerState {
  return {
    cycle,
    t: [0.5, 1],
    alpha,
    showReference: true,
    trailLimit: TRAIL_CAP,
    current: null,
    reference: null,
    trails: [],
    clamped: false,
    error: null,
  };
}

export function clampT(re: number, im: number): { t: Point; clamped: boolean } {
  const cre = Math.max(-T_LIMIT, Math.min(T_LIMIT, re));
  const cim = Math.max(-T_LIMIT, Math.min(T_LIMIT, im));
  return { t: [cre, cim], clamped: cre !== re || cim !== im };
}

export function setT(state: ExplorerState, re: number, im: number): ExplorerState {
  const { t, clamped } = clampT(re, im);
  return { ...state, t, clamped };
}

/** Switching cycle resets trails but keeps t; changing alpha invalidates the
 * reference overlay (it depends on the truncation). */
export function setCycle(state: ExplorerState, cycle: string): ExplorerState {
  if (cycle === state.cycle) return state;
  return { ...state, cycle, trails: [], current: null };
}

export function setAlpha(state: ExplorerState, alpha: number): ExplorerState {
  if (alpha === state.alpha) return state;
  return { ...state, alpha, trails: [], current: null, reference: null };
}

export function greedyMatch(previous: Point[], current: Point[]): Point[] {
  const remaining = current.map((p, i) => ({ p, i }));
  const matched: Point[] = [];
  for (const anchor of previous) {
    let best = 0;
    let bestDist = Infinity;
    remaining.forEach(({ p }, k) => {
      const d = Math.hypot(p[0] - anchor[0], p[1] - anchor[1]);
      if (d < bestDist) {
        bestDist = d;
        best = k;
      }
    });
    matched.push(remaining.splice(best, 1)[0].p);
  }
  return matched;
}

export function applySample(state: ExplorerState, sample: SpectrumSampleJson): ExplorerState {
  const points = sample.eigenvalues;
  let trails: Point[][];
  if (!state.trails.length) {
    trails = points.map((p) => [p]);
  } else {
    const lastFrame = state.trails.map((slot) => slot[slot.length - 1]);
    const ordered = greedyMatch(lastFrame, points);
    trails = state.trails.map((slot, k) => {
      const next = [...slot, ordered[k]];
      return next.length > state.trailLimit ? next.slice(next.length - state.trailLimit) : next;
    });
  }
  return { ...state, current: sample, trails, error: null };
}

export function applyReference(state: ExplorerState, sample: SpectrumSampleJson): ExplorerState {
  return { ...state, reference: sample };
}

/** Replace the view with a whole service sweep: trails come from the
 * service's own nearest-neighbor frame matching, the last sample becomes
 * current, and the bundled reference is adopted. */
export function applySweep(state: ExplorerState, sweep: SweepResultJson): ExplorerState {
  const frames = sweep.trails.slice(-state.trailLimit);
  const slots: Point[][] = frames.length
    ? frames[0].map((_, k) => frames.map((frame) => frame[k]))
    : [];
  return {
    ...state,
    current: sweep.samples[sweep.samples.length - 1] ?? state.current,
    reference: sweep.reference,
    trails: slots,
    error: null,
  };
}

export function applyError(state: ExplorerState, message: string): ExplorerState {
  return { ...state, error: message };
}

export function clearTrails(state: ExplorerState): ExplorerState {
  return { ...state, trails: state.current ? state.current.eigenvalues.map((p) => [p]) : [] };
}
