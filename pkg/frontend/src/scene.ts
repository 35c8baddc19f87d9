/** Scene construction and canvas painting.
 *
 * buildScene is pure: it carries the service's eigenvalue coordinates
 * verbatim (worldCurrent/worldReference) plus derived screen positions and
 * badge clusters, so tests can assert the rendered data equals the service
 * JSON exactly.  Painting applies the world->screen transform at draw time
 * only; no coordinate is rounded before that.
 */

import type { SpectrumSampleJson } from "./api.js";
import { Bounds, Point, Transform, fitBounds, multiplicityClusters, toScreen } from "./geometry.js";

export const BADGE_EPS = 1e-6;

export interface Badge {
  at: Point; // screen position
  multiplicity: number;
}

export interface Scene {
  width: number;
  height: number;
  transform: Transform;
  worldCurrent: Point[];
  worldReference: Point[];
  screenCurrent: Point[];
  screenReference: Point[];
  screenTrails: Point[][];
  badges: Badge[];
  tMarker: Point | null; // screen position of the bulk parameter readout
}

export function buildScene(
  width: number,
  height: number,
  current: SpectrumSampleJson | null,
  reference: SpectrumSampleJson | null,
  trails: Point[][],
  showReference: boolean,
): Scene {
  const worldCurrent = current ? current.eigenvalues : [];
  const worldReference = showReference && reference ? reference.eigenvalues : [];
  const everything: Point[] = [
    ...worldCurrent,
    ...worldReference,
    ...trails.flat(),
  ];
  const bounds: Bounds = fitBounds(everything);
  const transform: Transform = { bounds, width, height };
  const screenCurrent = worldCurrent.map((p) => toScreen(transform, p));
  const badges: Badge[] = multiplicityClusters(worldCurrent, BADGE_EPS).map((cluster) => ({
    at: screenCurrent[cluster[0]],
    multiplicity: cluster.length,
  }));
  return {
    width,
    height,
    transform,
    worldCurrent,
    worldReference,
    screenCurrent,
    screenReference: worldReference.map((p) => toScreen(transform, p)),
    screenTrails: trails.map((slot) => slot.map((p) => toScreen(transform, p))),
    badges,
    tMarker: current ? toScreen(transform, current.t) : null,
  };
}

/** Minimal slice of CanvasRenderingContext2D used by the painter; tests
 * substitute a recording stub. */
export interface Canvas2D {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  globalAlpha: number;
  font: string;
  textAlign: CanvasTextAlign;
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
}

const REFERENCE_COLOR = "#e04848";
const CURRENT_COLOR = "#4a8df0";
const TRAIL_COLOR = "#4a8df0";
const AXIS_COLOR = "#3a3f4a";
const BADGE_COLOR = "#f0c040";

export function paint(ctx: Canvas2D, scene: Scene): void {
  ctx.globalAlpha = 1;
  ctx.clearRect(0, 0, scene.width, scene.height);

  // axes through the origin, when visible
  const origin = toScreen(scene.transform, [0, 0]);
  ctx.strokeStyle = AXIS_COLOR;
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(0, origin[1]);
  ctx.lineTo(scene.width, origin[1]);
  ctx.moveTo(origin[0], 0);
  ctx.lineTo(origin[0], scene.height);
  ctx.stroke();

  ctx.strokeStyle = TRAIL_COLOR;
  ctx.lineWidth = 1;
  ctx.globalAlpha = 0.35;
  for (const slot of scene.screenTrails) {
    if (slot.length < 2) continue;
    ctx.beginPath();
    ctx.moveTo(slot[0][0], slot[0][1]);
    for (let k = 1; k < slot.length; k++) ctx.lineTo(slot[k][0], slot[k][1]);
    ctx.stroke();
  }
  ctx.globalAlpha = 1;

  ctx.fillStyle = REFERENCE_COLOR;
  for (const [x, y] of scene.screenReference) {
    ctx.beginPath();
    ctx.arc(x, y, 5, 0, 2 * Math.PI);
    ctx.fill();
  }

  ctx.fillStyle = CURRENT_COLOR;
  for (const [x, y] of scene.screenCurrent) {
    ctx.beginPath();
    ctx.arc(x, y, 4, 0, 2 * Math.PI);
    ctx.fill();
  }

  ctx.fillStyle = BADGE_COLOR;
  ctx.font = "12px sans-serif";
  ctx.textAlign = "left";
  for (const badge of scene.badges) {
    ctx.beginPath();
    ctx.arc(badge.at[0], badge.at[1], 8, 0, 2 * Math.PI);
    ctx.stroke();
    ctx.fillText(`x${badge.multiplicity}`, badge.at[0] + 10, badge.at[1] - 8);
  }
}
