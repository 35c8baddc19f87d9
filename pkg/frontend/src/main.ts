/** DOM bootstrap: wires the canvas, controls, and the request gate together.
 * All mathematics arrives from the service; this file only routes it. */

import { ApiClient, ApiError, SpectrumSampleJson, SpectrumParams } from "./api.js";
import { toWorld } from "./geometry.js";
import { RequestGate } from "./gate.js";
import { Scene, buildScene, paint } from "./scene.js";
import { cliCommand, formatComplex } from "./cli.js";
import {
  ExplorerState,
  applyError,
  applyReference,
  applySample,
  applySweep,
  initialState,
  setAlpha,
  setCycle,
  setT,
} from "./state.js";

const SLIDER_DIRECTION: [number, number] = [0.5, 1]; // t = s * (0.5 + i)

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function main(): void {
  const canvas = el<HTMLCanvasElement>("plot");
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("canvas 2d context unavailable");

  const params = new URLSearchParams(window.location.search);
  const api = new ApiClient(params.get("api") ?? "");

  let state: ExplorerState = initialState();
  let scene: Scene | null = null;

  const cycleSelect = el<HTMLSelectElement>("cycle");
  const alphaSelect = el<HTMLSelectElement>("alpha");
  const slider = el<HTMLInputElement>("pathSlider");
  const referenceToggle = el<HTMLInputElement>("showReference");
  const tReadout = el<HTMLSpanElement>("tValue");
  const hint = el<HTMLSpanElement>("hint");
  const banner = el<HTMLDivElement>("banner");
  const retryButton = el<HTMLButtonElement>("retry");
  const copyButton = el<HTMLButtonElement>("copyCli");
  const cliReadout = el<HTMLElement>("cliText");

  const render = () => {
    scene = buildScene(canvas.width, canvas.height, state.current,
      state.reference, state.trails, state.showReference);
    paint(ctx, scene);
    tReadout.textContent = formatComplex(state.t[0], state.t[1]);
    cliReadout.textContent = cliCommand(state);
    hint.textContent = state.clamped ? "input clamped to the view range" : "";
    banner.style.display = state.error ? "block" : "none";
    if (state.error) banner.querySelector("span")!.textContent = state.error;
  };

  const gate = new RequestGate<SpectrumParams, SpectrumSampleJson>({
    send: (p, signal) => api.spectrum(p, signal),
    apply: (sample) => {
      state = applySample(state, sample);
      render();
    },
    onError: (err) => {
      const message = err instanceof ApiError ? err.message : String(err);
      state = applyError(state, message);
      render();
    },
  });

  const requestCurrent = () => {
    gate.request({
      cycle: state.cycle,
      tRe: state.t[0],
      tIm: state.t[1],
      alpha: state.alpha,
    });
  };

  const fetchReference = () => {
    api
      .spectrum({ cycle: state.cycle, tRe: 0, tIm: 0, alpha: state.alpha })
      .then((sample) => {
        state = applyReference(state, sample);
        render();
      })
      .catch((err) => {
        state = applyError(state, err instanceof ApiError ? err.message : String(err));
        render();
      });
  };

  cycleSelect.addEventListener("change", () => {
    state = setCycle(state, cycleSelect.value);
    render();
    requestCurrent();
  });

  alphaSelect.addEventListener("change", () => {
    state = setAlpha(state, Number(alphaSelect.value));
    fetchReference();
    render();
    requestCurrent();
  });

  referenceToggle.addEventListener("change", () => {
    state = { ...state, showReference: referenceToggle.checked };
    render();
  });

  slider.addEventListener("input", () => {
    const s = Number(slider.value);
    state = setT(state, s * SLIDER_DIRECTION[0], s * SLIDER_DIRECTION[1]);
    render();
    requestCurrent();
  });

  // on release, replay the whole path as one service sweep so the trails use
  // the service's nearest-neighbor frame matching
  let sweepController: AbortController | null = null;
  slider.addEventListener("change", () => {
    const s = Number(slider.value);
    if (s <= 0) return;
    const steps = 24;
    const path: [number, number][] = [];
    for (let k = 1; k <= steps; k++) {
      const frac = (s * k) / steps;
      path.push([frac * SLIDER_DIRECTION[0], frac * SLIDER_DIRECTION[1]]);
    }
    sweepController?.abort();
    sweepController = new AbortController();
    api
      .sweep(state.cycle, path, state.alpha, sweepController.signal)
      .then((result) => {
        state = applySweep(state, result);
        state = setT(state, result.samples[result.samples.length - 1].t[0],
          result.samples[result.samples.length - 1].t[1]);
        render();
      })
      .catch((err) => {
        if ((err as Error).name === "AbortError") return;
        state = applyError(state, err instanceof ApiError ? err.message : String(err));
        render();
      });
  });

  let dragging = false;
  const dragTo = (event: PointerEvent) => {
    if (!scene) return;
    const rect = canvas.getBoundingClientRect();
    const sx = ((event.clientX - rect.left) / rect.width) * canvas.width;
    const sy = ((event.clientY - rect.top) / rect.height) * canvas.height;
    const [re, im] = toWorld(scene.transform, [sx, sy]);
    state = setT(state, re, im);
    render();
    requestCurrent();
  };
  canvas.addEventListener("pointerdown", (e) => {
    dragging = true;
    canvas.setPointerCapture(e.pointerId);
    dragTo(e);
  });
  canvas.addEventListener("pointermove", (e) => {
    if (dragging) dragTo(e);
  });
  canvas.addEventListener("pointerup", () => {
    dragging = false;
  });

  retryButton.addEventListener("click", () => {
    state = { ...state, error: null };
    render();
    fetchReference();
    requestCurrent();
  });

  copyButton.addEventListener("click", () => {
    const text = cliCommand(state);
    if (navigator.clipboard) void navigator.clipboard.writeText(text);
  });

  api
    .meta()
    .then((meta) => {
      cycleSelect.innerHTML = "";
      for (const cycle of meta.cycles) {
        const option = document.createElement("option");
        option.value = cycle;
        option.textContent = cycle;
        if (cycle === state.cycle) option.selected = true;
        cycleSelect.appendChild(option);
      }
      fetchReference();
      requestCurrent();
      render();
    })
    .catch((err) => {
      state = applyError(state, err instanceof ApiError ? err.message : String(err));
      render();
    });
}

main();
