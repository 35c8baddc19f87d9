import { readFileSync } from "node:fs";

import type { MetaJson, SpectrumSampleJson } from "../src/api.js";

export function loadFixture<T>(name: string): T {
  const url = new URL(`../fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8")) as T;
}

export const META = loadFixture<MetaJson>("meta.json");

export const FIGURE_POINT_NAMES = ["p0", "p1", "p2"] as const;
export const CYCLES = ["2,0", "1,1", "2,1", "2,2"] as const;

export function spectrumFixture(cycle: string, point: string): SpectrumSampleJson {
  return loadFixture<SpectrumSampleJson>(
    `spectrum_${cycle.replace(",", "_")}_${point}.json`);
}

export function referenceFixture(cycle: string, alpha: number): SpectrumSampleJson {
  return loadFixture<SpectrumSampleJson>(
    `reference_${cycle.replace(",", "_")}_alpha${alpha}.json`);
}

export function sweepFixture(cycle: string): import("../src/api.js").SweepResultJson {
  return loadFixture(`sweep_${cycle.replace(",", "_")}_figure.json`);
}
