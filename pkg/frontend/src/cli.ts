/** Copy-as-CLI: render the current view as a reproducible shell command. */

import type { ExplorerState } from "./state.js";

export function formatComplex(re: number, im: number): string {
  if (im === 0) return String(re);
  const imag = `${im < 0 ? "-" : "+"}${Math.abs(im)}i`;
  return `${re}${imag}`;
}

export function cliCommand(state: ExplorerState): string {
  const t = formatComplex(state.t[0], state.t[1]);
  return [
    "bigqh spectrum",
    `--cycle ${state.cycle}`,
    `--t ${t}`,
    "--q 1",
    `--alpha ${state.alpha}`,
    "--format json",
  ].join(" ");
}
