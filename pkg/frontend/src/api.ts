/** Typed client for the read-only spectrum service.
 *
 * The UI never computes mathematics: every number it shows comes from one of
 * these endpoints verbatim.
 */

export interface SpectrumSampleJson {
  cycle: string | null;
  t: [number, number];
  q: [number, number];
  alpha: number | null;
  eigenvalues: [number, number][];
  residual: number;
}

export interface MetaJson {
  basis: { index: number; diagram: string; codegree: number }[];
  cycles: string[];
  defaults: { alpha: number; q: [number, number]; figure_path: [number, number][] };
  limits?: { alpha_max: number; path_points_max: number };
}

export interface SweepResultJson {
  cycle: string;
  q: [number, number];
  alpha: number;
  reference: SpectrumSampleJson;
  samples: SpectrumSampleJson[];
  /** per-frame eigenvalues reordered by the service's nearest-neighbor
   * frame matching, for trail drawing */
  trails: [number, number][][];
}

export interface SpectrumParams {
  cycle: string;
  tRe: number;
  tIm: number;
  qRe?: number;
  qIm?: number;
  alpha: number;
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number | null, readonly retryable: boolean) {
    super(message);
  }
}

async function getJson<T>(url: string, signal?: AbortSignal): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, { signal });
  } catch (err) {
    if ((err as Error).name === "AbortError") throw err;
    throw new ApiError(`service unreachable: ${(err as Error).message}`, null, true);
  }
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      /* keep statusText */
    }
    throw new ApiError(detail, response.status, response.status >= 500);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  meta(signal?: AbortSignal): Promise<MetaJson> {
    return getJson<MetaJson>(`${this.base}/api/meta`, signal);
  }

  spectrum(p: SpectrumParams, signal?: AbortSignal): Promise<SpectrumSampleJson> {
    const qs = new URLSearchParams({
      cycle: p.cycle,
      t_re: String(p.tRe),
      t_im: String(p.tIm),
      q_re: String(p.qRe ?? 1),
      q_im: String(p.qIm ?? 0),
      alpha: String(p.alpha),
    });
    return getJson<SpectrumSampleJson>(`${this.base}/api/spectrum?${qs}`, signal);
  }

  sweep(cycle: string, path: [number, number][], alpha: number,
        signal?: AbortSignal): Promise<SweepResultJson> {
    const qs = new URLSearchParams({
      cycle,
      path: path.map(([re, im]) => `${re},${im}`).join(";"),
      alpha: String(alpha),
    });
    return getJson<SweepResultJson>(`${this.base}/api/sweep?${qs}`, signal);
  }
}
