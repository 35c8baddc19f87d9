/** Single-pending-request gate with rate limiting and stale-response rejection.
 *
 * At most one request is in flight; new input aborts it and queues the latest
 * parameters.  Dispatch is throttled to maxPerSecond.  Responses are applied
 * only if they belong to the most recent dispatch, so stale data is never
 * rendered as current.
 */

export interface GateOptions<P, R> {
  send: (params: P, signal: AbortSignal) => Promise<R>;
  apply: (result: R, params: P) => void;
  onError: (err: unknown, params: P) => void;
  maxPerSecond?: number;
  now?: () => number;
  schedule?: (fn: () => void, delayMs: number) => void;
}

export class RequestGate<P, R> {
  private controller: AbortController | null = null;
  private queued: P | null = null;
  private lastDispatch = -Infinity;
  private timerArmed = false;
  private ticket = 0;
  private readonly minInterval: number;
  private readonly now: () => number;
  private readonly schedule: (fn: () => void, delayMs: number) => void;

  constructor(private readonly opts: GateOptions<P, R>) {
    this.minInterval = 1000 / (opts.maxPerSecond ?? 30);
    this.now = opts.now ?? (() => Date.now());
    this.schedule = opts.schedule ?? ((fn, ms) => void setTimeout(fn, ms));
  }

  request(params: P): void {
    this.queued = params;
    this.pump();
  }

  get pending(): boolean {
    return this.controller !== null || this.queued !== null;
  }

  private pump(): void {
    if (this.queued === null || this.timerArmed) return;
    const wait = this.lastDispatch + this.minInterval - this.now();
    if (wait > 0) {
      this.timerArmed = true;
      this.schedule(() => {
        this.timerArmed = false;
        this.pump();
      }, wait);
      return;
    }
    const params = this.queued;
    this.queued = null;
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const ticket = ++this.ticket;
    this.lastDispatch = this.now();
    this.opts
      .send(params, controller.signal)
      .then((result) => {
        if (ticket !== this.ticket) return; // stale
        this.controller = null;
        this.opts.apply(result, params);
        this.pump();
      })
      .catch((err) => {
        if (ticket !== this.ticket) return;
        this.controller = null;
        if ((err as Error).name !== "AbortError") this.opts.onError(err, params);
        this.pump();
      });
  }
}
