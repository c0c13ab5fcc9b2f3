/**
 * Explorer state machine, kept free of DOM so it can be driven headlessly.
 *
 * Line changes are debounced; at most one fiber request is in flight and
 * responses carry monotone ids, so a stale response can never overwrite
 * the diagram of the line currently drawn.
 */

import { CriticalValues, FiberResponse, Summary } from "./api.js";
import { Rat, cmp, formatRat, parseRat, rat, snapRat } from "./rational.js";

/** The slice of the API client the explorer needs (so tests can fake it). */
export interface ExplorerApi {
  getSummary(): Promise<Summary>;
  getCriticalValues(): Promise<CriticalValues>;
  postFiber(
    base: string[],
    dir: string[],
    degrees: number[],
  ): Promise<{ data: FiberResponse; raw: string }>;
}

export interface LineSpec {
  base: Rat[];
  dir: Rat[];
}

export interface DisplayedFiber {
  lineKey: string;
  line: LineSpec;
  data: FiberResponse;
  raw: string;
  requestId: number;
}

export type LoadStatus = "idle" | "loading" | "ready" | "error";

const PALETTE = [
  "#2563eb", "#d97706", "#059669", "#dc2626", "#7c3aed",
  "#0891b2", "#db2777", "#65a30d", "#9333ea", "#ea580c",
];

export interface ExplorerOptions {
  debounceMs?: number;
  /** Drag handles snap to multiples of 1/snapGrid. */
  snapGrid?: bigint;
  degrees?: number[];
  schedule?: (fn: () => void, ms: number) => unknown;
  cancel?: (handle: unknown) => void;
}

export function lineKey(line: LineSpec): string {
  return (
    line.base.map(formatRat).join(",") + "|" + line.dir.map(formatRat).join(",")
  );
}

export class ExplorerState {
  status: LoadStatus = "idle";
  loadError: string | null = null;
  summary: Summary | null = null;
  criticalValues: CriticalValues | null = null;
  line: LineSpec;
  degrees: number[];
  displayed: DisplayedFiber | null = null;
  queryError: string | null = null;
  inFlight = false;

  readonly snapGrid: bigint;
  private readonly debounceMs: number;
  private readonly schedule: (fn: () => void, ms: number) => unknown;
  private readonly cancel: (handle: unknown) => void;
  private readonly listeners: Array<() => void> = [];
  private readonly classColors = new Map<string, string>();
  private requestSeq = 0;
  private debounceHandle: unknown = null;
  private queued = false;
  private settleWaiters: Array<() => void> = [];

  constructor(
    private readonly api: ExplorerApi,
    options: ExplorerOptions = {},
  ) {
    this.debounceMs = options.debounceMs ?? 50;
    this.snapGrid = options.snapGrid ?? 10n;
    this.degrees = options.degrees ?? [0, 1];
    this.schedule = options.schedule ?? ((fn, ms) => setTimeout(fn, ms));
    this.cancel = options.cancel ?? ((h) => clearTimeout(h as any));
    this.line = { base: [rat(0), rat(0)], dir: [rat(1), rat(1)] };
  }

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  classColor(classId: string): string {
    let color = this.classColors.get(classId);
    if (!color) {
      color = PALETTE[this.classColors.size % PALETTE.length]!;
      this.classColors.set(classId, color);
    }
    return color;
  }

  get planeSupported(): boolean {
    return this.summary === null || this.summary.n === 2;
  }

  async load(): Promise<void> {
    this.status = "loading";
    this.loadError = null;
    this.emit();
    try {
      this.summary = await this.api.getSummary();
      this.criticalValues = await this.api.getCriticalValues();
      this.status = "ready";
      this.emit();
      if (this.planeSupported) {
        this.requestFiber();
      }
    } catch (err) {
      this.status = "error";
      this.loadError = err instanceof Error ? err.message : String(err);
      this.emit();
    }
  }

  /** Closure points that were added by the lub-closure (not critical values). */
  closureOnly(): Set<string> {
    const base = new Set((this.criticalValues?.C ?? []).map((g) => g.join(",")));
    const extra = new Set<string>();
    for (const g of this.criticalValues?.Cbar ?? []) {
      const key = g.join(",");
      if (!base.has(key)) extra.add(key);
    }
    return extra;
  }

  setDegrees(degrees: number[]): void {
    const next = [...new Set(degrees)].sort((a, b) => a - b);
    if (next.join() === this.degrees.join()) return;
    this.degrees = next;
    this.requestFiber();
  }

  /**
   * Move the line, snapping to the rational grid and clamping the
   * direction so both components stay strictly positive. A no-op change
   * issues no request.
   */
  setLine(base: Rat[], dir: Rat[]): void {
    const minStep = rat(1n, this.snapGrid);
    const snappedBase = base.map((x) => snapRat(x, this.snapGrid));
    const snappedDir = dir.map((x) => {
      const s = snapRat(x, this.snapGrid);
      return cmp(s, minStep) < 0 ? minStep : s;
    });
    const next = { base: snappedBase, dir: snappedDir };
    if (lineKey(next) === lineKey(this.line)) return;
    this.line = next;
    this.emit();
    this.requestFiber();
  }

  requestFiber(): void {
    if (this.debounceHandle !== null) this.cancel(this.debounceHandle);
    this.debounceHandle = this.schedule(() => {
      this.debounceHandle = null;
      void this.pump();
    }, this.debounceMs);
  }

  /** Resolves once no request is in flight or pending. */
  settled(): Promise<void> {
    if (!this.inFlight && this.debounceHandle === null && !this.queued) {
      return Promise.resolve();
    }
    return new Promise((resolve) => this.settleWaiters.push(resolve));
  }

  private checkSettled(): void {
    if (!this.inFlight && this.debounceHandle === null && !this.queued) {
      const waiters = this.settleWaiters;
      this.settleWaiters = [];
      for (const w of waiters) w();
    }
  }

  private async pump(): Promise<void> {
    if (this.inFlight) {
      this.queued = true;
      return;
    }
    this.inFlight = true;
    this.emit();
    const id = ++this.requestSeq;
    const line = this.line;
    const key = lineKey(line);
    try {
      const { data, raw } = await this.api.postFiber(
        line.base.map(formatRat),
        line.dir.map(formatRat),
        this.degrees,
      );
      const fresher = this.displayed === null || id > this.displayed.requestId;
      if (fresher && key === lineKey(this.line)) {
        this.displayed = { lineKey: key, line, data, raw, requestId: id };
        this.queryError = null;
      }
    } catch (err) {
      if (key === lineKey(this.line)) {
        this.queryError = err instanceof Error ? err.message : String(err);
      }
    } finally {
      this.inFlight = false;
      if (this.queued) {
        this.queued = false;
        void this.pump();
      } else {
        this.emit();
        this.checkSettled();
      }
    }
  }
}

export function parseLineSpec(base: string[], dir: string[]): LineSpec {
  return { base: base.map(parseRat), dir: dir.map(parseRat) };
}
