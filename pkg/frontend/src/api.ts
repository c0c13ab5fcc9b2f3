/** Typed client for the fiber service's JSON API. */

export interface Summary {
  n: number;
  simplexCount: number;
  criticalCount: number;
  cBarSize: number;
}

export interface CriticalValues {
  C: string[][];
  Cbar: string[][];
}

export interface FiberPoint {
  dim: number;
  birthT: string;
  deathT: string; // "inf" for essential classes
  birthPoint: string[];
  deathPoint: string[] | null;
  multiplicity: number;
}

export interface PushedCritical {
  t: string;
  point: string[];
  floor: string[];
}

export interface FiberResponse {
  classId: string;
  cacheStatus: "hit" | "miss";
  points: FiberPoint[];
  pushedCriticals: PushedCritical[];
  timingMicros: number;
}

export interface ClassEntry {
  classId: string;
  representative: { base: string[]; dir: string[] };
  hitCount: number;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<string> {
    const resp = await this.fetchFn(this.baseUrl + path, init);
    const body = await resp.text();
    if (!resp.ok) {
      let detail = body;
      try {
        const parsed = JSON.parse(body);
        detail = parsed.detail ?? parsed.error ?? body;
      } catch {
        // leave raw body
      }
      throw new ApiError(resp.status, detail);
    }
    return body;
  }

  async getSummary(): Promise<Summary> {
    return JSON.parse(await this.request("/api/v1/summary"));
  }

  async getCriticalValues(): Promise<CriticalValues> {
    return JSON.parse(await this.request("/api/v1/critical-values"));
  }

  /** Returns both the parsed response and the raw body, so callers can
   * compare payloads byte for byte. */
  async postFiber(
    base: string[],
    dir: string[],
    degrees: number[],
  ): Promise<{ data: FiberResponse; raw: string }> {
    const raw = await this.request("/api/v1/fiber", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ base, dir, degrees }),
    });
    return { data: JSON.parse(raw), raw };
  }

  async getClasses(): Promise<ClassEntry[]> {
    return JSON.parse(await this.request("/api/v1/classes"));
  }
}

/** JSON with recursively sorted keys and no whitespace; mirrors the
 * canonical serialization the service and CLI emit. */
export function canonicalStringify(value: unknown): string {
  if (value === null || typeof value !== "object") {
    return JSON.stringify(value);
  }
  if (Array.isArray(value)) {
    return "[" + value.map(canonicalStringify).join(",") + "]";
  }
  const entries = Object.entries(value as Record<string, unknown>)
    .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
    .map(([k, v]) => JSON.stringify(k) + ":" + canonicalStringify(v));
  return "{" + entries.join(",") + "}";
}
