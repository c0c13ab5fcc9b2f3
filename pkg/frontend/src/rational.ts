/**
 * Exact rationals over BigInt. The API ships every grade and diagram
 * coordinate as a "p/q" string; keeping them exact on this side means
 * round-trips never lose precision and snapping is deterministic.
 */

export interface Rat {
  readonly num: bigint;
  readonly den: bigint; // always > 0, gcd(num, den) === 1
}

function gcd(a: bigint, b: bigint): bigint {
  a = a < 0n ? -a : a;
  b = b < 0n ? -b : b;
  while (b) {
    [a, b] = [b, a % b];
  }
  return a;
}

export function rat(num: bigint | number, den: bigint | number = 1n): Rat {
  let n = typeof num === "number" ? BigInt(num) : num;
  let d = typeof den === "number" ? BigInt(den) : den;
  if (d === 0n) throw new Error("zero denominator");
  if (d < 0n) {
    n = -n;
    d = -d;
  }
  const g = gcd(n, d);
  return g > 1n ? { num: n / g, den: d / g } : { num: n, den: d };
}

const RAT_RE = /^[+-]?\d+(\/[1-9]\d*)?$/;

export function parseRat(text: string): Rat {
  const s = text.trim();
  if (!RAT_RE.test(s)) throw new Error(`not an integer or p/q rational: ${text}`);
  const slash = s.indexOf("/");
  if (slash < 0) return rat(BigInt(s));
  return rat(BigInt(s.slice(0, slash)), BigInt(s.slice(slash + 1)));
}

export function formatRat(r: Rat): string {
  return r.den === 1n ? r.num.toString() : `${r.num}/${r.den}`;
}

export function add(a: Rat, b: Rat): Rat {
  return rat(a.num * b.den + b.num * a.den, a.den * b.den);
}

export function sub(a: Rat, b: Rat): Rat {
  return rat(a.num * b.den - b.num * a.den, a.den * b.den);
}

export function mul(a: Rat, b: Rat): Rat {
  return rat(a.num * b.num, a.den * b.den);
}

export function div(a: Rat, b: Rat): Rat {
  if (b.num === 0n) throw new Error("division by zero");
  return rat(a.num * b.den, a.den * b.num);
}

/** -1, 0 or 1 as a < b, a == b, a > b. */
export function cmp(a: Rat, b: Rat): number {
  const left = a.num * b.den;
  const right = b.num * a.den;
  return left < right ? -1 : left > right ? 1 : 0;
}

export function eq(a: Rat, b: Rat): boolean {
  return cmp(a, b) === 0;
}

export function toNumber(r: Rat): number {
  return Number(r.num) / Number(r.den);
}

/** Nearest multiple of 1/grid (ties away from zero). */
export function snapRat(r: Rat, grid: bigint): Rat {
  const num = r.num * grid;
  const den = r.den;
  const twice = 2n * num + (num >= 0n ? den : -den);
  return rat(twice / (2n * den), grid);
}

export function ratFromApprox(value: number, grid: bigint): Rat {
  return rat(BigInt(Math.round(value * Number(grid))), grid);
}
