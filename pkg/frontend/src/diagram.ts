/**
 * Persistence diagram panel: birth/death scatter in the line parameter,
 * with essential classes on a separate row above the finite range.
 */

import { FiberResponse } from "./api.js";
import { parseRat, toNumber } from "./rational.js";

const NS = "http://www.w3.org/2000/svg";
const DIM_COLORS = ["#2563eb", "#dc2626", "#059669", "#9333ea"];

export class DiagramPanel {
  constructor(private readonly svg: SVGSVGElement) {}

  private el(name: string, attrs: Record<string, string | number>): Element {
    const node = document.createElementNS(NS, name);
    for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
    return node;
  }

  render(data: FiberResponse | null): void {
    const svg = this.svg;
    while (svg.firstChild) svg.removeChild(svg.firstChild);
    const w = svg.clientWidth || 420;
    const h = svg.clientHeight || 420;
    if (!data) return;

    const ts: number[] = [];
    for (const s of data.pushedCriticals) ts.push(toNumber(parseRat(s.t)));
    for (const p of data.points) {
      ts.push(toNumber(parseRat(p.birthT)));
      if (p.deathT !== "inf") ts.push(toNumber(parseRat(p.deathT)));
    }
    const lo = ts.length ? Math.min(...ts) : 0;
    const hi = ts.length ? Math.max(...ts) : 1;
    const span = hi - lo || 1;
    const pad = span * 0.15;
    const t0 = lo - pad;
    const t1 = hi + pad;
    const margin = 34;
    const infBand = 36; // row for essential classes, drawn on top
    const plotW = w - margin - 10;
    const plotH = h - margin - infBand - 6;
    const sx = (t: number) => margin + ((t - t0) / (t1 - t0)) * plotW;
    const sy = (t: number) => infBand + 6 + plotH - ((t - t0) / (t1 - t0)) * plotH;

    // frame, diagonal, infinity row
    svg.appendChild(this.el("line", {
      x1: sx(t0), y1: sy(t0), x2: sx(t1), y2: sy(t1), class: "diagonal",
    }));
    svg.appendChild(this.el("line", {
      x1: margin, y1: infBand, x2: w - 10, y2: infBand, class: "inf-row",
    }));
    const infLabel = this.el("text", { x: 4, y: infBand + 4, class: "axis-label" });
    infLabel.textContent = "inf";
    svg.appendChild(infLabel);

    // pushed critical values as axis ticks
    for (const s of data.pushedCriticals) {
      const t = toNumber(parseRat(s.t));
      svg.appendChild(this.el("line", {
        x1: sx(t), y1: h - margin + 16, x2: sx(t), y2: h - margin + 8, class: "tick",
      }));
    }

    for (const p of data.points) {
      const birth = toNumber(parseRat(p.birthT));
      const essential = p.deathT === "inf";
      const cx = sx(birth);
      const cy = essential ? infBand : sy(toNumber(parseRat(p.deathT)));
      const color = DIM_COLORS[p.dim % DIM_COLORS.length]!;
      svg.appendChild(this.el("circle", {
        cx, cy, r: 4 + Math.min(3, p.multiplicity - 1) * 2,
        fill: color, "fill-opacity": 0.8, class: "dgm-point",
      }));
      if (p.multiplicity > 1) {
        const label = this.el("text", { x: cx + 7, y: cy - 6, class: "mult-label" });
        label.textContent = `x${p.multiplicity}`;
        svg.appendChild(label);
      }
    }

    // legend per present dimension
    const dims = [...new Set(data.points.map((p) => p.dim))].sort();
    dims.forEach((dim, k) => {
      const x = w - 78;
      const y = 16 + k * 16;
      svg.appendChild(this.el("circle", {
        cx: x, cy: y, r: 4, fill: DIM_COLORS[dim % DIM_COLORS.length]!,
      }));
      const label = this.el("text", { x: x + 9, y: y + 4, class: "axis-label" });
      label.textContent = `H${dim}`;
      svg.appendChild(label);
    });
  }
}
