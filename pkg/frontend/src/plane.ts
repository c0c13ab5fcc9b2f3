/**
 * SVG parameter plane: closed critical values with their cone
 * boundaries, plus the query line with two drag handles (base point and
 * direction). Supports wheel zoom and background pan.
 */

import { parseRat, ratFromApprox, toNumber } from "./rational.js";
import { ExplorerState } from "./state.js";

const NS = "http://www.w3.org/2000/svg";

interface Viewport {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

type DragTarget = "base" | "dir" | "pan" | null;

export class PlanePanel {
  private viewport: Viewport = { x0: -1, y0: -1, x1: 9, y1: 9 };
  private drag: DragTarget = null;
  private panAnchor: { px: number; py: number; view: Viewport } | null = null;
  private fitted = false;

  constructor(
    private readonly svg: SVGSVGElement,
    private readonly state: ExplorerState,
  ) {
    svg.addEventListener("pointerdown", (e) => this.onPointerDown(e));
    svg.addEventListener("pointermove", (e) => this.onPointerMove(e));
    svg.addEventListener("pointerup", () => this.endDrag());
    svg.addEventListener("pointerleave", () => this.endDrag());
    svg.addEventListener("wheel", (e) => this.onWheel(e), { passive: false });
  }

  private size(): { w: number; h: number } {
    return { w: this.svg.clientWidth || 520, h: this.svg.clientHeight || 520 };
  }

  private toPx(x: number, y: number): { px: number; py: number } {
    const { w, h } = this.size();
    const v = this.viewport;
    return {
      px: ((x - v.x0) / (v.x1 - v.x0)) * w,
      py: h - ((y - v.y0) / (v.y1 - v.y0)) * h,
    };
  }

  private toWorld(px: number, py: number): { x: number; y: number } {
    const { w, h } = this.size();
    const v = this.viewport;
    return {
      x: v.x0 + (px / w) * (v.x1 - v.x0),
      y: v.y0 + ((h - py) / h) * (v.y1 - v.y0),
    };
  }

  private fitToData(): void {
    const values = this.state.criticalValues?.Cbar ?? [];
    if (!values.length) return;
    const xs = values.map((g) => toNumber(parseRat(g[0]!)));
    const ys = values.map((g) => toNumber(parseRat(g[1]!)));
    const pad = Math.max(2, (Math.max(...xs) - Math.min(...xs)) * 0.4);
    this.viewport = {
      x0: Math.min(0, Math.min(...xs)) - pad,
      x1: Math.max(...xs) + pad,
      y0: Math.min(0, Math.min(...ys)) - pad,
      y1: Math.max(...ys) + pad,
    };
    this.fitted = true;
  }

  private el(name: string, attrs: Record<string, string | number>): Element {
    const node = document.createElementNS(NS, name);
    for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
    return node;
  }

  render(): void {
    if (!this.fitted) this.fitToData();
    const svg = this.svg;
    while (svg.firstChild) svg.removeChild(svg.firstChild);
    const { w, h } = this.size();

    // axes
    const origin = this.toPx(0, 0);
    svg.appendChild(this.el("line", {
      x1: 0, y1: origin.py, x2: w, y2: origin.py, class: "axis",
    }));
    svg.appendChild(this.el("line", {
      x1: origin.px, y1: 0, x2: origin.px, y2: h, class: "axis",
    }));

    const closureOnly = this.state.closureOnly();
    for (const grade of this.state.criticalValues?.Cbar ?? []) {
      const x = toNumber(parseRat(grade[0]!));
      const y = toNumber(parseRat(grade[1]!));
      const p = this.toPx(x, y);
      // cone boundary: vertical ray up, horizontal ray right
      svg.appendChild(this.el("line", {
        x1: p.px, y1: p.py, x2: p.px, y2: 0, class: "cone",
      }));
      svg.appendChild(this.el("line", {
        x1: p.px, y1: p.py, x2: w, y2: p.py, class: "cone",
      }));
      const added = closureOnly.has(grade.join(","));
      svg.appendChild(this.el("circle", {
        cx: p.px, cy: p.py, r: 6,
        class: added ? "critical closure-added" : "critical",
      }));
      const label = this.el("text", {
        x: p.px + 8, y: p.py - 8, class: "grade-label",
      });
      label.textContent = `(${grade.join(", ")})`;
      svg.appendChild(label);
    }

    // the query line, clipped to the viewport by parameter range
    const line = this.state.line;
    const bx = toNumber(line.base[0]!);
    const by = toNumber(line.base[1]!);
    const mx = toNumber(line.dir[0]!);
    const my = toNumber(line.dir[1]!);
    const v = this.viewport;
    const ts = [
      (v.x0 - bx) / mx, (v.x1 - bx) / mx,
      (v.y0 - by) / my, (v.y1 - by) / my,
    ];
    const tMin = Math.max(Math.min(ts[0]!, ts[1]!), Math.min(ts[2]!, ts[3]!));
    const tMax = Math.min(Math.max(ts[0]!, ts[1]!), Math.max(ts[2]!, ts[3]!));
    if (tMin < tMax) {
      const a = this.toPx(bx + mx * tMin, by + my * tMin);
      const b = this.toPx(bx + mx * tMax, by + my * tMax);
      svg.appendChild(this.el("line", {
        x1: a.px, y1: a.py, x2: b.px, y2: b.py, class: "query-line",
      }));
    }
    const basePx = this.toPx(bx, by);
    const dirPx = this.toPx(bx + mx, by + my);
    svg.appendChild(this.el("line", {
      x1: basePx.px, y1: basePx.py, x2: dirPx.px, y2: dirPx.py, class: "dir-stem",
    }));
    svg.appendChild(this.el("circle", {
      cx: basePx.px, cy: basePx.py, r: 7, class: "handle base-handle", "data-handle": "base",
    }));
    svg.appendChild(this.el("circle", {
      cx: dirPx.px, cy: dirPx.py, r: 7, class: "handle dir-handle", "data-handle": "dir",
    }));
  }

  private onPointerDown(e: PointerEvent): void {
    const target = e.target as Element;
    const handle = target.getAttribute?.("data-handle");
    if (handle === "base" || handle === "dir") {
      this.drag = handle;
    } else {
      this.drag = "pan";
      this.panAnchor = { px: e.offsetX, py: e.offsetY, view: { ...this.viewport } };
    }
    this.svg.setPointerCapture?.(e.pointerId);
  }

  private onPointerMove(e: PointerEvent): void {
    if (!this.drag) return;
    if (this.drag === "pan" && this.panAnchor) {
      const { w, h } = this.size();
      const v = this.panAnchor.view;
      const dx = ((e.offsetX - this.panAnchor.px) / w) * (v.x1 - v.x0);
      const dy = ((e.offsetY - this.panAnchor.py) / h) * (v.y1 - v.y0);
      this.viewport = { x0: v.x0 - dx, x1: v.x1 - dx, y0: v.y0 + dy, y1: v.y1 + dy };
      this.render();
      return;
    }
    const world = this.toWorld(e.offsetX, e.offsetY);
    const grid = this.state.snapGrid;
    const line = this.state.line;
    if (this.drag === "base") {
      this.state.setLine(
        [ratFromApprox(world.x, grid), ratFromApprox(world.y, grid)],
        line.dir,
      );
    } else {
      const dx = world.x - toNumber(line.base[0]!);
      const dy = world.y - toNumber(line.base[1]!);
      this.state.setLine(line.base, [
        ratFromApprox(dx, grid),
        ratFromApprox(dy, grid),
      ]);
    }
  }

  private endDrag(): void {
    this.drag = null;
    this.panAnchor = null;
  }

  private onWheel(e: WheelEvent): void {
    e.preventDefault();
    const factor = e.deltaY > 0 ? 1.15 : 1 / 1.15;
    const anchor = this.toWorld(e.offsetX, e.offsetY);
    const v = this.viewport;
    this.viewport = {
      x0: anchor.x - (anchor.x - v.x0) * factor,
      x1: anchor.x + (v.x1 - anchor.x) * factor,
      y0: anchor.y - (anchor.y - v.y0) * factor,
      y1: anchor.y + (v.y1 - anchor.y) * factor,
    };
    this.render();
  }
}
