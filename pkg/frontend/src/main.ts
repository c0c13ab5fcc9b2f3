import { ApiClient } from "./api.js";
import { DiagramPanel } from "./diagram.js";
import { PlanePanel } from "./plane.js";
import { lineKey, ExplorerState } from "./state.js";

function apiBase(): string {
  const param = new URLSearchParams(window.location.search).get("api");
  return param ?? "http://127.0.0.1:8742";
}

function byId<T extends Element>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as unknown as T;
}

const state = new ExplorerState(new ApiClient(apiBase()));
const plane = new PlanePanel(byId<SVGSVGElement>("plane"), state);
const diagram = new DiagramPanel(byId<SVGSVGElement>("diagram"));

const banner = byId<HTMLDivElement>("banner");
const badge = byId<HTMLSpanElement>("class-badge");
const cacheTag = byId<HTMLSpanElement>("cache-tag");
const lineLabel = byId<HTMLSpanElement>("line-label");
const summaryLabel = byId<HTMLSpanElement>("summary-label");

function render(): void {
  banner.hidden = state.status !== "error" && !state.queryError;
  if (state.status === "error") {
    banner.textContent = `service unreachable: ${state.loadError} `;
    const retry = document.createElement("button");
    retry.textContent = "retry";
    retry.onclick = () => void state.load();
    banner.appendChild(retry);
    return;
  }
  if (state.queryError) {
    banner.textContent = `query failed: ${state.queryError}`;
  }

  if (state.summary) {
    summaryLabel.textContent =
      `${state.summary.simplexCount} simplices, ` +
      `${state.summary.criticalCount} critical cells, ` +
      `closure size ${state.summary.cBarSize}`;
  }

  if (!state.planeSupported) {
    banner.hidden = false;
    banner.textContent =
      `this dataset has n=${state.summary?.n} parameters; the plane view ` +
      "is 2-parameter only - use the CLI for higher n";
    return;
  }

  if (state.criticalValues?.Cbar.length === 0) {
    banner.hidden = false;
    banner.textContent = "empty complex: nothing to draw";
  }

  plane.render();
  const current = state.displayed;
  lineLabel.textContent =
    `base=(${state.line.base.map((r) => r.num + (r.den === 1n ? "" : "/" + r.den)).join(", ")}) ` +
    `dir=(${state.line.dir.map((r) => r.num + (r.den === 1n ? "" : "/" + r.den)).join(", ")})`;
  if (current) {
    const fresh = current.lineKey === lineKey(state.line) && !state.inFlight;
    badge.textContent = current.data.classId;
    badge.style.background = state.classColor(current.data.classId);
    cacheTag.textContent = state.inFlight
      ? "querying..."
      : `${current.data.cacheStatus} - ${current.data.timingMicros} us`;
    cacheTag.className = "cache-tag " + (fresh ? current.data.cacheStatus : "stale");
    diagram.render(current.data);
  }
}

state.onChange(render);

for (const dim of [0, 1, 2]) {
  const box = byId<HTMLInputElement>(`dim-${dim}`);
  box.onchange = () => {
    const dims = [0, 1, 2].filter(
      (d) => byId<HTMLInputElement>(`dim-${d}`).checked,
    );
    state.setDegrees(dims.length ? dims : [0]);
  };
}

void state.load();
