/** Wire-up of the three panels against the REST API. */

import { ApiClient, ApiError } from "./api.js";
import { Coordinate } from "./coord.js";
import { ocdfgSvg } from "./layout.js";
import {
  diffTableHtml,
  dimensionChecklistHtml,
  esc,
  eventTableHtml,
  gridHtml,
  objectTableHtml,
} from "./render.js";
import { coordKey, OutputTab, ViewState } from "./state.js";
import type { ValidationErrorPayload } from "./types.js";

const api = new ApiClient("");
const state = new ViewState();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function toast(message: string): void {
  const box = el<HTMLDivElement>("toast");
  box.textContent = message;
  box.classList.add("visible");
  setTimeout(() => box.classList.remove("visible"), 4000);
}

function apiErrorText(err: unknown): string {
  if (err instanceof ApiError) {
    const payload = err.payload as ValidationErrorPayload | null;
    if (payload?.errors?.length) {
      return payload.errors.map((e) => `${e.code}: ${e.message}`).join("; ");
    }
    if (payload && typeof (payload as { detail?: unknown }).detail === "string") {
      return (payload as { detail: string }).detail;
    }
    return `request failed with status ${err.status}`;
  }
  return String(err);
}

// --- input panel -----------------------------------------------------------

async function onUpload(): Promise<void> {
  const input = el<HTMLInputElement>("file-input");
  const file = input.files?.[0];
  if (!file) return;
  const format = file.name.endsWith(".xml") || file.name.endsWith(".xmlocel") ? "xml" : "json";
  try {
    const resp = await api.uploadLog(await file.arrayBuffer(), format);
    state.logHandle = resp.handle;
    state.cubeHandle = null;
    state.chosenDims = [];
    state.clearSelection();
    el("upload-error").innerHTML = "";
    await renderInputPanel();
  } catch (err) {
    el("upload-error").innerHTML = `<div class="banner error">${esc(apiErrorText(err))}</div>`;
  }
}

async function renderInputPanel(): Promise<void> {
  const handle = state.logHandle;
  if (!handle) return;
  const [summary, events, objects, dims] = await Promise.all([
    api.logSummary(handle),
    api.logEvents(handle, 200),
    api.logObjects(handle),
    api.dimensions(handle),
  ]);
  el("log-summary").textContent =
    `${summary.summary.events} events, ${summary.summary.objects} objects, ` +
    `types: ${summary.summary.object_types.join(", ") || "-"}`;
  el("event-table").innerHTML = eventTableHtml(events.events, events.total);
  el("object-tables").innerHTML = Object.entries(objects.object_types)
    .map(([otype, rows]) => objectTableHtml(otype, rows))
    .join("");
  el("dimension-list").innerHTML = dimensionChecklistHtml(dims.dimensions);
  el<HTMLButtonElement>("build-btn").disabled = dims.dimensions.length === 0;
  for (const box of document.querySelectorAll<HTMLInputElement>("#dimension-list input")) {
    box.addEventListener("change", () => {
      state.chosenDims = [
        ...document.querySelectorAll<HTMLInputElement>("#dimension-list input:checked"),
      ].map((b) => b.dataset.dim!);
    });
  }
}

// --- wizard panel ----------------------------------------------------------

async function onBuild(): Promise<void> {
  if (!state.logHandle || state.chosenDims.length === 0) {
    toast("select at least one dimension first");
    return;
  }
  const seq = state.nextSeq();
  try {
    const cube = await api.buildCube(state.logHandle, state.chosenDims, state.mode);
    if (!state.applyIfFresh(seq)) return;
    state.cubeHandle = cube.handle;
    state.rowDim = cube.dims[0]?.spec ?? null;
    state.colDim = cube.dims[1]?.spec ?? null;
    state.clearSelection();
    populateAxisSelectors(cube.dims.map((d) => d.spec));
    await refreshGrid();
  } catch (err) {
    toast(apiErrorText(err));
  }
}

function populateAxisSelectors(specs: string[]): void {
  const rowSel = el<HTMLSelectElement>("row-dim");
  const colSel = el<HTMLSelectElement>("col-dim");
  rowSel.innerHTML = specs.map((s) => `<option>${esc(s)}</option>`).join("");
  colSel.innerHTML =
    `<option value="">ALL</option>` + specs.map((s) => `<option>${esc(s)}</option>`).join("");
  rowSel.value = state.rowDim ?? specs[0];
  colSel.value = state.colDim ?? "";
}

async function refreshGrid(): Promise<void> {
  if (!state.cubeHandle || !state.rowDim) return;
  const seq = state.nextSeq();
  try {
    const grid = await api.grid(state.cubeHandle, state.rowDim, state.colDim ?? undefined);
    if (!state.applyIfFresh(seq)) return;
    el("grid-box").innerHTML = gridHtml(grid, state.rowDim, state.colDim);
    for (const cell of document.querySelectorAll<HTMLTableCellElement>("#grid-box td.cell")) {
      cell.addEventListener("click", (ev) => onCellClick(cell, ev as MouseEvent));
    }
    highlightSelection();
  } catch (err) {
    toast(apiErrorText(err));
  }
}

function cellCoordinate(cell: HTMLTableCellElement): Coordinate {
  const coord: Coordinate = {};
  if (state.rowDim) coord[state.rowDim] = cell.dataset.row!;
  if (state.colDim) coord[state.colDim] = cell.dataset.col!;
  return coord;
}

async function fullCoordinate(
  partial: Coordinate,
): Promise<{ cube: string; coord: Coordinate } | null> {
  // Grid counts marginalize over dims that are not on the axes; a marginal
  // cell is addressed on a cube built over exactly the axis dims.
  if (!state.cubeHandle || !state.logHandle) return null;
  const info = await api.cubeInfo(state.cubeHandle);
  const extra = info.dims.map((d) => d.spec).filter((s) => !(s in partial));
  if (extra.length === 0) return { cube: state.cubeHandle, coord: partial };
  const built = await api.buildCube(state.logHandle, Object.keys(partial).sort(), state.mode);
  return { cube: built.handle, coord: partial };
}

async function onCellClick(cell: HTMLTableCellElement, ev: MouseEvent): Promise<void> {
  try {
    const partial = cellCoordinate(cell);
    const target = await fullCoordinate(partial);
    if (!target) return;
    if (!ev.shiftKey && state.selected.length >= 2) state.clearSelection();
    state.selectCell({
      cube: target.cube,
      coord: target.coord,
      label: coordKey(target.coord),
    });
    highlightSelection();
    await renderOutput();
  } catch (err) {
    toast(apiErrorText(err));
  }
}

function highlightSelection(): void {
  const keys = new Set(state.selected.map((c) => coordKey(c.coord)));
  for (const cell of document.querySelectorAll<HTMLTableCellElement>("#grid-box td.cell")) {
    const key = coordKey(cellCoordinate(cell));
    cell.classList.toggle("selected", keys.has(key));
  }
  el("selection-label").textContent =
    state.selected.map((c) => c.label).join("  |  ") || "no cells selected";
  el<HTMLButtonElement>("tab-diff").disabled = !state.diffAvailable;
}

async function onSliceHere(): Promise<void> {
  if (!state.cubeHandle || state.selected.length === 0) {
    toast("select a cell to slice at");
    return;
  }
  const cell = state.selected[state.selected.length - 1];
  try {
    let handle = state.cubeHandle;
    for (const [dim, value] of Object.entries(cell.coord)) {
      const info = await api.slice(handle, dim, value);
      handle = info.handle;
    }
    const info = await api.cubeInfo(handle);
    state.cubeHandle = handle;
    state.clearSelection();
    const specs = info.dims.map((d) => d.spec);
    state.rowDim = specs[0] ?? null;
    state.colDim = specs[1] ?? null;
    if (specs.length > 0) {
      populateAxisSelectors(specs);
      await refreshGrid();
    } else {
      el("grid-box").innerHTML = "<p>0-dimensional cube (single root cell).</p>";
    }
  } catch (err) {
    toast(apiErrorText(err));
  }
}

// --- output panel ----------------------------------------------------------

async function renderOutput(): Promise<void> {
  const box = el("output-box");
  if (state.selected.length === 0) {
    box.innerHTML = "<p>Select one or two grid cells.</p>";
    return;
  }
  const tab = state.outputTab;
  try {
    if (tab === "diff") {
      if (!state.diffAvailable) {
        box.innerHTML = "<p>Select exactly two cells to compare.</p>";
        return;
      }
      const [left, right] = state.selected;
      const diff = await api.compare(left, right);
      box.innerHTML =
        `<p>left: ${esc(left.label)} &nbsp; right: ${esc(right.label)}</p>` +
        diffTableHtml(diff);
      return;
    }
    const panels = await Promise.all(
      state.selected.map(async (cellRef) => {
        const title = `<h4>${esc(cellRef.label)}</h4>`;
        if (tab === "log") {
          const count = await api.cellCount(cellRef.cube, cellRef.coord);
          const url = api.cellLogUrl(cellRef.cube, cellRef.coord);
          return (
            title +
            `<p>${count.count} events &nbsp; <a href="${url}" download="cell.jsonocel">export JSON-OCEL</a></p>`
          );
        }
        if (tab === "ocdfg") {
          const model = await api.cellOcdfg(cellRef.cube, cellRef.coord);
          try {
            return title + ocdfgSvg(model);
          } catch {
            return title + `<pre>${esc(JSON.stringify(model, null, 2))}</pre>`;
          }
        }
        const net = await api.cellOcpn(cellRef.cube, cellRef.coord);
        return title + `<pre>${esc(JSON.stringify(net, null, 2))}</pre>`;
      }),
    );
    box.innerHTML = `<div class="side-by-side">${panels
      .map((p) => `<div class="pane">${p}</div>`)
      .join("")}</div>`;
  } catch (err) {
    toast(apiErrorText(err));
  }
}

function onTab(tab: OutputTab): void {
  if (!state.setTab(tab)) {
    toast("diff needs exactly two selected cells");
    return;
  }
  for (const btn of document.querySelectorAll<HTMLButtonElement>(".tabs button")) {
    btn.classList.toggle("active", btn.dataset.tab === tab);
  }
  void renderOutput();
}

// --- boot ------------------------------------------------------------------

export function boot(): void {
  el("file-input").addEventListener("change", () => void onUpload());
  el("build-btn").addEventListener("click", () => void onBuild());
  el("slice-btn").addEventListener("click", () => void onSliceHere());
  el<HTMLSelectElement>("mode-select").addEventListener("change", (ev) => {
    state.setMode((ev.target as HTMLSelectElement).value as "existence" | "all");
    void onBuild();
  });
  el<HTMLSelectElement>("row-dim").addEventListener("change", (ev) => {
    state.rowDim = (ev.target as HTMLSelectElement).value;
    void refreshGrid();
  });
  el<HTMLSelectElement>("col-dim").addEventListener("change", (ev) => {
    state.colDim = (ev.target as HTMLSelectElement).value || null;
    void refreshGrid();
  });
  for (const btn of document.querySelectorAll<HTMLButtonElement>(".tabs button")) {
    btn.addEventListener("click", () => onTab(btn.dataset.tab as OutputTab));
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot();
}
