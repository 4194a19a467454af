/** HTML fragments for the three panels. Pure string builders; event wiring
 * happens in main.ts. */

import { displayValue } from "./coord.js";
import type {
  DiffPayload,
  DimensionInfo,
  EventRow,
  GridPayload,
  ObjectRow,
} from "./types.js";

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function eventTableHtml(events: EventRow[], total: number): string {
  if (total === 0) return "<p>No events.</p>";
  const attrs = [...new Set(events.flatMap((e) => Object.keys(e.vmap)))].sort();
  const head =
    "<tr><th>id</th><th>activity</th><th>timestamp</th>" +
    attrs.map((a) => `<th>${esc(a)}</th>`).join("") +
    "<th>objects</th></tr>";
  const rows = events
    .map(
      (e) =>
        `<tr><td>${esc(e.id)}</td><td>${esc(e.activity)}</td><td>${esc(e.timestamp)}</td>` +
        attrs.map((a) => `<td>${esc(e.vmap[a] ?? "")}</td>`).join("") +
        `<td>${esc(e.omap.join(", "))}</td></tr>`,
    )
    .join("");
  const note = events.length < total ? `<p>showing ${events.length} of ${total} events</p>` : "";
  return `<table class="data">${head}${rows}</table>${note}`;
}

export function objectTableHtml(otype: string, objects: ObjectRow[]): string {
  const attrs = [...new Set(objects.flatMap((o) => Object.keys(o.ovmap)))].sort();
  const head =
    "<tr><th>id</th>" + attrs.map((a) => `<th>${esc(a)}</th>`).join("") + "</tr>";
  const rows = objects
    .map(
      (o) =>
        `<tr><td>${esc(o.id)}</td>` +
        attrs.map((a) => `<td>${esc(o.ovmap[a] ?? "")}</td>`).join("") +
        "</tr>",
    )
    .join("");
  return `<h4>${esc(otype)} (${objects.length})</h4><table class="data">${head}${rows}</table>`;
}

export function dimensionChecklistHtml(dims: DimensionInfo[]): string {
  if (dims.length === 0) return "<p>No dimensions available.</p>";
  return dims
    .map(
      (d) =>
        `<label class="dim"><input type="checkbox" data-dim="${esc(d.spec)}"> ${esc(d.spec)}</label>`,
    )
    .join("");
}

/** Grid cells carry data-row/data-col tokens so clicks can be mapped back
 * to coordinates without re-reading the counts. */
export function gridHtml(grid: GridPayload, rowDim: string, colDim: string | null): string {
  const head =
    `<tr><th>${esc(rowDim)} \\ ${esc(colDim ?? "ALL")}</th>` +
    grid.cols.map((c) => `<th>${esc(displayValue(c))}</th>`).join("") +
    "</tr>";
  const rows = grid.rows
    .map((r, i) => {
      const cells = grid.cols
        .map(
          (c, j) =>
            `<td class="cell" data-row="${esc(r)}" data-col="${esc(c)}">${grid.counts[i][j]}</td>`,
        )
        .join("");
      return `<tr><th>${esc(displayValue(r))}</th>${cells}</tr>`;
    })
    .join("");
  return `<table class="grid">${head}${rows}</table>`;
}

export function diffTableHtml(diff: DiffPayload): string {
  const fmt = (v: number | null) => (v === null ? "&mdash;" : String(v));
  const fmtDur = (v: number | null) => (v === null ? "&mdash;" : `${v.toFixed(1)}s`);
  const actRows = diff.activities
    .map(
      (d) =>
        `<tr class="${d.presence}"><td>${esc(d.object_type)}</td><td>activity</td>` +
        `<td>${esc(d.activity)}</td><td>${fmt(d.freq_left)}</td><td>${fmt(d.freq_right)}</td>` +
        `<td></td><td></td><td>${d.presence}</td></tr>`,
    )
    .join("");
  const edgeRows = diff.edges
    .map(
      (d) =>
        `<tr class="${d.presence}"><td>${esc(d.object_type)}</td><td>edge</td>` +
        `<td>${esc(d.source)} &rarr; ${esc(d.target)}</td>` +
        `<td>${fmt(d.freq_left)}</td><td>${fmt(d.freq_right)}</td>` +
        `<td>${fmtDur(d.mean_dur_left)}</td><td>${fmtDur(d.mean_dur_right)}</td>` +
        `<td>${d.presence}</td></tr>`,
    )
    .join("");
  return (
    `<table class="data diff"><tr><th>type</th><th>kind</th><th>name</th>` +
    `<th>freq L</th><th>freq R</th><th>mean dur L</th><th>mean dur R</th><th>presence</th></tr>` +
    actRows +
    edgeRows +
    `</table>`
  );
}

export function diffRowCount(diff: DiffPayload): number {
  return diff.activities.length + diff.edges.length;
}

export function warningBannerHtml(messages: string[]): string {
  if (messages.length === 0) return "";
  return `<div class="banner">${messages.map((m) => esc(m)).join("<br>")}</div>`;
}
