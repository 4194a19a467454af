/** Deterministic layered layout and SVG rendering for OC-DFG payloads.
 * Same model in, same SVG out, so screenshots are reproducible. */

import type { OcdfgPayload } from "./types.js";

const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

const NODE_W = 150;
const NODE_H = 48;
const GAP_X = 90;
const GAP_Y = 26;

export interface LaidOutNode {
  activity: string;
  x: number;
  y: number;
  perType: { otype: string; frequency: number }[];
}

export interface LaidOutEdge {
  source: string;
  target: string;
  otype: string;
  color: string;
  label: string;
}

export interface Layout {
  nodes: LaidOutNode[];
  edges: LaidOutEdge[];
  width: number;
  height: number;
}

export function typeColors(types: string[]): Record<string, string> {
  const colors: Record<string, string> = {};
  [...types].sort().forEach((t, i) => {
    colors[t] = PALETTE[i % PALETTE.length];
  });
  return colors;
}

/** Longest-path layering from the start activities; ties and orders are
 * broken alphabetically so the result is a pure function of the model. */
export function layoutOcdfg(model: OcdfgPayload): Layout {
  const activities = new Set<string>();
  const succs = new Map<string, Set<string>>();
  const starts = new Set<string>();
  for (const otype of [...model.object_types].sort()) {
    const graph = model.graphs[otype];
    if (!graph) continue;
    for (const node of graph.nodes) activities.add(node.activity);
    for (const edge of graph.edges) {
      activities.add(edge.source);
      activities.add(edge.target);
      if (!succs.has(edge.source)) succs.set(edge.source, new Set());
      succs.get(edge.source)!.add(edge.target);
    }
    for (const a of Object.keys(graph.starts)) starts.add(a);
  }

  const layer = new Map<string, number>();
  const ordered = [...activities].sort();
  for (const a of ordered) layer.set(a, starts.has(a) || starts.size === 0 ? 0 : 1);
  // relax longest-path layers; bounded by node count, cycles keep first value
  for (let pass = 0; pass < ordered.length; pass += 1) {
    let changed = false;
    for (const a of ordered) {
      for (const b of succs.get(a) ?? []) {
        const want = layer.get(a)! + 1;
        if (want > layer.get(b)! && want < ordered.length) {
          layer.set(b, want);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  const byLayer = new Map<number, string[]>();
  for (const a of ordered) {
    const l = layer.get(a)!;
    if (!byLayer.has(l)) byLayer.set(l, []);
    byLayer.get(l)!.push(a);
  }
  const layers = [...byLayer.keys()].sort((x, y) => x - y);

  const colors = typeColors(model.object_types);
  const nodes: LaidOutNode[] = [];
  const pos = new Map<string, { x: number; y: number }>();
  layers.forEach((l, col) => {
    const members = byLayer.get(l)!.sort();
    members.forEach((activity, row) => {
      const x = col * (NODE_W + GAP_X);
      const y = row * (NODE_H + GAP_Y);
      pos.set(activity, { x, y });
      const perType = [...model.object_types]
        .sort()
        .map((otype) => {
          const node = model.graphs[otype]?.nodes.find((n) => n.activity === activity);
          return node ? { otype, frequency: node.frequency } : null;
        })
        .filter((n): n is { otype: string; frequency: number } => n !== null);
      nodes.push({ activity, x, y, perType });
    });
  });

  const edges: LaidOutEdge[] = [];
  for (const otype of [...model.object_types].sort()) {
    const graph = model.graphs[otype];
    if (!graph) continue;
    for (const edge of [...graph.edges].sort((a, b) =>
      `${a.source}->${a.target}`.localeCompare(`${b.source}->${b.target}`),
    )) {
      edges.push({
        source: edge.source,
        target: edge.target,
        otype,
        color: colors[otype],
        label: `${edge.frequency} (${edge.duration.mean.toFixed(1)}s)`,
      });
    }
  }

  const width =
    layers.length * (NODE_W + GAP_X) - (layers.length ? GAP_X : 0) + 2;
  const maxRows = Math.max(0, ...layers.map((l) => byLayer.get(l)!.length));
  const height = maxRows * (NODE_H + GAP_Y) - (maxRows ? GAP_Y : 0) + 2;
  return { nodes, edges, width, height };
}

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Render the layout to a standalone SVG string. */
export function ocdfgSvg(model: OcdfgPayload): string {
  const layout = layoutOcdfg(model);
  const pos = new Map(layout.nodes.map((n) => [n.activity, n]));
  const parts: string[] = [];
  const pad = 12;
  const width = layout.width + 2 * pad;
  const height = layout.height + 2 * pad;
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}">`,
  );
  parts.push(
    `<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>`,
  );
  for (const edge of layout.edges) {
    const a = pos.get(edge.source)!;
    const b = pos.get(edge.target)!;
    const x1 = a.x + NODE_W + pad;
    const y1 = a.y + NODE_H / 2 + pad;
    const x2 = b.x + pad;
    const y2 = b.y + NODE_H / 2 + pad;
    const self = edge.source === edge.target;
    const d = self
      ? `M ${x1 - NODE_W / 2} ${y1 - NODE_H / 2} C ${x1} ${y1 - NODE_H} ${x1 + 30} ${y1 - NODE_H / 2} ${x1 - 10} ${y1 - NODE_H / 2 + 4}`
      : `M ${x1} ${y1} C ${x1 + GAP_X / 2} ${y1} ${x2 - GAP_X / 2} ${y2} ${x2} ${y2}`;
    parts.push(
      `<path d="${d}" fill="none" stroke="${edge.color}" stroke-width="1.5" marker-end="url(#arrow)"/>`,
    );
    const lx = (x1 + x2) / 2;
    const ly = (y1 + y2) / 2 - 4;
    parts.push(
      `<text x="${lx}" y="${ly}" font-size="10" fill="${edge.color}" text-anchor="middle">${esc(edge.label)}</text>`,
    );
  }
  for (const node of layout.nodes) {
    const x = node.x + pad;
    const y = node.y + pad;
    parts.push(
      `<rect x="${x}" y="${y}" width="${NODE_W}" height="${NODE_H}" rx="6" fill="#f5f5f5" stroke="#444"/>`,
    );
    parts.push(
      `<text x="${x + NODE_W / 2}" y="${y + 18}" font-size="12" font-weight="bold" text-anchor="middle">${esc(node.activity)}</text>`,
    );
    const freqs = node.perType.map((p) => `${p.otype}: ${p.frequency}`).join(", ");
    parts.push(
      `<text x="${x + NODE_W / 2}" y="${y + 34}" font-size="10" text-anchor="middle">${esc(freqs)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}
