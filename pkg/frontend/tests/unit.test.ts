import { describe, expect, it } from "vitest";

import { decodeCoord, displayValue, encodeCoord } from "../src/coord.js";
import { layoutOcdfg, ocdfgSvg, typeColors } from "../src/layout.js";
import { diffRowCount, diffTableHtml, eventTableHtml, gridHtml } from "../src/render.js";
import { coordKey, ViewState } from "../src/state.js";
import type { DiffPayload, GridPayload, OcdfgPayload } from "../src/types.js";

describe("coordinate encoding", () => {
  it("round-trips dim=value pairs", () => {
    const coord = { "item.product": "X", "event:channel": "web" };
    expect(decodeCoord(encodeCoord(coord))).toEqual(coord);
  });

  it("sorts dims for a stable encoding", () => {
    expect(encodeCoord({ b: "2", a: "1" })).toBe(encodeCoord({ a: "1", b: "2" }));
  });

  it("encodes the missing bucket as __null__", () => {
    const segment = encodeCoord({ "item.product": "__null__" });
    expect(decodeURIComponent(segment)).toBe("item.product=__null__");
    expect(displayValue("__null__")).toBe("(none)");
  });

  it("decodes the 0-dim root", () => {
    expect(decodeCoord("__root__")).toEqual({});
  });
});

describe("view state", () => {
  it("keeps at most two selected cells, replacing the oldest", () => {
    const state = new ViewState();
    state.selectCell({ cube: "c", coord: { d: "1" }, label: "1" });
    state.selectCell({ cube: "c", coord: { d: "2" }, label: "2" });
    state.selectCell({ cube: "c", coord: { d: "3" }, label: "3" });
    expect(state.selected.map((s) => s.label)).toEqual(["2", "3"]);
  });

  it("toggles a cell off when selected twice", () => {
    const state = new ViewState();
    const cell = { cube: "c", coord: { d: "1" }, label: "1" };
    state.selectCell(cell);
    state.selectCell({ ...cell });
    expect(state.selected).toEqual([]);
  });

  it("disables the diff tab without exactly two cells", () => {
    const state = new ViewState();
    expect(state.setTab("diff")).toBe(false);
    state.selectCell({ cube: "c", coord: { d: "1" }, label: "1" });
    state.selectCell({ cube: "c", coord: { d: "2" }, label: "2" });
    expect(state.setTab("diff")).toBe(true);
  });

  it("mode toggle keeps chosen dims but clears the cube and selection", () => {
    const state = new ViewState();
    state.chosenDims = ["event:channel"];
    state.cubeHandle = "cube-1";
    state.selectCell({ cube: "c", coord: { d: "1" }, label: "1" });
    state.setMode("all");
    expect(state.chosenDims).toEqual(["event:channel"]);
    expect(state.cubeHandle).toBeNull();
    expect(state.selected).toEqual([]);
  });

  it("discards stale responses by sequence number", () => {
    const state = new ViewState();
    const first = state.nextSeq();
    const second = state.nextSeq();
    expect(state.applyIfFresh(second)).toBe(true);
    expect(state.applyIfFresh(first)).toBe(false);
  });

  it("coordKey is order independent", () => {
    expect(coordKey({ b: "2", a: "1" })).toBe(coordKey({ a: "1", b: "2" }));
  });
});

const MODEL: OcdfgPayload = {
  object_types: ["item", "order"],
  graphs: {
    item: {
      nodes: [
        { activity: "place", frequency: 1, incidence: 2 },
        { activity: "pick", frequency: 2, incidence: 2 },
        { activity: "ship", frequency: 1, incidence: 2 },
      ],
      edges: [
        {
          source: "place",
          target: "pick",
          frequency: 2,
          duration: { mean: 450, median: 450, min: 300, max: 600 },
        },
        {
          source: "pick",
          target: "ship",
          frequency: 2,
          duration: { mean: 750, median: 750, min: 600, max: 900 },
        },
      ],
      starts: { place: 2 },
      ends: { ship: 2 },
      trace_count: 2,
    },
    order: {
      nodes: [
        { activity: "place", frequency: 1, incidence: 1 },
        { activity: "ship", frequency: 1, incidence: 1 },
      ],
      edges: [
        {
          source: "place",
          target: "ship",
          frequency: 1,
          duration: { mean: 1200, median: 1200, min: 1200, max: 1200 },
        },
      ],
      starts: { place: 1 },
      ends: { ship: 1 },
      trace_count: 1,
    },
  },
};

describe("graph layout", () => {
  it("layers activities from the start nodes", () => {
    const layout = layoutOcdfg(MODEL);
    const byName = Object.fromEntries(layout.nodes.map((n) => [n.activity, n]));
    expect(byName.place.x).toBeLessThan(byName.pick.x);
    expect(byName.pick.x).toBeLessThan(byName.ship.x);
  });

  it("is deterministic", () => {
    expect(ocdfgSvg(MODEL)).toBe(ocdfgSvg(MODEL));
    expect(layoutOcdfg(MODEL)).toEqual(layoutOcdfg(MODEL));
  });

  it("colors edges per object type", () => {
    const layout = layoutOcdfg(MODEL);
    const colors = typeColors(MODEL.object_types);
    const itemEdge = layout.edges.find((e) => e.otype === "item")!;
    const orderEdge = layout.edges.find((e) => e.otype === "order")!;
    expect(itemEdge.color).toBe(colors.item);
    expect(orderEdge.color).toBe(colors.order);
    expect(itemEdge.color).not.toBe(orderEdge.color);
  });

  it("labels edges with frequency and mean duration", () => {
    const svg = ocdfgSvg(MODEL);
    expect(svg).toContain("2 (450.0s)");
    expect(svg).toContain("1 (1200.0s)");
  });
});

describe("rendering fragments", () => {
  it("renders grid cells with row/col tokens", () => {
    const grid: GridPayload = {
      rows: ["phone", "web"],
      cols: ["X", "Y"],
      counts: [
        [0, 1],
        [3, 2],
      ],
    };
    const html = gridHtml(grid, "event:channel", "item.product");
    expect(html).toContain('data-row="web" data-col="X">3<');
    expect(html).toContain('data-row="phone" data-col="Y">1<');
  });

  it("diff table row count equals the diff entry count", () => {
    const diff: DiffPayload = {
      activities: [
        {
          activity: "place",
          object_type: "item",
          freq_left: 1,
          freq_right: 1,
          presence: "both",
        },
      ],
      edges: [
        {
          source: "place",
          target: "pick",
          object_type: "item",
          freq_left: 1,
          freq_right: null,
          mean_dur_left: 300,
          mean_dur_right: null,
          presence: "left-only",
        },
      ],
    };
    const html = diffTableHtml(diff);
    const bodyRows = html.split("<tr").length - 2; // minus header row
    expect(bodyRows).toBe(diffRowCount(diff));
    expect(html).toContain("left-only");
  });

  it("shows an empty-log message", () => {
    expect(eventTableHtml([], 0)).toContain("No events");
  });
});
