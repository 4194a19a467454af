/** End-to-end check against a live service: every number the UI would show
 * (grid counts, diff rows, exported files) must be identical to the raw API
 * responses for the canonical fixture scenario. */

import { spawn, ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { diffRowCount, gridHtml } from "../src/render.js";
import { ocdfgSvg } from "../src/layout.js";
import { FIX1_BYTES } from "./fix1.js";

const PORT = 8765;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i += 1) {
    try {
      const resp = await fetch(`${BASE}/docs`);
      if (resp.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "ocpcube.cli", "serve", "--host", "127.0.0.1", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitForServer();
}, 30000);

afterAll(() => {
  server?.kill();
});

describe("FIX1 scenario, UI data layer vs direct API", () => {
  it("grid counts shown by the UI equal the API response", async () => {
    const api = new ApiClient(BASE);
    const { handle } = await api.uploadLog(FIX1_BYTES);
    const cube = await api.buildCube(
      handle,
      ["event:channel", "object:item.product"],
      "existence",
    );
    const grid = await api.grid(cube.handle, "event:channel", "object:item.product");

    const direct = await (
      await fetch(
        `${BASE}/cubes/${cube.handle}/grid?rows=event:channel&cols=object:item.product`,
      )
    ).json();
    expect(grid).toEqual(direct);
    expect(grid.counts).toEqual([
      [0, 1],
      [3, 2],
    ]);

    // every count rendered into the grid HTML appears verbatim
    const html = gridHtml(grid, "event:channel", "object:item.product");
    for (const row of grid.counts) {
      for (const n of row) {
        expect(html).toContain(`>${n}<`);
      }
    }
  });

  it("mode toggle refetches different counts for the same dims", async () => {
    const api = new ApiClient(BASE);
    const { handle } = await api.uploadLog(FIX1_BYTES);
    const dims = ["event:channel", "object:item.product"];
    const exist = await api.buildCube(handle, dims, "existence");
    const all = await api.buildCube(handle, dims, "all");
    const existGrid = await api.grid(exist.handle, "event:channel", "object:item.product");
    const allGrid = await api.grid(all.handle, "event:channel", "object:item.product");
    expect(existGrid.counts).toEqual([
      [0, 1],
      [3, 2],
    ]);
    expect(allGrid.counts).toEqual([
      [0, 1],
      [1, 0],
    ]);
  });

  it("diff table rows equal the API diff entry count", async () => {
    const api = new ApiClient(BASE);
    const { handle } = await api.uploadLog(FIX1_BYTES);
    const cube = await api.buildCube(handle, ["object:item.product"], "existence");
    const diff = await api.compare(
      { cube: cube.handle, coord: { "item.product": "X" } },
      { cube: cube.handle, coord: { "item.product": "Y" } },
    );
    const direct = await (
      await fetch(`${BASE}/compare`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({
          left: { cube: cube.handle, coord: "item.product=X" },
          right: { cube: cube.handle, coord: "item.product=Y" },
        }),
      })
    ).json();
    expect(diff).toEqual(direct);
    expect(diffRowCount(diff)).toBe(diff.activities.length + diff.edges.length);
    const edge = diff.edges.find((e) => e.source === "place" && e.target === "pick");
    expect(edge?.mean_dur_left).toBe(300);
    expect(edge?.mean_dur_right).toBe(600);
  });

  it("exported cell files are byte-identical to the API download", async () => {
    const api = new ApiClient(BASE);
    const { handle } = await api.uploadLog(FIX1_BYTES);
    const cube = await api.buildCube(handle, ["object:item.product"], "all");
    const coord = { "item.product": "X" };
    const viaClient = await api.cellLogBytes(cube.handle, coord);
    const direct = new Uint8Array(
      await (
        await fetch(`${BASE}/cubes/${cube.handle}/cells/item.product%3DX/log`)
      ).arrayBuffer(),
    );
    expect(Buffer.from(viaClient).equals(Buffer.from(direct))).toBe(true);
    const doc = JSON.parse(Buffer.from(viaClient).toString("utf-8"));
    expect(Object.keys(doc["ocel:events"])).toEqual(["e2"]);
  });

  it("renders the discovered model deterministically", async () => {
    const api = new ApiClient(BASE);
    const { handle } = await api.uploadLog(FIX1_BYTES);
    const cube = await api.buildCube(handle, ["object:item.product"], "existence");
    const model = await api.cellOcdfg(cube.handle, { "item.product": "X" });
    expect(ocdfgSvg(model)).toBe(ocdfgSvg(model));
    expect(ocdfgSvg(model)).toContain("place");
  });
});
