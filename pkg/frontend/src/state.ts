/** Client view state: current handles, dimension choices, cell selection.
 * Enforces the at-most-two-selected-cells rule and discards stale
 * responses via request sequence numbers. */

import type { Coordinate } from "./coord.js";

export type OutputTab = "log" | "ocdfg" | "ocpn" | "diff";

export interface SelectedCell {
  cube: string;
  coord: Coordinate;
  label: string;
}

export class ViewState {
  logHandle: string | null = null;
  cubeHandle: string | null = null;
  chosenDims: string[] = [];
  mode: "existence" | "all" = "existence";
  rowDim: string | null = null;
  colDim: string | null = null;
  selected: SelectedCell[] = [];
  outputTab: OutputTab = "log";

  private seq = 0;
  private lastApplied = 0;

  /** Select a cell; a third selection replaces the oldest one. */
  selectCell(cell: SelectedCell): void {
    const existing = this.selected.findIndex(
      (c) => c.cube === cell.cube && coordKey(c.coord) === coordKey(cell.coord),
    );
    if (existing >= 0) {
      this.selected.splice(existing, 1);
      return;
    }
    this.selected.push(cell);
    if (this.selected.length > 2) this.selected.shift();
    if (this.outputTab === "diff" && this.selected.length !== 2) {
      this.outputTab = "log";
    }
  }

  clearSelection(): void {
    this.selected = [];
    if (this.outputTab === "diff") this.outputTab = "log";
  }

  get diffAvailable(): boolean {
    return this.selected.length === 2;
  }

  setTab(tab: OutputTab): boolean {
    if (tab === "diff" && !this.diffAvailable) return false;
    this.outputTab = tab;
    return true;
  }

  /** Toggling materialization keeps the dimension selection. */
  setMode(mode: "existence" | "all"): void {
    this.mode = mode;
    this.cubeHandle = null; // counts must be refetched
    this.clearSelection();
  }

  /** Issue a sequence number for an in-flight request. */
  nextSeq(): number {
    this.seq += 1;
    return this.seq;
  }

  /** True when the response for `seq` is still the newest one. */
  applyIfFresh(seq: number): boolean {
    if (seq < this.lastApplied) return false;
    this.lastApplied = seq;
    return true;
  }
}

export function coordKey(coord: Coordinate): string {
  return Object.keys(coord)
    .sort()
    .map((k) => `${k}=${coord[k]}`)
    .join("&");
}
