/** Payload shapes of the cube service's REST API. */

export interface LogSummary {
  events: number;
  objects: number;
  types: number;
  object_types: string[];
  attribute_names: string[];
}

export interface UploadResponse {
  handle: string;
  summary: LogSummary;
}

export interface DimensionInfo {
  spec: string;
  kind: "event" | "object";
  name: string;
  scope: string | null;
}

export interface EventRow {
  id: string;
  activity: string;
  timestamp: string;
  vmap: Record<string, string>;
  omap: string[];
}

export interface ObjectRow {
  id: string;
  ovmap: Record<string, string>;
}

export interface CubeInfo {
  handle: string;
  log: string;
  dims: DimensionInfo[];
  mode: "existence" | "all";
  domains: Record<string, string[]>;
  cells: number;
  events: number;
}

export interface GridPayload {
  rows: string[];
  cols: string[];
  counts: number[][];
}

export interface DfgNode {
  activity: string;
  frequency: number;
  incidence: number;
}

export interface DfgEdge {
  source: string;
  target: string;
  frequency: number;
  duration: { mean: number; median: number; min: number; max: number };
}

export interface TypeGraphPayload {
  nodes: DfgNode[];
  edges: DfgEdge[];
  starts: Record<string, number>;
  ends: Record<string, number>;
  trace_count: number;
}

export interface OcdfgPayload {
  object_types: string[];
  graphs: Record<string, TypeGraphPayload>;
}

export interface OcpnPayload {
  transitions: string[];
  subnets: Record<
    string,
    {
      source: string;
      sink: string;
      places: string[];
      transitions: string[];
      arcs: { source: string; target: string; variable: boolean }[];
    }
  >;
}

export interface DiffActivity {
  activity: string;
  object_type: string;
  freq_left: number | null;
  freq_right: number | null;
  presence: "left-only" | "right-only" | "both";
}

export interface DiffEdge {
  source: string;
  target: string;
  object_type: string;
  freq_left: number | null;
  freq_right: number | null;
  mean_dur_left: number | null;
  mean_dur_right: number | null;
  presence: "left-only" | "right-only" | "both";
}

export interface DiffPayload {
  activities: DiffActivity[];
  edges: DiffEdge[];
}

export interface ValidationErrorPayload {
  detail: string;
  errors?: { code: string; message: string; location: string }[];
}
