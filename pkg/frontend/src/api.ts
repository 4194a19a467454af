/** Typed client for the cube service. All analytics live server-side; the
 * UI only composes these calls. */

import { encodeCoord, Coordinate } from "./coord.js";
import type {
  CubeInfo,
  DiffPayload,
  DimensionInfo,
  EventRow,
  GridPayload,
  LogSummary,
  OcdfgPayload,
  OcpnPayload,
  ObjectRow,
  UploadResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public payload: unknown,
  ) {
    super(`API error ${status}`);
  }
}

type Fetch = typeof fetch;

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: Fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!resp.ok) {
      let payload: unknown = null;
      try {
        payload = await resp.json();
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(resp.status, payload);
    }
    return (await resp.json()) as T;
  }

  uploadLog(body: BodyInit, format: "json" | "xml" = "json"): Promise<UploadResponse> {
    return this.request(`/logs?format=${format}`, { method: "POST", body });
  }

  logSummary(handle: string): Promise<{ handle: string; summary: LogSummary }> {
    return this.request(`/logs/${handle}`);
  }

  logEvents(handle: string, limit = 100, offset = 0): Promise<{ total: number; events: EventRow[] }> {
    return this.request(`/logs/${handle}/events?limit=${limit}&offset=${offset}`);
  }

  logObjects(handle: string): Promise<{ object_types: Record<string, ObjectRow[]> }> {
    return this.request(`/logs/${handle}/objects`);
  }

  dimensions(handle: string): Promise<{ dimensions: DimensionInfo[] }> {
    return this.request(`/logs/${handle}/dimensions`);
  }

  buildCube(handle: string, dims: string[], mode: "existence" | "all"): Promise<CubeInfo> {
    return this.request(`/logs/${handle}/cubes`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ dims, mode }),
    });
  }

  cubeInfo(handle: string): Promise<CubeInfo> {
    return this.request(`/cubes/${handle}`);
  }

  grid(handle: string, rows: string, cols?: string): Promise<GridPayload> {
    const colsPart = cols ? `&cols=${encodeURIComponent(cols)}` : "";
    return this.request(`/cubes/${handle}/grid?rows=${encodeURIComponent(rows)}${colsPart}`);
  }

  slice(handle: string, dim: string, value: string): Promise<CubeInfo> {
    return this.request(`/cubes/${handle}/slice`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ dim, value }),
    });
  }

  dice(handle: string, selection: Record<string, string[]>): Promise<CubeInfo> {
    return this.request(`/cubes/${handle}/dice`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ selection }),
    });
  }

  cellCount(handle: string, coord: Coordinate): Promise<{ count: number }> {
    return this.request(`/cubes/${handle}/cells/${encodeCoord(coord)}/count`);
  }

  cellOcdfg(handle: string, coord: Coordinate): Promise<OcdfgPayload> {
    return this.request(`/cubes/${handle}/cells/${encodeCoord(coord)}/ocdfg`);
  }

  cellOcpn(handle: string, coord: Coordinate): Promise<OcpnPayload> {
    return this.request(`/cubes/${handle}/cells/${encodeCoord(coord)}/ocpn`);
  }

  async cellLogBytes(handle: string, coord: Coordinate): Promise<Uint8Array> {
    const resp = await this.fetchFn(
      `${this.baseUrl}/cubes/${handle}/cells/${encodeCoord(coord)}/log`,
    );
    if (!resp.ok) throw new ApiError(resp.status, null);
    return new Uint8Array(await resp.arrayBuffer());
  }

  cellLogUrl(handle: string, coord: Coordinate): string {
    return `${this.baseUrl}/cubes/${handle}/cells/${encodeCoord(coord)}/log`;
  }

  compare(
    left: { cube: string; coord: Coordinate },
    right: { cube: string; coord: Coordinate },
  ): Promise<DiffPayload> {
    return this.request(`/compare`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        left: { cube: left.cube, coord: decodeURIComponent(encodeCoord(left.coord)) },
        right: { cube: right.cube, coord: decodeURIComponent(encodeCoord(right.coord)) },
      }),
    });
  }
}
