/** Cell coordinate encoding shared with the service: dim=value pairs,
 * missing-value bucket spelled __null__. */

export const NULL_TOKEN = "__null__";

export type Coordinate = Record<string, string>;

/** Encode a coordinate as an URL path segment, dims in sorted order so the
 * same cell always maps to the same URL. */
export function encodeCoord(coord: Coordinate): string {
  const pairs = Object.keys(coord)
    .sort()
    .map((dim) => `${dim}=${coord[dim]}`);
  return encodeURIComponent(pairs.join("&"));
}

export function decodeCoord(segment: string): Coordinate {
  const text = decodeURIComponent(segment);
  const coord: Coordinate = {};
  if (text === "" || text === "__root__") return coord;
  for (const pair of text.split("&")) {
    const eq = pair.indexOf("=");
    if (eq < 0) throw new Error(`bad coordinate pair: ${pair}`);
    coord[pair.slice(0, eq)] = pair.slice(eq + 1);
  }
  return coord;
}

export function displayValue(token: string): string {
  return token === NULL_TOKEN ? "(none)" : token;
}
