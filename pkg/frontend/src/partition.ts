import type { PartitionJson } from "./types";

/** Block tiling arithmetic, mirroring the engine's partition semantics:
 * row j of blocks is shifted right by j*shift, block (i,j) spans
 * [i*w + j*shift, (i+1)*w - 1 + j*shift] x [j*h, (j+1)*h - 1] relative to
 * the origin. Kept in exact correspondence with the service so the overlay
 * never disagrees with the engine's pairing replies. */

function floorDiv(a: number, b: number): number {
  return Math.floor(a / b);
}

export function blockOf(p: PartitionJson, x: number, y: number): [number, number] {
  const rx = x - p.origin[0];
  const ry = y - p.origin[1];
  const j = floorDiv(ry, p.block_h);
  const i = floorDiv(rx - j * p.shift, p.block_w);
  return [i, j];
}

export function blockOrigin(p: PartitionJson, i: number, j: number): [number, number] {
  return [p.origin[0] + i * p.block_w + j * p.shift, p.origin[1] + j * p.block_h];
}

export interface BlockRect {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export function blockRect(p: PartitionJson, i: number, j: number): BlockRect {
  const [x0, y0] = blockOrigin(p, i, j);
  return { xMin: x0, xMax: x0 + p.block_w - 1, yMin: y0, yMax: y0 + p.block_h - 1 };
}

/** Edges of the cell (x,y) that lie on a block border, for overlay drawing.
 * An edge is a border when the neighbor across it belongs to another block. */
export function blockEdges(
  p: PartitionJson,
  x: number,
  y: number,
): { left: boolean; right: boolean; top: boolean; bottom: boolean } {
  const here = blockOf(p, x, y).join(",");
  return {
    left: blockOf(p, x - 1, y).join(",") !== here,
    right: blockOf(p, x + 1, y).join(",") !== here,
    top: blockOf(p, x, y + 1).join(",") !== here,
    bottom: blockOf(p, x, y - 1).join(",") !== here,
  };
}
