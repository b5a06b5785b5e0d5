import type { BoundsJson, CellJson, OrientationJson } from "./types";

export interface GhostCell {
  x: number;
  y: number;
  conflict: boolean;
}

/** Cells of orientation k anchored so its min corner lands on (ax, ay).
 * Orientation cells arrive from the service already normalized to (0,0),
 * so the anchor is just a translation. */
export function ghostCells(
  orientation: OrientationJson,
  ax: number,
  ay: number,
  occupied: ReadonlyArray<CellJson>,
  bounds: BoundsJson | null,
): GhostCell[] {
  const taken = new Set(occupied.map((c) => `${c.x},${c.y}`));
  return orientation.cells.map(([ox, oy]) => {
    const x = ax + ox;
    const y = ay + oy;
    let conflict = taken.has(`${x},${y}`);
    if (bounds && (x < bounds.x_min || x > bounds.x_max || y < bounds.y_min || y > bounds.y_max)) {
      conflict = true;
    }
    return { x, y, conflict };
  });
}

export function ghostLegal(cells: ReadonlyArray<GhostCell>): boolean {
  return cells.every((c) => !c.conflict);
}
