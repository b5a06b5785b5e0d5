import { describe, expect, it } from "vitest";
import { ghostCells, ghostLegal } from "../src/ghost";
import type { BoundsJson, CellJson, OrientationJson } from "../src/types";

// The L-shaped three-cell animal in its identity orientation.
const EL: OrientationJson = { orientation: 0, cells: [[0, 0], [0, 1], [1, 0]] };

const BOUNDS: BoundsJson = {
  x_min: 0,
  x_max: 4,
  y_min: 0,
  y_max: 4,
  width: 5,
  height: 5,
};

function occ(...cells: [number, number][]): CellJson[] {
  return cells.map(([x, y], i) => ({ x, y, owner: "A" as const, ply: i }));
}

describe("ghostCells", () => {
  it("anchors the orientation's min corner at the clicked cell", () => {
    const g = ghostCells(EL, 3, 2, [], null);
    expect(g.map((c) => [c.x, c.y])).toEqual([
      [3, 2],
      [3, 3],
      [4, 2],
    ]);
    expect(ghostLegal(g)).toBe(true);
  });

  it("flags overlaps with occupied cells", () => {
    const g = ghostCells(EL, 3, 2, occ([4, 2], [0, 0]), null);
    const byCell = new Map(g.map((c) => [`${c.x},${c.y}`, c.conflict]));
    expect(byCell.get("4,2")).toBe(true);
    expect(byCell.get("3,2")).toBe(false);
    expect(byCell.get("3,3")).toBe(false);
    expect(ghostLegal(g)).toBe(false);
  });

  it("flags cells that leave a bounded board", () => {
    const g = ghostCells(EL, 4, 4, [], BOUNDS);
    const byCell = new Map(g.map((c) => [`${c.x},${c.y}`, c.conflict]));
    expect(byCell.get("4,4")).toBe(false);
    expect(byCell.get("4,5")).toBe(true);
    expect(byCell.get("5,4")).toBe(true);
    expect(ghostLegal(g)).toBe(false);
  });

  it("treats the infinite board as unbounded", () => {
    const g = ghostCells(EL, -100, 250, [], null);
    expect(ghostLegal(g)).toBe(true);
  });
});
