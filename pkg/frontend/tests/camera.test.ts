import { describe, expect, it } from "vitest";
import {
  type Camera,
  MAX_SCALE,
  MIN_SCALE,
  cellAtPoint,
  fitCamera,
  panned,
  pointOfCell,
  visibleRange,
  zoomed,
} from "../src/camera";
import type { CellJson } from "../src/types";

const CAMS: Camera[] = [
  { originX: 0, originY: 0, scale: 24 },
  { originX: -7.25, originY: 3.5, scale: 10 },
  { originX: 12.9, originY: -4.1, scale: 37 },
];

describe("cell/pixel round-trips", () => {
  it("maps a cell's top-left pixel back to the cell", () => {
    for (const cam of CAMS) {
      for (let y = -9; y <= 9; y += 3) {
        for (let x = -9; x <= 9; x += 3) {
          const [px, py] = pointOfCell(cam, x, y);
          expect(cellAtPoint(cam, px, py)).toEqual([x, y]);
        }
      }
    }
  });

  it("maps a cell's center pixel back to the cell", () => {
    for (const cam of CAMS) {
      for (let y = -5; y <= 5; y += 2) {
        for (let x = -5; x <= 5; x += 2) {
          const [px, py] = pointOfCell(cam, x, y);
          expect(cellAtPoint(cam, px + cam.scale / 2, py + cam.scale / 2)).toEqual([x, y]);
        }
      }
    }
  });

  it("assigns pixels just across a cell border to the neighbor", () => {
    const cam = CAMS[0];
    const [px, py] = pointOfCell(cam, 2, 2);
    expect(cellAtPoint(cam, px - 0.01, py)).toEqual([1, 2]);
    expect(cellAtPoint(cam, px, py + cam.scale + 0.01)).toEqual([2, 1]);
  });
});

describe("panned", () => {
  it("moves the world opposite to the drag", () => {
    const cam = CAMS[1];
    const moved = panned(cam, 30, -20);
    expect(moved.originX).toBeCloseTo(cam.originX - 3);
    expect(moved.originY).toBeCloseTo(cam.originY - 2);
    expect(moved.scale).toBe(cam.scale);
  });

  it("keeps the cell under the pointer fixed through a pan and back", () => {
    const cam = CAMS[2];
    const back = panned(panned(cam, 17, -23), -17, 23);
    expect(back.originX).toBeCloseTo(cam.originX);
    expect(back.originY).toBeCloseTo(cam.originY);
  });
});

describe("zoomed", () => {
  it("keeps the world point under the anchor fixed", () => {
    const cam = CAMS[0];
    const z = zoomed(cam, 1.5, 120, 80);
    const before = [cam.originX + 120 / cam.scale, cam.originY - 80 / cam.scale];
    const after = [z.originX + 120 / z.scale, z.originY - 80 / z.scale];
    expect(after[0]).toBeCloseTo(before[0]);
    expect(after[1]).toBeCloseTo(before[1]);
    expect(z.scale).toBeCloseTo(36);
  });

  it("clamps to the scale limits", () => {
    const cam: Camera = { originX: 0, originY: 0, scale: MIN_SCALE };
    expect(zoomed(cam, 0.5, 10, 10).scale).toBe(MIN_SCALE);
    const cam2: Camera = { originX: 0, originY: 0, scale: MAX_SCALE };
    expect(zoomed(cam2, 2, 10, 10).scale).toBe(MAX_SCALE);
  });
});

describe("fitCamera", () => {
  const cells: CellJson[] = [
    { x: -2, y: 1, owner: "A", ply: 0 },
    { x: 5, y: 4, owner: "B", ply: 1 },
  ];

  it("brings every occupied cell into the visible range", () => {
    const cam = fitCamera(640, 480, cells, null);
    const r = visibleRange(cam, 640, 480);
    for (const c of cells) {
      expect(c.x).toBeGreaterThanOrEqual(r.xMin);
      expect(c.x).toBeLessThanOrEqual(r.xMax);
      expect(c.y).toBeGreaterThanOrEqual(r.yMin);
      expect(c.y).toBeLessThanOrEqual(r.yMax);
    }
  });

  it("fits a bounded board regardless of cells", () => {
    const bounds = {
      x_min: 0,
      x_max: 11,
      y_min: 0,
      y_max: 11,
      width: 12,
      height: 12,
    };
    const cam = fitCamera(800, 600, [], bounds);
    const r = visibleRange(cam, 800, 600);
    expect(r.xMin).toBeLessThanOrEqual(0);
    expect(r.xMax).toBeGreaterThanOrEqual(11);
    expect(r.yMin).toBeLessThanOrEqual(0);
    expect(r.yMax).toBeGreaterThanOrEqual(11);
  });

  it("falls back to a small window around the origin on an empty game", () => {
    const cam = fitCamera(500, 500, [], null);
    const r = visibleRange(cam, 500, 500);
    expect(r.xMin).toBeLessThanOrEqual(-4);
    expect(r.xMax).toBeGreaterThanOrEqual(4);
  });

  it("respects the scale bounds", () => {
    const tiny = fitCamera(100, 100, [], {
      x_min: 0,
      x_max: 99,
      y_min: 0,
      y_max: 99,
      width: 100,
      height: 100,
    });
    expect(tiny.scale).toBe(MIN_SCALE);
    const huge = fitCamera(2000, 2000, [], {
      x_min: 0,
      x_max: 1,
      y_min: 0,
      y_max: 1,
      width: 2,
      height: 2,
    });
    expect(huge.scale).toBe(MAX_SCALE);
  });
});
