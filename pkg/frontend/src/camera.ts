import type { BoundsJson, CellJson } from "./types";

/** Viewport over the grid. World y points up, screen y points down; a cell
 * (x, y) renders as the square with top-left screen corner at
 * ((x - originX) * scale, (originY - y) * scale - scale). All placement
 * input snaps to the integer cell under the pointer. */
export interface Camera {
  originX: number; // world x at the left edge, in cells (fractional ok)
  originY: number; // world y at the top edge
  scale: number; // pixels per cell
}

export const MIN_SCALE = 6;
export const MAX_SCALE = 72;

// Guard against float jitter at cell borders so a click on a rendered
// cell's own top-left corner always hits that cell.
const EPS = 1e-9;

export function cellAtPoint(cam: Camera, px: number, py: number): [number, number] {
  return [
    Math.floor(cam.originX + px / cam.scale + EPS),
    Math.ceil(cam.originY - py / cam.scale - EPS) - 1,
  ];
}

export function pointOfCell(cam: Camera, x: number, y: number): [number, number] {
  // top-left pixel of the cell's square
  return [(x - cam.originX) * cam.scale, (cam.originY - y - 1) * cam.scale];
}

export function panned(cam: Camera, dxPx: number, dyPx: number): Camera {
  return {
    originX: cam.originX - dxPx / cam.scale,
    originY: cam.originY + dyPx / cam.scale,
    scale: cam.scale,
  };
}

/** Zoom by a factor keeping the world point under (px, py) fixed. */
export function zoomed(cam: Camera, factor: number, px: number, py: number): Camera {
  const scale = Math.min(MAX_SCALE, Math.max(MIN_SCALE, cam.scale * factor));
  if (scale === cam.scale) return cam;
  const wx = cam.originX + px / cam.scale;
  const wy = cam.originY - py / cam.scale;
  return { originX: wx - px / scale, originY: wy + py / scale, scale };
}

/** Fit the occupied area (or the board) with a margin; the infinite board
 * is rendered lazily, so this is the only sizing the camera ever needs. */
export function fitCamera(
  width: number,
  height: number,
  cells: CellJson[],
  bounds: BoundsJson | null,
  margin = 3,
): Camera {
  let xMin: number, xMax: number, yMin: number, yMax: number;
  if (bounds) {
    ({ x_min: xMin, x_max: xMax, y_min: yMin, y_max: yMax } = bounds);
  } else if (cells.length > 0) {
    xMin = Math.min(...cells.map((c) => c.x));
    xMax = Math.max(...cells.map((c) => c.x));
    yMin = Math.min(...cells.map((c) => c.y));
    yMax = Math.max(...cells.map((c) => c.y));
  } else {
    xMin = yMin = -4;
    xMax = yMax = 4;
  }
  xMin -= margin;
  yMin -= margin;
  xMax += margin;
  yMax += margin;
  const scale = Math.min(
    MAX_SCALE,
    Math.max(MIN_SCALE, Math.floor(Math.min(width / (xMax - xMin + 1), height / (yMax - yMin + 1)))),
  );
  const centerX = (xMin + xMax + 1) / 2;
  const centerY = (yMin + yMax + 1) / 2;
  return {
    originX: centerX - width / (2 * scale),
    originY: centerY + height / (2 * scale),
    scale,
  };
}

/** Inclusive world-cell range currently visible. */
export function visibleRange(
  cam: Camera,
  width: number,
  height: number,
): { xMin: number; xMax: number; yMin: number; yMax: number } {
  const [xMin, yMax] = cellAtPoint(cam, 0, 0);
  const [xMax, yMin] = cellAtPoint(cam, width - 1, height - 1);
  return { xMin, xMax, yMin, yMax };
}
