import { Camera, pointOfCell, visibleRange } from "./camera";
import { type BlockRect, blockEdges } from "./partition";
import type { GhostCell } from "./ghost";
import type { BoundsJson, CellJson, PartitionJson } from "./types";

export interface RenderState {
  camera: Camera;
  width: number;
  height: number;
  cells: ReadonlyArray<CellJson>;
  bounds: BoundsJson | null;
  partition: PartitionJson | null;
  showPartition: boolean;
  /** Partition block containing the engine's last copy, tinted. */
  highlightBlock: BlockRect | null;
  ghost: ReadonlyArray<GhostCell> | null;
  /** Cells to outline as a rejected-move flash. */
  flash: ReadonlyArray<[number, number]>;
  /** Cells of the most recent move, outlined for orientation. */
  lastMove: ReadonlyArray<[number, number]>;
}

const COLORS = {
  background: "#ffffff",
  outside: "#e8e4da",
  grid: "#d9d4c7",
  boundsEdge: "#6b6354",
  alice: "#2563eb",
  aliceText: "#ffffff",
  bob: ["#c2553a", "#a8432c", "#d96a4d"],
  partition: "#7c3aed",
  ghostOk: "rgba(22, 163, 74, 0.55)",
  ghostBad: "rgba(220, 38, 38, 0.65)",
  flash: "#f59e0b",
  lastMove: "#111827",
};

function cellRect(cam: Camera, x: number, y: number): [number, number, number] {
  const [px, py] = pointOfCell(cam, x, y);
  return [px, py, cam.scale];
}

function inBounds(b: BoundsJson, x: number, y: number): boolean {
  return x >= b.x_min && x <= b.x_max && y >= b.y_min && y <= b.y_max;
}

export function render(ctx: CanvasRenderingContext2D, view: RenderState): void {
  const cam = view.camera;
  ctx.fillStyle = COLORS.background;
  ctx.fillRect(0, 0, view.width, view.height);

  const { xMin: x0, xMax: x1, yMin: y0, yMax: y1 } = visibleRange(cam, view.width, view.height);

  // Shade everything outside a bounded board.
  if (view.bounds) {
    ctx.fillStyle = COLORS.outside;
    for (let y = y0; y <= y1; y++) {
      for (let x = x0; x <= x1; x++) {
        if (!inBounds(view.bounds, x, y)) {
          const [px, py, s] = cellRect(cam, x, y);
          ctx.fillRect(px, py, s, s);
        }
      }
    }
  }

  // Tint the block the engine just played into.
  if (view.highlightBlock && view.showPartition) {
    const b = view.highlightBlock;
    const [px, py] = pointOfCell(cam, b.xMin, b.yMax);
    ctx.fillStyle = "rgba(124, 58, 237, 0.10)";
    ctx.fillRect(px, py, (b.xMax - b.xMin + 1) * cam.scale, (b.yMax - b.yMin + 1) * cam.scale);
  }

  // Grid lines across the visible window.
  ctx.strokeStyle = COLORS.grid;
  ctx.lineWidth = 1;
  ctx.beginPath();
  for (let x = x0; x <= x1 + 1; x++) {
    const [px] = pointOfCell(cam, x, y0);
    ctx.moveTo(px + 0.5, 0);
    ctx.lineTo(px + 0.5, view.height);
  }
  for (let y = y0 - 1; y <= y1; y++) {
    const [, py] = pointOfCell(cam, x0, y);
    ctx.moveTo(0, py + 0.5);
    ctx.lineTo(view.width, py + 0.5);
  }
  ctx.stroke();

  // Occupied cells. Move-order numbers count each player's own moves:
  // Alice moves sit on even plies, Bob's on odd plies.
  const showNumbers = cam.scale >= 14;
  ctx.font = `${Math.floor(cam.scale * 0.45)}px ui-monospace, monospace`;
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  const copies = new Map<number, CellJson[]>();
  for (const cell of view.cells) {
    if (cell.owner === "B") {
      const group = copies.get(cell.ply);
      if (group) group.push(cell);
      else copies.set(cell.ply, [cell]);
    }
    if (cell.x < x0 || cell.x > x1 || cell.y < y0 || cell.y > y1) continue;
    const [px, py, s] = cellRect(cam, cell.x, cell.y);
    if (cell.owner === "A") {
      ctx.fillStyle = COLORS.alice;
      ctx.fillRect(px + 1, py + 1, s - 1, s - 1);
      if (showNumbers) {
        ctx.fillStyle = COLORS.aliceText;
        ctx.fillText(String((cell.ply >> 1) + 1), px + s / 2, py + s / 2 + 1);
      }
    } else {
      ctx.fillStyle = COLORS.bob[(cell.ply >> 1) % COLORS.bob.length];
      ctx.fillRect(px + 1, py + 1, s - 1, s - 1);
    }
  }

  // One move-order label per Bob copy, on the cell nearest its centroid.
  if (showNumbers) {
    ctx.fillStyle = COLORS.aliceText;
    for (const [ply, group] of copies) {
      const cx = group.reduce((a, c) => a + c.x, 0) / group.length;
      const cy = group.reduce((a, c) => a + c.y, 0) / group.length;
      let best = group[0];
      let bestDist = Infinity;
      for (const c of group) {
        const d = (c.x - cx) ** 2 + (c.y - cy) ** 2;
        if (d < bestDist) {
          bestDist = d;
          best = c;
        }
      }
      if (best.x < x0 || best.x > x1 || best.y < y0 || best.y > y1) continue;
      const [px, py, s] = cellRect(cam, best.x, best.y);
      ctx.fillText(String((ply + 1) >> 1), px + s / 2, py + s / 2 + 1);
    }
  }

  // Pairing-partition block borders.
  if (view.showPartition && view.partition) {
    ctx.strokeStyle = COLORS.partition;
    ctx.lineWidth = 2;
    ctx.beginPath();
    for (let y = y0; y <= y1; y++) {
      for (let x = x0; x <= x1; x++) {
        const edges = blockEdges(view.partition, x, y);
        const [px, py, s] = cellRect(cam, x, y);
        if (edges.left) {
          ctx.moveTo(px, py);
          ctx.lineTo(px, py + s);
        }
        if (edges.top) {
          ctx.moveTo(px, py);
          ctx.lineTo(px + s, py);
        }
        if (edges.right) {
          ctx.moveTo(px + s, py);
          ctx.lineTo(px + s, py + s);
        }
        if (edges.bottom) {
          ctx.moveTo(px, py + s);
          ctx.lineTo(px + s, py + s);
        }
      }
    }
    ctx.stroke();
  }

  // Bounded-board edge drawn over the grid.
  if (view.bounds) {
    const [lx, ty] = pointOfCell(cam, view.bounds.x_min, view.bounds.y_max);
    const w = (view.bounds.x_max - view.bounds.x_min + 1) * cam.scale;
    const h = (view.bounds.y_max - view.bounds.y_min + 1) * cam.scale;
    ctx.strokeStyle = COLORS.boundsEdge;
    ctx.lineWidth = 2;
    ctx.strokeRect(lx, ty, w, h);
  }

  // Placement preview.
  if (view.ghost) {
    for (const g of view.ghost) {
      const [px, py, s] = cellRect(cam, g.x, g.y);
      ctx.fillStyle = g.conflict ? COLORS.ghostBad : COLORS.ghostOk;
      ctx.fillRect(px + 1, py + 1, s - 1, s - 1);
    }
  }

  // Most recent move outline.
  ctx.strokeStyle = COLORS.lastMove;
  ctx.lineWidth = 2;
  for (const [x, y] of view.lastMove) {
    const [px, py, s] = cellRect(cam, x, y);
    ctx.strokeRect(px + 1.5, py + 1.5, s - 3, s - 3);
  }

  // Rejected-move flash.
  ctx.strokeStyle = COLORS.flash;
  ctx.lineWidth = 3;
  for (const [x, y] of view.flash) {
    const [px, py, s] = cellRect(cam, x, y);
    ctx.strokeRect(px + 1.5, py + 1.5, s - 3, s - 3);
  }
}
