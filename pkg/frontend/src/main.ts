import { api, ServiceError } from "./api";
import { render, type RenderState } from "./board";
import { type Camera, cellAtPoint, fitCamera, panned, zoomed } from "./camera";
import { MoveGate } from "./gate";
import { type GhostCell, ghostCells, ghostLegal } from "./ghost";
import { blockOf, blockRect } from "./partition";
import { ReplayCursor } from "./replay";
import type { BoundsJson, CellJson, EngineMoveJson, GameJson, MoveBody } from "./types";

type Mode =
  | { kind: "idle" }
  | { kind: "play"; game: GameJson }
  | { kind: "replay"; cursor: ReplayCursor };

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const canvas = el<HTMLCanvasElement>("board-canvas");
const wrap = el<HTMLDivElement>("board-wrap");
const ctx = canvas.getContext("2d")!;

const form = el<HTMLFormElement>("new-game-form");
const animalInput = el<HTMLInputElement>("animal-input");
const sideSelect = el<HTMLSelectElement>("side-select");
const boardSelect = el<HTMLSelectElement>("board-select");
const boardSizeFields = el<HTMLSpanElement>("board-size-fields");
const boardW = el<HTMLInputElement>("board-w");
const boardH = el<HTMLInputElement>("board-h");
const engineSelect = el<HTMLSelectElement>("engine-select");
const seedInput = el<HTMLInputElement>("seed-input");

const statusLine = el<HTMLDivElement>("status-line");
const messageLine = el<HTMLDivElement>("message-line");
const coordReadout = el<HTMLDivElement>("coord-readout");
const hintBtn = el<HTMLButtonElement>("hint-btn");
const fitBtn = el<HTMLButtonElement>("fit-btn");
const partitionToggle = el<HTMLInputElement>("partition-toggle");
const bobControls = el<HTMLDivElement>("bob-controls");
const rotateBtn = el<HTMLButtonElement>("rotate-btn");
const orientationLabel = el<HTMLSpanElement>("orientation-label");
const passBtn = el<HTMLButtonElement>("pass-btn");
const recordBtn = el<HTMLButtonElement>("record-btn");
const recordFile = el<HTMLInputElement>("record-file");
const replayControls = el<HTMLDivElement>("replay-controls");
const replayLabel = el<HTMLSpanElement>("replay-label");

let mode: Mode = { kind: "idle" };
let camera: Camera = { originX: -8, originY: 8, scale: 40 };
let hover: [number, number] | null = null;
let orientationIdx = 0;
let flash: [number, number][] = [];
let flashTimer: number | undefined;
let lastMoveCells: [number, number][] = [];
const gate = new MoveGate();

// ---------------------------------------------------------------- helpers

function cellsOfMove(mv: EngineMoveJson | null): [number, number][] {
  if (!mv || mv.type === "pass") return [];
  if (mv.type === "cell") return [[mv.x, mv.y]];
  return mv.cells.map(([x, y]) => [x, y]);
}

function currentCells(): ReadonlyArray<CellJson> {
  if (mode.kind === "play") return mode.game.cells;
  if (mode.kind === "replay") return mode.cursor.step.cells;
  return [];
}

function currentBounds(): BoundsJson | null {
  if (mode.kind === "play") return mode.game.bounds;
  if (mode.kind === "replay") return mode.cursor.data.bounds;
  return null;
}

function boundsText(b: BoundsJson | null): string {
  return b ? `${b.width}x${b.height} board` : "infinite board";
}

function setMessage(text: string, isError = false): void {
  messageLine.hidden = text === "";
  messageLine.textContent = text;
  messageLine.classList.toggle("error", isError);
}

function flashCells(cells: [number, number][]): void {
  flash = cells;
  if (flashTimer !== undefined) window.clearTimeout(flashTimer);
  flashTimer = window.setTimeout(() => {
    flash = [];
    draw();
  }, 1400);
  draw();
}

// ----------------------------------------------------------------- render

function draw(): void {
  const width = wrap.clientWidth;
  const height = wrap.clientHeight;
  let ghost: GhostCell[] | null = null;
  if (
    mode.kind === "play" &&
    mode.game.human_side === "bob" &&
    mode.game.status === "ongoing" &&
    mode.game.to_move === "bob" &&
    hover !== null
  ) {
    const g = mode.game;
    ghost = ghostCells(
      g.orientations[orientationIdx],
      hover[0],
      hover[1],
      g.cells,
      g.bounds,
    );
  }
  let highlightBlock = null;
  if (mode.kind === "play" && mode.game.partition) {
    const mv = mode.game.last_engine_move;
    if (mv && mv.type === "placement" && mv.cells.length > 0) {
      const p = mode.game.partition;
      const [i, j] = blockOf(p, mv.cells[0][0], mv.cells[0][1]);
      highlightBlock = blockRect(p, i, j);
    }
  }
  const view: RenderState = {
    camera,
    width,
    height,
    cells: currentCells(),
    bounds: currentBounds(),
    partition: mode.kind === "play" ? mode.game.partition : null,
    showPartition: partitionToggle.checked,
    highlightBlock,
    ghost,
    flash,
    lastMove: lastMoveCells,
  };
  render(ctx, view);
}

function resizeCanvas(): void {
  const dpr = window.devicePixelRatio || 1;
  canvas.width = Math.max(1, Math.floor(wrap.clientWidth * dpr));
  canvas.height = Math.max(1, Math.floor(wrap.clientHeight * dpr));
  ctx.setTransform(dpr, 0, 0, dpr, 0, 0);
  draw();
}

function updatePanel(): void {
  if (mode.kind === "idle") {
    statusLine.textContent = "no game - start one above or load a record";
    bobControls.hidden = true;
    replayControls.hidden = true;
    hintBtn.disabled = true;
    recordBtn.disabled = true;
    return;
  }
  if (mode.kind === "play") {
    const g = mode.game;
    const tail =
      g.status === "ongoing"
        ? `to move: ${g.to_move}`
        : `${g.status}${g.win_reason ? ` (${g.win_reason})` : ""}`;
    statusLine.textContent =
      `${g.animal.descriptor} on ${boundsText(g.bounds)}\n` +
      `you: ${g.human_side}  engine: ${g.engine}\n` +
      `ply ${g.ply}  alice moves ${g.alice_move_count}  ${tail}`;
    replayControls.hidden = true;
    hintBtn.disabled = g.status !== "ongoing";
    recordBtn.disabled = false;
    const isBob = g.human_side === "bob";
    bobControls.hidden = !isBob;
    if (isBob) {
      orientationLabel.textContent = `orientation ${orientationIdx + 1}/${g.orientations.length}`;
      passBtn.disabled = g.status !== "ongoing" || g.bounds === null;
      passBtn.title = g.bounds === null ? "passing is only legal on bounded boards" : "";
      rotateBtn.disabled = g.status !== "ongoing";
    }
    return;
  }
  const cursor = mode.cursor;
  const d = cursor.data;
  statusLine.textContent =
    `record: ${d.animal.descriptor} on ${boundsText(d.bounds)}\n` +
    `final: ${d.status}${d.win_reason ? ` (${d.win_reason})` : ""} at ply ${d.ply}`;
  replayLabel.textContent = `ply ${cursor.step.ply}/${d.ply} ${cursor.step.status}`;
  replayControls.hidden = false;
  bobControls.hidden = true;
  hintBtn.disabled = true;
  recordBtn.disabled = true;
}

function refresh(): void {
  updatePanel();
  draw();
}

// ------------------------------------------------------------- game state

function setGame(g: GameJson): void {
  const fresh = mode.kind !== "play" || mode.game.session_id !== g.session_id;
  mode = { kind: "play", game: g };
  if (orientationIdx >= g.orientations.length) orientationIdx = 0;
  lastMoveCells = cellsOfMove(g.last_engine_move);
  if (fresh) {
    camera = fitCamera(wrap.clientWidth, wrap.clientHeight, g.cells, g.bounds);
    setMessage("");
  }
  if (g.status !== "ongoing") {
    const who = g.status === "alice_won" ? "alice wins" : "bob wins";
    setMessage(`game over: ${who}${g.win_reason ? ` (${g.win_reason})` : ""}`);
  }
  refresh();
}

async function sendMove(move: MoveBody, target: [number, number][]): Promise<void> {
  if (mode.kind !== "play") return;
  const id = mode.game.session_id;
  try {
    const result = await gate.run(() => api.postMove(id, move));
    if (result === null) return; // a move is already in flight
    setGame(result);
  } catch (err) {
    if (err instanceof ServiceError) {
      setMessage(`${err.reason}: ${err.message}`, true);
      if (err.status === 422) flashCells(target);
    } else {
      setMessage(String(err), true);
    }
  }
}

function clickCell(x: number, y: number): void {
  if (mode.kind !== "play") return;
  const g = mode.game;
  if (g.status !== "ongoing") {
    setMessage("the game is over; start a new one", true);
    return;
  }
  if (g.to_move !== g.human_side) {
    setMessage("waiting for the engine", true);
    return;
  }
  if (g.human_side === "alice") {
    void sendMove({ type: "cell", x, y }, [[x, y]]);
    return;
  }
  const orientation = g.orientations[orientationIdx];
  const ghost = ghostCells(orientation, x, y, g.cells, g.bounds);
  if (!ghostLegal(ghost)) {
    flashCells(ghost.filter((c) => c.conflict).map((c) => [c.x, c.y]));
    setMessage("placement overlaps occupied cells or leaves the board", true);
    return;
  }
  void sendMove(
    { type: "placement", orientation: orientation.orientation, dx: x, dy: y },
    ghost.map((c) => [c.x, c.y]),
  );
}

// ---------------------------------------------------------------- actions

async function startGame(): Promise<void> {
  const body = {
    animal: animalInput.value.trim(),
    human_side: sideSelect.value as "alice" | "bob",
    seed: Number(seedInput.value) || 0,
    ...(boardSelect.value === "bounded"
      ? { board: `${Number(boardW.value)}x${Number(boardH.value)}` }
      : {}),
    ...(engineSelect.value !== "auto" ? { engine: engineSelect.value } : {}),
  };
  try {
    const g = await api.createGame(body);
    orientationIdx = 0;
    setGame(g);
  } catch (err) {
    if (err instanceof ServiceError) setMessage(`${err.reason}: ${err.message}`, true);
    else setMessage(String(err), true);
  }
}

async function showHint(): Promise<void> {
  if (mode.kind !== "play") return;
  try {
    const h = await api.getHint(mode.game.session_id);
    if (h.move === null) {
      setMessage(`no hint: ${h.reason ?? "unavailable"}`);
      return;
    }
    if (h.move.type === "cell") {
      setMessage(`hint: cell (${h.move.x}, ${h.move.y})`);
      flashCells([[h.move.x, h.move.y]]);
    } else if (h.move.type === "placement") {
      setMessage(`hint: copy at (${h.move.dx}, ${h.move.dy}), orientation ${h.move.orientation}`);
      flashCells(h.move.cells.map(([x, y]) => [x, y]));
    } else {
      setMessage("hint: pass");
    }
  } catch (err) {
    if (err instanceof ServiceError) setMessage(`${err.reason}: ${err.message}`, true);
  }
}

async function downloadRecord(): Promise<void> {
  if (mode.kind !== "play") return;
  try {
    const text = await api.getRecord(mode.game.session_id);
    const blob = new Blob([text], { type: "text/plain" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = `game-${mode.game.session_id.slice(0, 8)}.record`;
    a.click();
    URL.revokeObjectURL(a.href);
  } catch (err) {
    if (err instanceof ServiceError) setMessage(`${err.reason}: ${err.message}`, true);
  }
}

async function loadRecord(file: File): Promise<void> {
  try {
    const text = await file.text();
    const data = await api.replay(text);
    const cursor = new ReplayCursor(data);
    cursor.jumpToEnd();
    mode = { kind: "replay", cursor };
    lastMoveCells = cellsOfMove(cursor.step.move);
    camera = fitCamera(wrap.clientWidth, wrap.clientHeight, cursor.step.cells, data.bounds);
    setMessage("");
    refresh();
  } catch (err) {
    if (err instanceof ServiceError) setMessage(`${err.reason}: ${err.message}`, true);
    else setMessage(String(err), true);
  }
}

function seekReplay(delta: number): void {
  if (mode.kind !== "replay") return;
  if (Math.abs(delta) > mode.cursor.lastIndex) {
    delta > 0 ? mode.cursor.jumpToEnd() : mode.cursor.jumpToStart();
  } else if (!mode.cursor.seek(delta)) {
    return;
  }
  lastMoveCells = cellsOfMove(mode.cursor.step.move);
  refresh();
}

function rotateGhost(): void {
  if (mode.kind !== "play" || mode.game.human_side !== "bob") return;
  orientationIdx = (orientationIdx + 1) % mode.game.orientations.length;
  updatePanel();
  draw();
}

// ------------------------------------------------------------ form wiring

function populateEngines(): void {
  const forAlice = sideSelect.value === "alice";
  const options = forAlice
    ? ["auto", "bob:pairing", "bob:adjacent-blocker", "bob:random"]
    : ["auto", "alice:greedy", "alice:fast-square", "alice:random"];
  engineSelect.innerHTML = "";
  for (const name of options) {
    const opt = document.createElement("option");
    opt.value = name;
    opt.textContent = name;
    engineSelect.appendChild(opt);
  }
}

sideSelect.addEventListener("change", populateEngines);
boardSelect.addEventListener("change", () => {
  boardSizeFields.hidden = boardSelect.value !== "bounded";
});
form.addEventListener("submit", (e) => {
  e.preventDefault();
  void startGame();
});

hintBtn.addEventListener("click", () => void showHint());
fitBtn.addEventListener("click", () => {
  camera = fitCamera(wrap.clientWidth, wrap.clientHeight, [...currentCells()], currentBounds());
  draw();
});
partitionToggle.addEventListener("change", draw);
rotateBtn.addEventListener("click", rotateGhost);
passBtn.addEventListener("click", () => void sendMove({ type: "pass" }, []));
recordBtn.addEventListener("click", () => void downloadRecord());
recordFile.addEventListener("change", () => {
  const file = recordFile.files?.[0];
  if (file) void loadRecord(file);
  recordFile.value = "";
});
el<HTMLButtonElement>("replay-start").addEventListener("click", () => seekReplay(-1e9));
el<HTMLButtonElement>("replay-prev").addEventListener("click", () => seekReplay(-1));
el<HTMLButtonElement>("replay-next").addEventListener("click", () => seekReplay(1));
el<HTMLButtonElement>("replay-end").addEventListener("click", () => seekReplay(1e9));
el<HTMLButtonElement>("close-replay-btn").addEventListener("click", () => {
  mode = { kind: "idle" };
  lastMoveCells = [];
  refresh();
});

// ---------------------------------------------------------- canvas events

let dragStart: { px: number; py: number; cam: Camera } | null = null;
let dragged = false;

function canvasPoint(e: MouseEvent): [number, number] {
  const rect = canvas.getBoundingClientRect();
  return [e.clientX - rect.left, e.clientY - rect.top];
}

canvas.addEventListener("mousedown", (e) => {
  const [px, py] = canvasPoint(e);
  dragStart = { px, py, cam: camera };
  dragged = false;
});

window.addEventListener("mousemove", (e) => {
  const [px, py] = canvasPoint(e);
  if (dragStart) {
    const dx = px - dragStart.px;
    const dy = py - dragStart.py;
    if (Math.abs(dx) + Math.abs(dy) > 4) dragged = true;
    if (dragged) {
      camera = panned(dragStart.cam, dx, dy);
      draw();
      return;
    }
  }
  const cell = cellAtPoint(camera, px, py);
  if (!hover || hover[0] !== cell[0] || hover[1] !== cell[1]) {
    hover = cell;
    coordReadout.textContent = `cell (${cell[0]}, ${cell[1]})`;
    draw();
  }
});

window.addEventListener("mouseup", (e) => {
  if (!dragStart) return;
  const wasDrag = dragged;
  dragStart = null;
  dragged = false;
  if (wasDrag || e.target !== canvas) return;
  const [px, py] = canvasPoint(e);
  const [x, y] = cellAtPoint(camera, px, py);
  clickCell(x, y);
});

canvas.addEventListener("mouseleave", () => {
  hover = null;
  coordReadout.textContent = "";
  draw();
});

canvas.addEventListener("wheel", (e) => {
  e.preventDefault();
  const [px, py] = canvasPoint(e);
  camera = zoomed(camera, e.deltaY < 0 ? 1.2 : 1 / 1.2, px, py);
  draw();
});

window.addEventListener("keydown", (e) => {
  const tag = (document.activeElement?.tagName ?? "").toLowerCase();
  if (tag === "input" || tag === "select" || tag === "textarea") return;
  switch (e.key) {
    case "r":
      rotateGhost();
      break;
    case "f":
      camera = fitCamera(wrap.clientWidth, wrap.clientHeight, [...currentCells()], currentBounds());
      draw();
      break;
    case "ArrowLeft":
      seekReplay(-1);
      break;
    case "ArrowRight":
      seekReplay(1);
      break;
    case "Home":
      seekReplay(-1e9);
      break;
    case "End":
      seekReplay(1e9);
      break;
  }
});

new ResizeObserver(resizeCanvas).observe(wrap);
populateEngines();
resizeCanvas();
updatePanel();
