/** JSON shapes as delivered by the game service. The UI renders these
 * verbatim; it never derives game state on its own. */

export interface CellJson {
  x: number;
  y: number;
  owner: "A" | "B";
  ply: number;
}

export interface BoundsJson {
  x_min: number;
  x_max: number;
  y_min: number;
  y_max: number;
  width: number;
  height: number;
}

export interface AnimalJson {
  descriptor: string;
  size: number;
  diameter: number;
}

export interface OrientationJson {
  orientation: number;
  cells: [number, number][];
}

export interface PartitionJson {
  block_w: number;
  block_h: number;
  shift: number;
  origin: [number, number];
}

export type EngineMoveJson =
  | { type: "cell"; x: number; y: number }
  | { type: "placement"; orientation: number; dx: number; dy: number; cells: [number, number][] }
  | { type: "pass" };

export interface GameJson {
  session_id: string;
  animal: AnimalJson;
  bounds: BoundsJson | null;
  human_side: "alice" | "bob";
  engine: string;
  to_move: "alice" | "bob" | null;
  status: string;
  win_reason: string | null;
  ply: number;
  alice_move_count: number;
  cells: CellJson[];
  last_engine_move: EngineMoveJson | null;
  orientations: OrientationJson[];
  partition: PartitionJson | null;
}

export type MoveBody =
  | { type: "cell"; x: number; y: number }
  | { type: "placement"; orientation: number; dx: number; dy: number }
  | { type: "pass" };

export interface HintJson {
  move:
    | null
    | { type: "cell"; x: number; y: number }
    | { type: "placement"; orientation: number; dx: number; dy: number; cells: [number, number][] }
    | { type: "pass" };
  reason?: string;
}

export interface ReplayStepJson {
  ply: number;
  status: string;
  move: EngineMoveJson | null;
  cells: CellJson[];
}

export interface ReplayJson {
  animal: AnimalJson;
  bounds: BoundsJson | null;
  status: string;
  win_reason: string | null;
  ply: number;
  steps: ReplayStepJson[];
}

export interface CreateGameBody {
  animal: string;
  human_side: "alice" | "bob";
  engine?: string;
  board?: string;
  seed?: number;
}
