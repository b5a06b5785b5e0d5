import type { ReplayJson, ReplayStepJson } from "./types";

/** Cursor over the per-ply snapshots of a decoded record. The UI never
 * reconstructs positions itself; it only selects which snapshot to show. */
export class ReplayCursor {
  private idx = 0;

  constructor(readonly data: ReplayJson) {}

  get step(): ReplayStepJson {
    return this.data.steps[this.idx];
  }

  get index(): number {
    return this.idx;
  }

  get lastIndex(): number {
    return this.data.steps.length - 1;
  }

  /** Move by delta snapshots, clamped to the record's range.
   * Returns true when the position changed. */
  seek(delta: number): boolean {
    const next = Math.min(this.lastIndex, Math.max(0, this.idx + delta));
    if (next === this.idx) return false;
    this.idx = next;
    return true;
  }

  jumpToStart(): boolean {
    return this.seek(-this.idx);
  }

  jumpToEnd(): boolean {
    return this.seek(this.lastIndex - this.idx);
  }
}
