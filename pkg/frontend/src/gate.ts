/** One in-flight request per session: while a move is pending, further
 * submissions are refused (not queued), and the board only repaints from
 * the response. Keeps state updates strictly in response order. */
export class MoveGate {
  private busy = false;

  get pending(): boolean {
    return this.busy;
  }

  /** Run fn if idle. Returns null when refused because a call is in flight. */
  async run<T>(fn: () => Promise<T>): Promise<T | null> {
    if (this.busy) return null;
    this.busy = true;
    try {
      return await fn();
    } finally {
      this.busy = false;
    }
  }
}
