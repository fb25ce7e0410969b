/**
 * Latest-wins reconciliation for concurrent panel requests.
 *
 * Each panel (runs table, coverage banner, each analysis card) issues a
 * ticket per request and only renders a response whose ticket is still the
 * newest for that panel. Out-of-order completions of superseded requests
 * are dropped instead of overwriting fresher data.
 */
export class LatestWins {
  private issued = new Map<string, number>();

  /** Start a request for a panel and get its ticket. */
  begin(panel: string): number {
    const ticket = (this.issued.get(panel) ?? 0) + 1;
    this.issued.set(panel, ticket);
    return ticket;
  }

  /** True when the response for this ticket should be rendered. */
  accept(panel: string, ticket: number): boolean {
    return this.issued.get(panel) === ticket;
  }

  /**
   * Run a request under a ticket and apply the result only if still newest.
   * Errors from superseded requests are swallowed; the newest request's
   * error propagates so the panel can show it.
   */
  async render<T>(panel: string, work: () => Promise<T>, apply: (value: T) => void): Promise<boolean> {
    const ticket = this.begin(panel);
    let value: T;
    try {
      value = await work();
    } catch (error) {
      if (this.accept(panel, ticket)) throw error;
      return false;
    }
    if (!this.accept(panel, ticket)) return false;
    apply(value);
    return true;
  }
}
