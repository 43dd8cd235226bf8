import { ApiClient } from "./api.js";
import type { Facet, LeaderboardRow } from "./types.js";

/**
 * Peer-filtered leaderboard state: facet selections drive refetches; a failed
 * refresh keeps the previous table visible behind an error banner.
 */
export class LeaderboardView {
  rows: LeaderboardRow[] = [];
  error: string | null = null;
  loaded = false;
  facets: Partial<Record<Facet, string>> = {};

  constructor(
    private readonly api: ApiClient,
    private readonly language?: string,
    private readonly limit?: number,
  ) {}

  async refresh(): Promise<void> {
    try {
      this.rows = await this.api.leaderboard(this.facets, this.language, this.limit);
      this.error = null;
      this.loaded = true;
    } catch (err) {
      // previous rows stay on screen; only the banner changes
      this.error = err instanceof Error ? err.message : String(err);
    }
  }

  async setFacet(name: Facet, value: string | null): Promise<void> {
    if (value) {
      this.facets[name] = value;
    } else {
      delete this.facets[name];
    }
    await this.refresh();
  }

  /** Message for the empty state; null when there is data to show. */
  statusMessage(): string | null {
    if (this.error) return this.error;
    if (this.loaded && this.rows.length === 0) return "no peers yet";
    return null;
  }
}
