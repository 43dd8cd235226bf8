import type { MatchInfo } from "./types.js";

export type RungOutcome =
  | { ok: true }
  | { ok: false; reason: "empty" | "duplicate" };

export type Clock = () => number; // seconds, same scale as match.started_at

/**
 * State of one timed play: the fixed center prompt, the editable rung lists,
 * and a countdown anchored to the server-issued started_at. The local clock
 * is advisory only; the server's verdict on lateness always wins.
 *
 * aboveRungs/belowRungs are kept nearest-to-prompt first, matching the wire
 * order; the view renders the above list reversed so the most generic word
 * sits at the top of the ladder.
 */
export class PlayScreen {
  readonly prompt: string;
  readonly matchId: string;
  readonly duration: number;
  private readonly startedAt: number;
  private aboveList: string[] = [];
  private belowList: string[] = [];
  private expired = false;
  private submittedFlag = false;

  constructor(
    match: MatchInfo,
    private readonly clock: Clock = () => Date.now() / 1000,
  ) {
    this.prompt = match.prompt;
    this.matchId = match.match_id;
    this.duration = match.duration;
    this.startedAt = match.started_at;
  }

  get aboveRungs(): readonly string[] {
    return this.aboveList;
  }

  get belowRungs(): readonly string[] {
    return this.belowList;
  }

  get remaining(): number {
    return Math.max(0, this.duration - (this.clock() - this.startedAt));
  }

  get submittable(): boolean {
    return !this.expired && !this.submittedFlag && this.remaining > 0;
  }

  get isExpired(): boolean {
    return this.expired;
  }

  get isSubmitted(): boolean {
    return this.submittedFlag;
  }

  private normalize(word: string): string {
    return word.trim().toLowerCase().replace(/\s+/g, " ");
  }

  private tryAdd(list: string[], word: string): RungOutcome {
    if (!this.submittable) {
      return { ok: false, reason: "empty" };
    }
    const lemma = this.normalize(word);
    if (!lemma) {
      return { ok: false, reason: "empty" };
    }
    const taken = new Set([this.prompt, ...this.aboveList, ...this.belowList]);
    if (taken.has(lemma)) {
      return { ok: false, reason: "duplicate" };
    }
    list.push(lemma);
    return { ok: true };
  }

  /** Add one step above (a broader word). Rejected inline before any network use. */
  addAbove(word: string): RungOutcome {
    return this.tryAdd(this.aboveList, word);
  }

  /** Add one step below (a more specific word). */
  addBelow(word: string): RungOutcome {
    return this.tryAdd(this.belowList, word);
  }

  removeAbove(index: number): void {
    this.aboveList.splice(index, 1);
  }

  removeBelow(index: number): void {
    this.belowList.splice(index, 1);
  }

  markSubmitted(): void {
    this.submittedFlag = true;
  }

  /**
   * Advance the countdown; returns true exactly once, on the tick where the
   * timer hits zero. From then on the inputs stay disabled.
   */
  tick(): boolean {
    if (!this.expired && !this.submittedFlag && this.remaining <= 0) {
      this.expired = true;
      return true;
    }
    return false;
  }
}
