import { ApiClient, ApiError } from "./api.js";
import type { PlayScreen } from "./playScreen.js";
import type { MatchResult } from "./types.js";

export type PlayOutcome =
  | { kind: "result"; result: MatchResult }
  | { kind: "expired" }
  | { kind: "error"; message: string }
  | { kind: "retry"; message: string };

export interface ControllerEvents {
  onOutcome: (outcome: PlayOutcome) => void;
}

/**
 * Couples a play screen to the API: explicit submit, auto-submit when the
 * countdown reaches zero, and retry-preserving behaviour on network failure.
 * The ladder state is never cleared on failure, so a retry resends it as-is.
 */
export class MatchController {
  private inFlight = false;

  constructor(
    private readonly api: ApiClient,
    private readonly screen: PlayScreen,
    private readonly nickname: string,
    private readonly events: ControllerEvents,
  ) {}

  /** Drive this from the UI timer; fires the auto-submit exactly once. */
  async handleTick(): Promise<void> {
    if (this.screen.tick()) {
      await this.submit();
    }
  }

  async submit(): Promise<void> {
    if (this.inFlight || this.screen.isSubmitted) return;
    this.inFlight = true;
    try {
      const result = await this.api.submitLadder(
        this.screen.matchId,
        this.nickname,
        [...this.screen.aboveRungs],
        [...this.screen.belowRungs],
      );
      this.screen.markSubmitted();
      this.events.onOutcome({ kind: "result", result });
    } catch (error) {
      if (error instanceof ApiError && error.isExpiredMatch) {
        // server stamped us late: expiry wins over whatever the local clock said
        this.screen.markSubmitted();
        this.events.onOutcome({ kind: "expired" });
      } else if (error instanceof ApiError) {
        this.events.onOutcome({ kind: "error", message: error.message });
      } else {
        // network trouble: keep the in-progress ladder and invite a retry
        this.events.onOutcome({
          kind: "retry",
          message: error instanceof Error ? error.message : String(error),
        });
      }
    } finally {
      this.inFlight = false;
    }
  }
}
