import type { MatchResult } from "./types.js";

export interface RungFlag {
  word: string;
  valid: boolean;
}

export interface ResultViewModel {
  expired: boolean;
  stars: number; // straight from the server, never derived from the score
  starGlyphs: string;
  scoreText: string;
  validatedText: string;
  rungs: RungFlag[]; // above rungs first (nearest prompt first), then below
}

/**
 * Shape a server result for display. Every number is taken verbatim from the
 * MatchResult: the client never recomputes scores or star counts.
 */
export function resultView(
  result: MatchResult,
  aboveRungs: readonly string[],
  belowRungs: readonly string[],
): ResultViewModel {
  const flags = result.validated_flags;
  const rungs: RungFlag[] = [];
  aboveRungs.forEach((word, index) => {
    rungs.push({ word, valid: flags[index] ?? false });
  });
  belowRungs.forEach((word, index) => {
    rungs.push({ word, valid: flags[aboveRungs.length + index] ?? false });
  });
  const shown =
    result.score_display !== undefined
      ? result.score_display
      : Math.round(result.score);
  return {
    expired: false,
    stars: result.stars,
    starGlyphs: "★".repeat(result.stars) + "☆".repeat(5 - result.stars),
    scoreText: `${shown} points`,
    validatedText: `${result.ulv} of ${result.ul} rungs validated`,
    rungs,
  };
}

export function expiredView(): ResultViewModel {
  return {
    expired: true,
    stars: 0,
    starGlyphs: "",
    scoreText: "time is up",
    validatedText: "the 120 second window closed before your ladder arrived",
    rungs: [],
  };
}
