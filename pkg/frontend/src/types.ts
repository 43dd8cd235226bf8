// Wire types mirroring the service JSON bodies. The client treats every
// server-computed value (score, stars, flags) as opaque: render, never derive.

export interface MatchResult {
  score: number;
  stars: number;
  ul: number;
  ulv: number;
  npl: number;
  validated_flags: boolean[];
  score_display?: number;
}

export interface MatchInfo {
  match_id: string;
  mode: string;
  language: string;
  prompt: string;
  participants: string[];
  started_at: number;
  duration: number;
  state: string;
}

export interface LeaderboardRow {
  nickname: string;
  score: number;
  games: number;
  age_band: string;
  education: string;
  profession: string;
  mother_tongue: string;
  reading_habits: string;
}

export interface RegistrationForm {
  nickname: string;
  age: number;
  education: string;
  profession: string;
  mother_tongue: string;
  reading_habits: string;
  language_pref: string;
}

export type Facet =
  | "age_band"
  | "education"
  | "profession"
  | "mother_tongue"
  | "reading_habits";

export const FACETS: readonly Facet[] = [
  "age_band",
  "education",
  "profession",
  "mother_tongue",
  "reading_habits",
];
