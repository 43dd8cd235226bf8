import type {
  Facet,
  LeaderboardRow,
  MatchInfo,
  MatchResult,
  RegistrationForm,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }

  get isExpiredMatch(): boolean {
    return this.status === 410;
  }
}

async function parseError(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (typeof body?.detail === "string") return body.detail;
    return JSON.stringify(body);
  } catch {
    return response.statusText || `HTTP ${response.status}`;
  }
}

/** Thin JSON client over the game service; fetch is injectable for tests. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      throw new ApiError(response.status, await parseError(response));
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  registerUser(form: RegistrationForm): Promise<{ nickname: string }> {
    return this.post("/users", form);
  }

  startMatch(
    participants: string[],
    mode: string,
    language: string,
  ): Promise<MatchInfo> {
    return this.post("/matches", { mode, participants, language });
  }

  submitLadder(
    matchId: string,
    nickname: string,
    ascent: string[],
    descent: string[],
  ): Promise<MatchResult> {
    return this.post(`/matches/${encodeURIComponent(matchId)}/ladder`, {
      nickname,
      ascent,
      descent,
    });
  }

  leaderboard(
    facets: Partial<Record<Facet, string>>,
    language?: string,
    limit?: number,
  ): Promise<LeaderboardRow[]> {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(facets)) {
      if (value) params.set(key, value);
    }
    if (language) params.set("language", language);
    if (limit !== undefined) params.set("limit", String(limit));
    const query = params.toString();
    return this.request(`/leaderboard${query ? `?${query}` : ""}`);
  }
}
