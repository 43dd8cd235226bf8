"""Users, match lifecycle across the three game modes, the 120 s timer, leaderboards."""

from __future__ import annotations

import random
import statistics
import threading
import time
import uuid
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

from .config import EngineConfig
from .ladder_graph import (
    GameMode,
    Ladder,
    LadderError,
    PlayGraph,
    Side,
    deserialize_graph,
    init_graph,
    record_play,
    serialize_graph,
    update_max_length,
)
from .levels import LevelTable, PlayerProgress, check_advance, draw_prompt
from .lexicon import KnowledgeBase, Language, LexicalEntry, normalize_lemma
from .scoring import (
    MatchResult,
    apply_time_bonus,
    compute_npl,
    compute_score,
    stars,
    validated_length,
)


class Education(str, Enum):
    PRIMARY = "primary"
    MIDDLE = "middle"
    HIGH_SCHOOL = "high_school"
    BACHELOR = "bachelor"
    MASTER = "master"
    DOCTORATE = "doctorate"
    OTHER = "other"


class ReadingHabits(str, Enum):
    NEVER = "never"
    MONTHLY = "monthly"
    WEEKLY = "weekly"
    DAILY = "daily"


# open set: any non-empty profession string is accepted, these are the
# canonical choices surfaced by clients
CANONICAL_PROFESSIONS = (
    "student",
    "teacher",
    "researcher",
    "engineer",
    "healthcare",
    "office_worker",
    "self_employed",
    "retired",
    "unemployed",
    "other",
)

LEADERBOARD_FACETS = (
    "age_band",
    "education",
    "profession",
    "mother_tongue",
    "reading_habits",
)


class SessionError(ValueError):
    pass


class DuplicateNicknameError(SessionError):
    pass


class UnknownUserError(SessionError):
    pass


class UnknownMatchError(SessionError):
    pass


class NotParticipantError(SessionError):
    pass


class AlreadySubmittedError(SessionError):
    pass


class ExpiredMatchError(SessionError):
    """Submission arrived after the match deadline (server clock authoritative)."""


def age_band(age: int) -> str:
    """Ten-year bins; ages are never exposed raw outside the profile itself."""
    low = (age // 10) * 10
    return f"{low}-{low + 9}"


@dataclass(frozen=True)
class UserProfile:
    """Nickname plus anonymized sociodemographics. No PII fields exist here."""

    nickname: str
    age: int
    education: Education
    profession: str
    mother_tongue: str
    reading_habits: ReadingHabits
    language_pref: Language = Language.EN

    def validate(self) -> None:
        if not self.nickname or not self.nickname.strip():
            raise SessionError("nickname must be non-empty")
        if not isinstance(self.age, int) or self.age < 0:
            raise SessionError(f"age must be a non-negative integer, got {self.age!r}")
        if not self.profession or not self.profession.strip():
            raise SessionError("profession must be non-empty")
        if not self.mother_tongue or not self.mother_tongue.strip():
            raise SessionError("mother_tongue must be non-empty")

    def to_dict(self) -> dict:
        return {
            "nickname": self.nickname,
            "age": self.age,
            "education": self.education.value,
            "profession": self.profession,
            "mother_tongue": self.mother_tongue,
            "reading_habits": self.reading_habits.value,
            "language_pref": self.language_pref.value,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "UserProfile":
        extra = set(doc) - {
            "nickname", "age", "education", "profession",
            "mother_tongue", "reading_habits", "language_pref",
        }
        if extra:
            raise SessionError(f"unexpected profile fields: {sorted(extra)}")
        try:
            profile = cls(
                nickname=str(doc["nickname"]),
                age=int(doc["age"]),
                education=Education(doc["education"]),
                profession=str(doc["profession"]).strip().lower(),
                mother_tongue=normalize_lemma(str(doc["mother_tongue"])),
                reading_habits=ReadingHabits(doc["reading_habits"]),
                language_pref=Language(doc.get("language_pref", Language.EN.value)),
            )
        except KeyError as exc:
            raise SessionError(f"missing profile field: {exc}") from exc
        except ValueError as exc:
            raise SessionError(f"invalid profile value: {exc}") from exc
        profile.validate()
        return profile


class MatchState(str, Enum):
    OPEN = "open"
    SUBMITTED = "submitted"
    EXPIRED = "expired"
    SCORED = "scored"


_MODE_ARITY = {
    GameMode.INDIVIDUAL: (1, 1),
    GameMode.CHALLENGE: (2, 2),
    GameMode.TEAM: (2, None),
}


@dataclass
class Match:
    """One timed round. In challenge and team play every participant answers
    the same prompt; each may submit at most once within the shared window."""

    match_id: str
    mode: GameMode
    participants: list[str]
    prompt: str
    language: Language
    started_at: float
    duration: float = 120.0
    state: MatchState = MatchState.OPEN
    results: dict[str, MatchResult] = field(default_factory=dict)
    resolved: dict[str, str] = field(default_factory=dict)  # nickname -> submitted|expired

    def elapsed(self, now: float) -> float:
        return now - self.started_at

    def deadline_passed(self, now: float) -> bool:
        return self.elapsed(now) > self.duration

    def winner(self) -> str | None:
        """Challenge only: higher post-bonus score wins; a tie has no winner."""
        if self.mode is not GameMode.CHALLENGE or len(self.results) < 1:
            return None
        ranked = sorted(self.results.items(), key=lambda kv: -kv[1].score)
        if len(ranked) > 1 and ranked[0][1].score == ranked[1][1].score:
            return None
        return ranked[0][0]

    def team_score(self) -> float | None:
        if self.mode is not GameMode.TEAM or not self.results:
            return None
        return statistics.fmean(result.score for result in self.results.values())

    def to_record(self) -> dict:
        return {
            "match_id": self.match_id,
            "mode": self.mode.value,
            "language": self.language.value,
            "prompt": self.prompt,
            "participants": list(self.participants),
            "started_at": self.started_at,
            "duration": self.duration,
            "state": self.state.value,
            "results": {nick: res.to_dict() for nick, res in self.results.items()},
            "winner": self.winner(),
            "team_score": self.team_score(),
        }

    @classmethod
    def from_record(cls, doc: dict) -> "Match":
        match = cls(
            match_id=doc["match_id"],
            mode=GameMode(doc["mode"]),
            participants=list(doc["participants"]),
            prompt=doc["prompt"],
            language=Language(doc["language"]),
            started_at=float(doc["started_at"]),
            duration=float(doc["duration"]),
            state=MatchState(doc["state"]),
        )
        for nick, res in doc.get("results", {}).items():
            match.results[nick] = MatchResult.from_dict(res)
            match.resolved[nick] = "submitted"
        if match.state in (MatchState.EXPIRED, MatchState.SCORED):
            for nick in match.participants:
                match.resolved.setdefault(nick, "expired")
        return match


@dataclass
class LanguageAssets:
    """Everything the engine needs to run one language.

    The level table may be left out for batch tooling that never draws
    prompts (cleaning, exports); match play requires it.
    """

    kb: KnowledgeBase
    entries: list[LexicalEntry]
    table: LevelTable | None = None
    blocklist: set[str] = field(default_factory=set)


class GameService:
    """Match orchestration over the graph, scoring, and level machinery.

    Concurrency: a service-level lock guards the user/match/progress tables;
    each prompt graph has its own lock so plays on one prompt serialize while
    different prompts proceed in parallel. The injected clock is authoritative
    for the 120 s window.
    """

    def __init__(
        self,
        assets: dict[Language, LanguageAssets],
        config: EngineConfig | None = None,
        store=None,
        clock: Callable[[], float] = time.time,
    ):
        self.assets = assets
        self.config = config or EngineConfig()
        self.store = store
        self.clock = clock
        self.users: dict[str, UserProfile] = {}
        self.matches: dict[str, Match] = {}
        self.graphs: dict[tuple[Language, str], PlayGraph] = {}
        self.progress: dict[tuple[str, Language], PlayerProgress] = {}
        self._rng = random.Random(self.config.seed)
        self._lock = threading.RLock()
        self._graph_locks: dict[tuple[Language, str], threading.Lock] = {}
        if store is not None:
            self._restore()

    # ------------------------------------------------------------------ users

    def register_user(self, profile: UserProfile) -> str:
        profile.validate()
        with self._lock:
            if profile.nickname in self.users:
                raise DuplicateNicknameError(f"nickname {profile.nickname!r} already taken")
            self.users[profile.nickname] = profile
        self._persist("users", profile.to_dict())
        return profile.nickname

    def get_user(self, nickname: str) -> UserProfile:
        try:
            return self.users[nickname]
        except KeyError:
            raise UnknownUserError(f"unknown user {nickname!r}") from None

    # ---------------------------------------------------------------- matches

    def _assets_for(self, language: Language) -> LanguageAssets:
        try:
            return self.assets[language]
        except KeyError:
            raise SessionError(f"language {language.value} is not loaded") from None

    def _progress_for(self, nickname: str, language: Language) -> PlayerProgress:
        key = (nickname, language)
        if key not in self.progress:
            self.progress[key] = PlayerProgress(user=nickname, language=language)
        return self.progress[key]

    def start_match(
        self,
        participants: Sequence[str],
        mode: GameMode,
        language: Language,
    ) -> Match:
        participants = list(participants)
        low, high = _MODE_ARITY[mode]
        if len(participants) < low or (high is not None and len(participants) > high):
            raise SessionError(
                f"{mode.value} mode needs "
                + (f"exactly {low}" if low == high else f"at least {low}")
                + f" participants, got {len(participants)}"
            )
        if len(set(participants)) != len(participants):
            raise SessionError("duplicate participants")
        with self._lock:
            for nickname in participants:
                if nickname not in self.users:
                    raise UnknownUserError(f"unknown user {nickname!r}")
            assets = self._assets_for(language)
            if assets.table is None:
                raise SessionError(
                    f"language {language.value} has no level table: match play disabled"
                )
            self._sweep_expired()
            initiator = participants[0]
            progress = self._progress_for(initiator, language)
            prompt = draw_prompt(
                assets.table,
                progress,
                rng_seed=self._rng.randrange(2**32),
                words_per_level=self.config.words_per_level,
            )
            if mode is GameMode.INDIVIDUAL:
                progress.words_played_in_level.add(prompt)
            match = Match(
                match_id=uuid.uuid4().hex[:12],
                mode=mode,
                participants=participants,
                prompt=prompt,
                language=language,
                started_at=self.clock(),
                duration=self.config.match_duration,
            )
            self.matches[match.match_id] = match
        self._persist("matches", match.to_record())
        return match

    def get_match(self, match_id: str) -> Match:
        try:
            return self.matches[match_id]
        except KeyError:
            raise UnknownMatchError(f"unknown match {match_id!r}") from None

    # ------------------------------------------------------------------ play

    def _graph_lock(self, key: tuple[Language, str]) -> threading.Lock:
        with self._lock:
            if key not in self._graph_locks:
                self._graph_locks[key] = threading.Lock()
            return self._graph_locks[key]

    def graph_for(self, prompt: str, language: Language) -> PlayGraph:
        """The prompt's play graph, pre-generating from the KB on first touch."""
        key = (language, normalize_lemma(prompt))
        with self._lock:
            graph = self.graphs.get(key)
            if graph is None:
                assets = self._assets_for(language)
                graph = init_graph(key[1], assets.kb, depth_cap=self.config.depth_cap)
                self.graphs[key] = graph
        return graph

    def find_graph(self, prompt: str, language: Language) -> PlayGraph | None:
        return self.graphs.get((language, normalize_lemma(prompt)))

    def _np_for(self, graph: PlayGraph, ladder: Ladder) -> int:
        """Play count feeding the blend weight, taken before this play lands.

        Default: the prompt graph's total plays. Under np_mode=min_arc the
        rarest arc of the submitted ladder counts instead (a prompt-only
        ladder falls back to the graph total).
        """
        if self.config.np_mode == "min_arc":
            counts: list[int] = []
            for side in (Side.HYPER, Side.HYPO):
                for source, target in ladder.side_pairs(side):
                    arc = graph.find_arc(source, target, side)
                    counts.append(arc.play_count if arc is not None else 0)
            if counts:
                return min(counts)
        return graph.total_plays

    def submit_ladder(self, match_id: str, nickname: str, ladder: Ladder) -> MatchResult:
        """Validate, record, and score one submission; server clock decides expiry."""
        with self._lock:
            match = self.get_match(match_id)
            if nickname not in self.users:
                raise UnknownUserError(f"unknown user {nickname!r}")
            if nickname not in match.participants:
                raise NotParticipantError(
                    f"{nickname!r} is not a participant of match {match_id}"
                )
            already = match.resolved.get(nickname)
            if already == "submitted":
                raise AlreadySubmittedError(f"{nickname!r} already submitted to {match_id}")
            if already == "expired":
                raise ExpiredMatchError(f"match {match_id} expired for {nickname!r}")
            now = self.clock()
            elapsed = match.elapsed(now)
            if elapsed > match.duration:
                self._resolve_expiry(match, nickname)
                raise ExpiredMatchError(
                    f"match {match_id} expired {elapsed - match.duration:.1f} s ago"
                )
            assets = self._assets_for(match.language)

        ladder = ladder.normalized()
        if ladder.prompt != match.prompt:
            raise LadderError(
                f"ladder prompt {ladder.prompt!r} does not match match prompt {match.prompt!r}"
            )
        ladder.language = match.language
        ladder.mode = match.mode
        ladder.duration_used = elapsed
        ladder.validate(match.duration)

        key = (match.language, match.prompt)
        graph = self.graph_for(match.prompt, match.language)
        with self._graph_lock(key):
            np = self._np_for(graph, ladder)
            m = graph.max_length
            record_play(graph, ladder, kb=assets.kb, kb_mode=self.config.kb_mode)
            ulv, flags = validated_length(
                ladder,
                graph,
                kb=assets.kb,
                n_threshold=self.config.n_threshold,
                mode=self.config.ulv_mode,
                kb_mode=self.config.kb_mode,
            )
            update_max_length(graph, ulv)
            self._persist_graph(match.language, graph)

        npl = compute_npl(np, self.config.good_plays)
        base = compute_score(npl, ladder.length, ulv, m)
        score = apply_time_bonus(
            base, elapsed, match.duration, self.config.time_bonus_max
        )
        result = MatchResult(
            score=score,
            stars=stars(score),
            ul=ladder.length,
            ulv=ulv,
            npl=npl,
            validated_flags=flags,
        )

        with self._lock:
            match.results[nickname] = result
            match.resolved[nickname] = "submitted"
            self._advance_state(match)
            if match.mode is GameMode.INDIVIDUAL:
                self._record_level_score(nickname, match.language, score)
        self._persist(
            "ladders",
            {
                "ladder_id": f"{match.match_id}/{nickname}",
                "match_id": match.match_id,
                "nickname": nickname,
                "language": match.language.value,
                "mode": match.mode.value,
                "prompt": ladder.prompt,
                "ascent": list(ladder.ascent),
                "descent": list(ladder.descent),
                "duration_used": ladder.duration_used,
                **result.to_dict(),
            },
        )
        self._persist("matches", match.to_record())
        return result

    def _advance_state(self, match: Match) -> None:
        if len(match.resolved) == len(match.participants):
            match.state = (
                MatchState.SCORED if match.results else MatchState.EXPIRED
            )
        elif match.results:
            match.state = MatchState.SUBMITTED

    def _resolve_expiry(self, match: Match, nickname: str) -> None:
        """Mark one participant expired; an expired slot scores 0 toward levels."""
        match.resolved[nickname] = "expired"
        self._advance_state(match)
        if match.mode is GameMode.INDIVIDUAL:
            self._record_level_score(nickname, match.language, 0.0)
        self._persist("matches", match.to_record())

    def _sweep_expired(self) -> None:
        """Resolve every open match whose window has closed (lazy, lock held)."""
        now = self.clock()
        for match in list(self.matches.values()):
            if match.state in (MatchState.OPEN, MatchState.SUBMITTED) and match.deadline_passed(now):
                for nickname in match.participants:
                    if nickname not in match.resolved:
                        self._resolve_expiry(match, nickname)

    def expire_stale_matches(self) -> None:
        with self._lock:
            self._sweep_expired()

    def _record_level_score(self, nickname: str, language: Language, score: float) -> None:
        progress = self._progress_for(nickname, language)
        progress.scores_in_level.append(score)
        if len(progress.scores_in_level) >= self.config.words_per_level:
            _, new_progress = check_advance(
                progress,
                threshold=self.config.advance_threshold,
                n_levels=self.config.n_levels,
                words_per_level=self.config.words_per_level,
            )
            self.progress[(nickname, language)] = new_progress

    # ------------------------------------------------------------ leaderboard

    def leaderboard(
        self,
        facets: dict[str, str] | None = None,
        language: Language | None = None,
        limit: int | None = None,
    ) -> list[dict]:
        """Rank peers: cumulative score desc, fewer games first, then nickname.

        Facet filters select users by age band, education, profession, mother
        tongue, or reading habits; an unmatched facet value yields an empty
        list. Ages surface only as ten-year bands.
        """
        facets = facets or {}
        unknown = set(facets) - set(LEADERBOARD_FACETS)
        if unknown:
            raise SessionError(f"unknown leaderboard facets: {sorted(unknown)}")
        with self._lock:
            self._sweep_expired()
            totals: dict[str, float] = {}
            star_sums: dict[str, list[int]] = {}
            games: dict[str, int] = {}
            for match in self.matches.values():
                if language is not None and match.language is not language:
                    continue
                for nickname, result in match.results.items():
                    totals[nickname] = totals.get(nickname, 0.0) + result.score
                    games[nickname] = games.get(nickname, 0) + 1
                    star_sums.setdefault(nickname, []).append(result.stars)
            rows = []
            for nickname, profile in self.users.items():
                values = {
                    "age_band": age_band(profile.age),
                    "education": profile.education.value,
                    "profession": profile.profession,
                    "mother_tongue": profile.mother_tongue,
                    "reading_habits": profile.reading_habits.value,
                }
                if any(values[key] != wanted for key, wanted in facets.items()):
                    continue
                played = games.get(nickname, 0)
                if self.config.leaderboard_metric == "mean_stars":
                    score = (
                        statistics.fmean(star_sums[nickname]) if played else 0.0
                    )
                else:
                    score = totals.get(nickname, 0.0)
                rows.append(
                    {
                        "nickname": nickname,
                        "score": score,
                        "games": played,
                        **values,
                    }
                )
        rows.sort(key=lambda row: (-row["score"], row["games"], row["nickname"]))
        return rows[:limit] if limit is not None else rows

    # ------------------------------------------------------------ persistence

    def _persist(self, collection: str, record: dict) -> None:
        if self.store is not None:
            self.store.append(collection, record)

    def _persist_graph(self, language: Language, graph: PlayGraph) -> None:
        if self.store is not None:
            self.store.save_graph(language.value, graph.root, serialize_graph(graph))

    def _restore(self) -> None:
        for doc in self.store.records("users"):
            profile = UserProfile.from_dict(doc)
            self.users[profile.nickname] = profile
        for doc in self.store.records("matches"):
            match = Match.from_record(doc)
            self.matches[match.match_id] = match
        for doc in self.store.graphs():
            graph = deserialize_graph(doc)
            self.graphs[(graph.language, graph.root)] = graph
