"""Difficulty levels: nested-ranking partition of the pool and player progression."""

from __future__ import annotations

import random
import statistics
from dataclasses import dataclass, field

from .lexicon import Language, LexicalEntry, PartOfSpeech

# nouns are played before verbs, before adjectives
POS_RANK = {PartOfSpeech.NOUN: 0, PartOfSpeech.VERB: 1, PartOfSpeech.ADJECTIVE: 2}


class LevelError(ValueError):
    pass


class AdvancementDueError(LevelError):
    """Every available word in the player's level has been exposed."""


def difficulty_key(entry: LexicalEntry) -> tuple:
    """Nested ranking: POS, then concreteness, frequency, familiarity (easy first).

    More concrete, more frequent, and more familiar words are easier, so those
    norms sort descending; the lemma breaks residual ties deterministically.
    """
    return (
        POS_RANK[entry.pos],
        -entry.concreteness,
        -entry.frequency,
        -entry.familiarity,
        entry.lemma,
    )


@dataclass
class LevelTable:
    """Per-language partition of the unblocked pool into ordered difficulty levels."""

    levels: dict[Language, list[list[str]]]
    assignment: dict[tuple[str, Language], int]

    def n_levels(self, language: Language) -> int:
        return len(self.levels.get(language, []))

    def level_words(self, language: Language, level: int) -> list[str]:
        table = self.levels.get(language)
        if table is None or not 1 <= level <= len(table):
            raise LevelError(f"no level {level} for language {language.value}")
        return table[level - 1]


@dataclass
class PlayerProgress:
    user: str
    language: Language
    level: int = 1
    words_played_in_level: set[str] = field(default_factory=set)
    scores_in_level: list[float] = field(default_factory=list)


def build_levels(entries: list[LexicalEntry], n_levels: int = 50) -> LevelTable:
    """Sort the unblocked pool by difficulty and chunk it into n_levels groups.

    Earlier groups are easier; group sizes differ by at most one, with the
    earlier groups taking any remainder. A lemma listed under several parts of
    speech is placed once, at its easiest occurrence.
    """
    if n_levels < 1:
        raise LevelError("n_levels must be >= 1")
    by_language: dict[Language, list[LexicalEntry]] = {}
    for entry in entries:
        if not entry.blocked:
            by_language.setdefault(entry.language, []).append(entry)

    levels: dict[Language, list[list[str]]] = {}
    assignment: dict[tuple[str, Language], int] = {}
    for language, pool in by_language.items():
        ordered: list[str] = []
        placed: set[str] = set()
        for entry in sorted(pool, key=difficulty_key):
            if entry.lemma not in placed:
                placed.add(entry.lemma)
                ordered.append(entry.lemma)
        if len(ordered) < n_levels:
            raise LevelError(
                f"{language.value}: {len(ordered)} unblocked words cannot fill "
                f"{n_levels} levels"
            )
        base, remainder = divmod(len(ordered), n_levels)
        chunks: list[list[str]] = []
        cursor = 0
        for index in range(n_levels):
            size = base + (1 if index < remainder else 0)
            chunks.append(ordered[cursor:cursor + size])
            cursor += size
        levels[language] = chunks
        for index, chunk in enumerate(chunks, start=1):
            for lemma in chunk:
                assignment[(lemma, language)] = index
    return LevelTable(levels=levels, assignment=assignment)


def draw_prompt(
    table: LevelTable,
    progress: PlayerProgress,
    rng_seed: int,
    words_per_level: int = 10,
) -> str:
    """Uniformly draw an unseen word from the player's current level.

    Deterministic for a fixed seed. Raises AdvancementDueError once the
    player has been exposed to words_per_level words (or the level has no
    unseen words left) without an advancement check.
    """
    if len(progress.words_played_in_level) >= words_per_level:
        raise AdvancementDueError(
            f"{progress.user} played {len(progress.words_played_in_level)} words "
            f"at level {progress.level}: advancement check due"
        )
    pool = table.level_words(progress.language, progress.level)
    candidates = sorted(set(pool) - progress.words_played_in_level)
    if not candidates:
        raise AdvancementDueError(
            f"level {progress.level} exhausted for {progress.user}: advancement check due"
        )
    return random.Random(rng_seed).choice(candidates)


def check_advance(
    progress: PlayerProgress,
    threshold: float = 50.0,
    n_levels: int = 50,
    words_per_level: int = 10,
) -> tuple[bool, PlayerProgress]:
    """Advance when the mean level score reaches the accuracy threshold.

    The per-level state is cleared either way; failing the threshold keeps the
    player on the same level with a fresh random draw. Level n_levels is the
    cap: the check reports advanced=False there even above threshold.
    """
    if len(progress.scores_in_level) < words_per_level:
        raise LevelError(
            f"advancement check needs {words_per_level} scores, "
            f"got {len(progress.scores_in_level)}"
        )
    mean_score = statistics.fmean(progress.scores_in_level)
    advanced = mean_score >= threshold and progress.level < n_levels
    new_progress = PlayerProgress(
        user=progress.user,
        language=progress.language,
        level=progress.level + 1 if advanced else progress.level,
    )
    return advanced, new_progress


def export_levels(table: LevelTable, language: Language) -> str:
    """Audit dump: one ``lemma<TAB>level`` row per word, by level then lemma."""
    rows = ["lemma\tlevel"]
    for level, chunk in enumerate(table.levels.get(language, []), start=1):
        for lemma in sorted(chunk):
            rows.append(f"{lemma}\t{level}")
    return "\n".join(rows) + "\n"
