"""Ladder evaluation: blending weight, validated length, score, time bonus, stars."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .ladder_graph import (
    Ladder,
    PlayGraph,
    PromptMismatchError,
    ladder_arc_flags,
)
from .lexicon import KnowledgeBase

NPL_FLOOR = 0.2
NPL_CEIL = 0.8


@dataclass
class MatchResult:
    """What the player gets back after a match is evaluated.

    validated_flags covers the ascent rungs in order, then the descent rungs;
    under chain semantics a flag stays False for everything past the first
    invalid rung on its side.
    """

    score: float
    stars: int
    ul: int
    ulv: int
    npl: float
    validated_flags: list[bool]

    def to_dict(self) -> dict:
        return {
            "score": self.score,
            "stars": self.stars,
            "ul": self.ul,
            "ulv": self.ulv,
            "npl": self.npl,
            "validated_flags": list(self.validated_flags),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "MatchResult":
        return cls(
            score=float(doc["score"]),
            stars=int(doc["stars"]),
            ul=int(doc["ul"]),
            ulv=int(doc["ulv"]),
            npl=float(doc["npl"]),
            validated_flags=[bool(f) for f in doc["validated_flags"]],
        )


def compute_npl(np: int, g: int) -> float:
    """Blend weight between validated and raw ladder length, clamped to [0.2, 0.8]."""
    if g <= 0:
        raise ValueError(f"g must be positive, got {g}")
    if np < 0:
        raise ValueError(f"np must be non-negative, got {np}")
    return min(max(np / g, NPL_FLOOR), NPL_CEIL)


def _chain(flags: list[bool]) -> list[bool]:
    # once a rung fails, everything further from the prompt fails with it
    out, ok = [], True
    for flag in flags:
        ok = ok and flag
        out.append(ok)
    return out


def validated_length(
    ladder: Ladder,
    graph: PlayGraph | None = None,
    kb: KnowledgeBase | None = None,
    n_threshold: int = 50,
    mode: str = "chain",
    kb_mode: str = "transitive",
) -> tuple[int, list[bool]]:
    """Validated rung count (ulv) plus per-rung flags (ascent first, then descent).

    ``mode="chain"`` keeps each side's maximal valid prefix: the first invalid
    rung truncates everything beyond it. ``mode="count"`` counts every rung
    whose linking arc is valid, wherever it sits. The prompt always counts.
    """
    if graph is not None and ladder.prompt != graph.root:
        raise PromptMismatchError(
            f"ladder prompt {ladder.prompt!r} does not match graph root {graph.root!r}"
        )
    if mode not in ("chain", "count"):
        raise ValueError(f"unknown ulv mode {mode!r}")
    ascent_flags, descent_flags = ladder_arc_flags(
        ladder, graph, kb, n_threshold=n_threshold, kb_mode=kb_mode
    )
    if mode == "chain":
        ascent_flags = _chain(ascent_flags)
        descent_flags = _chain(descent_flags)
    ulv = 1 + sum(ascent_flags) + sum(descent_flags)
    return ulv, ascent_flags + descent_flags


def compute_score(npl: float, ul: int, ulv: int, m: int) -> float:
    """Blend the validated and raw ladder lengths against the prompt's record m.

    score = 100 * npl * min(ulv, m)/m + 100 * (1 - npl) * min(ul, m)/m,
    bounded in [0, 100].
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if ulv > ul:
        raise ValueError(f"ulv ({ulv}) cannot exceed ul ({ul})")
    return 100.0 * npl * min(ulv, m) / m + 100.0 * (1.0 - npl) * min(ul, m) / m


def apply_time_bonus(
    s: float,
    elapsed: float,
    match_duration: float = 120.0,
    bonus_max: float = 10.0,
) -> float:
    """Add up to bonus_max points linearly in remaining time; never exceed 100."""
    if match_duration <= 0:
        raise ValueError("match_duration must be positive")
    if not 0 <= elapsed <= match_duration:
        raise ValueError(f"elapsed {elapsed} outside [0, {match_duration}]")
    return min(s + bonus_max * (1.0 - elapsed / match_duration), 100.0)


def stars(score: float) -> int:
    """Map a [0, 100] score onto 1-5 stars in uniform 20-point bins."""
    if not 0 <= score <= 100:
        raise ValueError(f"score {score} outside [0, 100]")
    return min(int(score // 20) + 1, 5)


def present_score(score: float) -> int:
    """Round half-up for display; internal scores stay real-valued."""
    return int(Decimal(str(score)).quantize(Decimal("1"), rounding=ROUND_HALF_UP))
