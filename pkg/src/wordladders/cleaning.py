"""Post-processing of submitted ladders: typo repair, non-word removal, bad-ladder flags."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Sequence

from .ladder_graph import Ladder, PlayGraph, ladder_arc_flags
from .lexicon import KnowledgeBase, LexicalEntry


class RemovalReason(str, Enum):
    NONWORD = "nonword"
    BLOCKED = "blocked"


@dataclass
class CleaningReport:
    """What the pipeline did to one ladder and whether it looks taxonomic at all.

    kb_valid_fraction is the share of rung-linking arcs that pass validity
    (KB or crowd); a prompt-only ladder has no arcs and counts as 1.0.
    """

    ladder_id: str
    corrections: list[tuple[str, str]] = field(default_factory=list)
    removed: list[tuple[str, RemovalReason]] = field(default_factory=list)
    bad_ladder: bool = False
    kb_valid_fraction: float = 1.0

    def to_dict(self) -> dict:
        return {
            "ladder_id": self.ladder_id,
            "corrections": [list(pair) for pair in self.corrections],
            "removed": [[lemma, reason.value] for lemma, reason in self.removed],
            "bad_ladder": self.bad_ladder,
            "kb_valid_fraction": self.kb_valid_fraction,
        }


def levenshtein(a: str, b: str, cap: int | None = None) -> int:
    """Edit distance (insert/delete/substitute); stops early past ``cap``."""
    if a == b:
        return 0
    if len(a) > len(b):
        a, b = b, a
    if cap is not None and len(b) - len(a) > cap:
        return cap + 1
    previous = list(range(len(a) + 1))
    for i, char_b in enumerate(b, start=1):
        current = [i]
        for j, char_a in enumerate(a, start=1):
            cost = 0 if char_a == char_b else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        if cap is not None and min(current) > cap:
            return cap + 1
        previous = current
    return previous[-1]


def _lemma_set(lexicon: Sequence[LexicalEntry]) -> set[str]:
    return {entry.lemma for entry in lexicon}


def correct_typos(
    ladder: Ladder, lexicon: Sequence[LexicalEntry]
) -> tuple[Ladder, list[tuple[str, str]]]:
    """Replace out-of-lexicon rungs that sit at edit distance 1 of a unique lemma.

    Rungs already in the lexicon are never touched; with two or more candidate
    lemmas the rung is left as typed. A correction that would duplicate a
    lemma already on the ladder is skipped (the duplicate would be invalid).
    """
    lemmas = _lemma_set(lexicon)
    present = {ladder.prompt, *ladder.ascent, *ladder.descent}
    corrections: list[tuple[str, str]] = []

    def fix(rung: str) -> str:
        if rung in lemmas:
            return rung
        candidates = [lemma for lemma in lemmas if levenshtein(rung, lemma, cap=1) == 1]
        if len(candidates) != 1 or candidates[0] in present:
            return rung
        corrected = candidates[0]
        present.add(corrected)
        corrections.append((rung, corrected))
        return corrected

    cleaned = replace(
        ladder,
        ascent=[fix(r) for r in ladder.ascent],
        descent=[fix(r) for r in ladder.descent],
    )
    return cleaned, corrections


def strip_invalid(
    ladder: Ladder,
    lexicon: Sequence[LexicalEntry],
    blocklist: set[str],
) -> tuple[Ladder, list[tuple[str, RemovalReason]]]:
    """Truncate each side at its first non-word or blocklisted rung.

    Chain semantics: rungs past the offender are disconnected from the prompt
    and silently dropped; only the offender itself is reported.
    """
    lemmas = _lemma_set(lexicon)
    removed: list[tuple[str, RemovalReason]] = []

    def kept_prefix(rungs: list[str]) -> list[str]:
        kept: list[str] = []
        for rung in rungs:
            if rung in blocklist:
                removed.append((rung, RemovalReason.BLOCKED))
                break
            if rung not in lemmas:
                removed.append((rung, RemovalReason.NONWORD))
                break
            kept.append(rung)
        return kept

    cleaned = replace(
        ladder,
        ascent=kept_prefix(ladder.ascent),
        descent=kept_prefix(ladder.descent),
    )
    return cleaned, removed


def flag_bad_ladder(
    ladder: Ladder,
    kb: KnowledgeBase | None,
    graph: PlayGraph | None = None,
    tau: float = 0.5,
    n_threshold: int = 50,
    kb_mode: str = "transitive",
) -> tuple[bool, float]:
    """Flag ladders whose valid-arc fraction falls below tau.

    Each consecutive arc counts independently (no chain truncation): the
    fraction measures how much of the ladder expresses the IS-A relation,
    with crowd-validated arcs counting alongside KB ones.
    """
    ascent_flags, descent_flags = ladder_arc_flags(
        ladder, graph, kb, n_threshold=n_threshold, kb_mode=kb_mode
    )
    flags = ascent_flags + descent_flags
    fraction = (sum(flags) / len(flags)) if flags else 1.0
    return fraction < tau, fraction


def clean_ladder(
    ladder: Ladder,
    lexicon: Sequence[LexicalEntry],
    blocklist: set[str],
    kb: KnowledgeBase | None = None,
    graph: PlayGraph | None = None,
    ladder_id: str = "",
    tau: float = 0.5,
    n_threshold: int = 50,
    kb_mode: str = "transitive",
) -> tuple[Ladder, CleaningReport]:
    """Full pipeline: normalize, repair typos, strip invalid rungs, flag bad ladders.

    Idempotent: feeding the cleaned ladder back through changes nothing.
    """
    cleaned = ladder.normalized()
    cleaned, corrections = correct_typos(cleaned, lexicon)
    cleaned, removed = strip_invalid(cleaned, lexicon, blocklist)
    bad, fraction = flag_bad_ladder(
        cleaned, kb, graph, tau=tau, n_threshold=n_threshold, kb_mode=kb_mode
    )
    report = CleaningReport(
        ladder_id=ladder_id,
        corrections=corrections,
        removed=removed,
        bad_ladder=bad,
        kb_valid_fraction=fraction,
    )
    return cleaned, report


def clean_batch(
    records: Iterable[dict],
    lexicon: Sequence[LexicalEntry],
    blocklist: set[str],
    kb: KnowledgeBase | None = None,
    graph_lookup=None,
    tau: float = 0.5,
    n_threshold: int = 50,
    kb_mode: str = "transitive",
) -> Iterable[tuple[Ladder, CleaningReport]]:
    """Clean a ladder-dump stream (one exported ladder record per item).

    graph_lookup, when given, maps a prompt lemma to its PlayGraph so crowd
    counts participate in the bad-ladder fraction.
    """
    from .ladder_graph import GameMode
    from .lexicon import Language

    for record in records:
        ladder = Ladder(
            prompt=record["prompt"],
            ascent=list(record.get("ascent", [])),
            descent=list(record.get("descent", [])),
            language=Language(record.get("language", Language.EN.value)),
            mode=GameMode(record.get("mode", GameMode.INDIVIDUAL.value)),
            duration_used=float(record.get("duration_used", 0.0)),
        )
        graph = graph_lookup(ladder.prompt) if graph_lookup is not None else None
        yield clean_ladder(
            ladder,
            lexicon,
            blocklist,
            kb=kb,
            graph=graph,
            ladder_id=str(record.get("ladder_id", "")),
            tau=tau,
            n_threshold=n_threshold,
            kb_mode=kb_mode,
        )
