"""Word specificity: position-in-ladder scores and their aggregation into a dataset."""

from __future__ import annotations

import csv
import io
import json
import logging
import statistics
from dataclasses import dataclass
from typing import Iterable

from .ladder_graph import Ladder
from .lexicon import Language

logger = logging.getLogger(__name__)

EXPORT_COLUMNS = ("lemma", "language", "mean", "sd", "n", "target_reached")


@dataclass(frozen=True)
class SpecificityRecord:
    lemma: str
    language: Language
    mean_specificity: float
    sd: float
    n_observations: int
    target_reached: bool


def ladder_specificity(ladder: Ladder) -> dict[str, float]:
    """Score every rung as its 1-based position from the generic end over the length.

    The full ordering is most generic first (reversed ascent, prompt, descent),
    so the most specific word of any ladder scores exactly 1 and scores grow
    strictly along the ladder.
    """
    rungs = ladder.ordered_rungs()
    length = len(rungs)
    return {lemma: position / length for position, lemma in enumerate(rungs, start=1)}


def aggregate(
    observations: Iterable[tuple[str, float]],
    language: Language,
    target: int = 100,
) -> list[SpecificityRecord]:
    """Fold (lemma, score) observations into per-lemma statistics.

    Scores outside (0, 1] are rejected with a warning. Scores are sorted
    before the mean/sd pass, so the result is exactly permutation-invariant.
    sd is the sample standard deviation, 0 for a single observation.
    """
    per_lemma: dict[str, list[float]] = {}
    for lemma, score in observations:
        if not 0.0 < score <= 1.0:
            logger.warning("specificity %r for %r outside (0, 1]: rejected", score, lemma)
            continue
        per_lemma.setdefault(lemma, []).append(score)
    records = []
    for lemma in sorted(per_lemma):
        scores = sorted(per_lemma[lemma])
        records.append(
            SpecificityRecord(
                lemma=lemma,
                language=language,
                mean_specificity=statistics.fmean(scores),
                sd=statistics.stdev(scores) if len(scores) > 1 else 0.0,
                n_observations=len(scores),
                target_reached=len(scores) >= target,
            )
        )
    return records


def _record_row(record: SpecificityRecord) -> dict:
    return {
        "lemma": record.lemma,
        "language": record.language.value,
        "mean": record.mean_specificity,
        "sd": record.sd,
        "n": record.n_observations,
        "target_reached": record.target_reached,
    }


def export_specificity(records: list[SpecificityRecord], format: str = "csv") -> str:
    """Serialize the dataset with a fixed column order, sorted by lemma."""
    ordered = sorted(records, key=lambda r: r.lemma)
    if format == "json":
        return json.dumps([_record_row(r) for r in ordered], ensure_ascii=False)
    if format != "csv":
        raise ValueError(f"unknown export format {format!r}")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(EXPORT_COLUMNS)
    for record in ordered:
        row = _record_row(record)
        writer.writerow(
            [
                row["lemma"],
                row["language"],
                repr(row["mean"]),
                repr(row["sd"]),
                row["n"],
                "true" if row["target_reached"] else "false",
            ]
        )
    return buffer.getvalue()


def parse_specificity(document: str, format: str = "csv") -> list[SpecificityRecord]:
    """Inverse of export_specificity (used for round-trip checks and re-ingestion)."""
    if format == "json":
        rows = json.loads(document)
    elif format == "csv":
        reader = csv.DictReader(io.StringIO(document))
        rows = list(reader)
    else:
        raise ValueError(f"unknown export format {format!r}")
    records = []
    for row in rows:
        target = row["target_reached"]
        if isinstance(target, str):
            target = target.lower() == "true"
        records.append(
            SpecificityRecord(
                lemma=row["lemma"],
                language=Language(row["language"]),
                mean_specificity=float(row["mean"]),
                sd=float(row["sd"]),
                n_observations=int(row["n"]),
                target_reached=bool(target),
            )
        )
    return records
