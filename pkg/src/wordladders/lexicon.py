"""Playable word pool (psycholinguistic norms) and the IS-A taxonomy knowledge base."""

from __future__ import annotations

import logging
import unicodedata
from collections import deque
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

logger = logging.getLogger(__name__)

NORMS_HEADER = ("lemma", "pos", "concreteness", "frequency", "familiarity")

CONCRETENESS_RANGE = (1.0, 5.0)
FAMILIARITY_RANGE = (1.0, 7.0)


class Language(str, Enum):
    EN = "EN"
    IT = "IT"


class PartOfSpeech(str, Enum):
    NOUN = "noun"
    VERB = "verb"
    ADJECTIVE = "adjective"


class NormsFormatError(ValueError):
    """Structurally malformed norms file (bad header, field count, or value)."""


class TaxonomyFormatError(ValueError):
    """Structurally malformed taxonomy file."""


class TaxonomyCycleError(ValueError):
    """The ingested edge set is not acyclic."""


def normalize_lemma(raw: str) -> str:
    """NFC-normalize, lowercase, and collapse internal whitespace."""
    return " ".join(unicodedata.normalize("NFC", raw).lower().split())


@dataclass(frozen=True)
class LexicalEntry:
    """A playable word with its norms. Concreteness 1-5, familiarity 1-7, frequency >= 0."""

    lemma: str
    language: Language
    pos: PartOfSpeech
    concreteness: float
    frequency: float
    familiarity: float
    blocked: bool = False


@dataclass(frozen=True)
class TaxonomyEdge:
    hyponym: str
    hypernym: str
    language: Language


def _entry_in_range(concreteness: float, frequency: float, familiarity: float) -> str | None:
    if not CONCRETENESS_RANGE[0] <= concreteness <= CONCRETENESS_RANGE[1]:
        return f"concreteness {concreteness} outside [1, 5]"
    if frequency < 0:
        return f"frequency {frequency} is negative"
    if not FAMILIARITY_RANGE[0] <= familiarity <= FAMILIARITY_RANGE[1]:
        return f"familiarity {familiarity} outside [1, 7]"
    return None


def load_norms(path: str | Path, language: Language) -> list[LexicalEntry]:
    """Parse a tab-separated norms file into normalized, deduplicated entries.

    The file carries a ``lemma pos concreteness frequency familiarity`` header.
    Malformed rows raise :class:`NormsFormatError` with the line number;
    rows with out-of-range values are dropped with a warning.
    """
    path = Path(path)
    entries: list[LexicalEntry] = []
    seen: set[tuple[str, Language, PartOfSpeech]] = set()
    with path.open(encoding="utf-8") as fh:
        header = fh.readline()
        if tuple(header.rstrip("\n").split("\t")) != NORMS_HEADER:
            raise NormsFormatError(
                f"{path}:1: expected header {' '.join(NORMS_HEADER)!r}, got {header.strip()!r}"
            )
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != len(NORMS_HEADER):
                raise NormsFormatError(
                    f"{path}:{lineno}: expected {len(NORMS_HEADER)} fields, got {len(fields)}"
                )
            lemma = normalize_lemma(fields[0])
            if not lemma:
                raise NormsFormatError(f"{path}:{lineno}: empty lemma")
            try:
                pos = PartOfSpeech(fields[1].strip().lower())
            except ValueError:
                raise NormsFormatError(
                    f"{path}:{lineno}: unknown part of speech {fields[1]!r}"
                ) from None
            try:
                concreteness, frequency, familiarity = (float(v) for v in fields[2:5])
            except ValueError:
                raise NormsFormatError(f"{path}:{lineno}: non-numeric norm value") from None
            problem = _entry_in_range(concreteness, frequency, familiarity)
            if problem is not None:
                logger.warning("%s:%d: row %r rejected: %s", path, lineno, lemma, problem)
                continue
            key = (lemma, language, pos)
            if key in seen:
                logger.warning("%s:%d: duplicate entry %r dropped", path, lineno, key)
                continue
            seen.add(key)
            entries.append(
                LexicalEntry(lemma, language, pos, concreteness, frequency, familiarity)
            )
    logger.info("loaded %d norm entries from %s", len(entries), path)
    return entries


def save_norms(entries: Iterable[LexicalEntry], path: str | Path) -> None:
    """Write entries back to the tab-separated norms format (blocked flag not persisted)."""
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write("\t".join(NORMS_HEADER) + "\n")
        for e in entries:
            fh.write(
                f"{e.lemma}\t{e.pos.value}\t{e.concreteness!r}\t{e.frequency!r}\t{e.familiarity!r}\n"
            )


def load_blocklist(path: str | Path) -> set[str]:
    """One lemma per line, UTF-8; blank lines and '#' comments ignored."""
    blocked: set[str] = set()
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            lemma = normalize_lemma(line.split("#", 1)[0])
            if lemma:
                blocked.add(lemma)
    return blocked


def apply_blocklist(
    entries: Sequence[LexicalEntry], blocklist: set[str]
) -> list[LexicalEntry]:
    """Mark entries whose lemma is blocklisted; everything else passes through."""
    return [
        replace(e, blocked=True) if e.lemma in blocklist else e
        for e in entries
    ]


class KnowledgeBase:
    """Immutable IS-A edge set with adjacency indexes by hyponym and by hypernym.

    Built once at load time (single-threaded); afterwards safe for unrestricted
    concurrent reads.
    """

    def __init__(self, edges: Iterable[TaxonomyEdge], language: Language):
        self.language = language
        self.edges = frozenset(edges)
        hypernyms: dict[str, set[str]] = {}
        hyponyms: dict[str, set[str]] = {}
        for edge in self.edges:
            hypernyms.setdefault(edge.hyponym, set()).add(edge.hypernym)
            hyponyms.setdefault(edge.hypernym, set()).add(edge.hyponym)
        self._hypernyms = {k: frozenset(v) for k, v in hypernyms.items()}
        self._hyponyms = {k: frozenset(v) for k, v in hyponyms.items()}

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, lemma: str) -> bool:
        return lemma in self._hypernyms or lemma in self._hyponyms

    def direct_hypernyms(self, lemma: str) -> frozenset[str]:
        return self._hypernyms.get(lemma, frozenset())

    def direct_hyponyms(self, lemma: str) -> frozenset[str]:
        return self._hyponyms.get(lemma, frozenset())

    def is_generalization(self, specific: str, generic: str, mode: str = "transitive") -> bool:
        """True iff ``generic`` is above ``specific`` in the taxonomy.

        ``mode="direct"`` tests for a single edge; ``mode="transitive"`` for
        reachability along hypernym edges. Unknown lemmas answer False.
        """
        if mode == "direct":
            return generic in self.direct_hypernyms(specific)
        if mode != "transitive":
            raise ValueError(f"unknown mode {mode!r}")
        if specific == generic:
            return False
        seen = {specific}
        queue = deque([specific])
        while queue:
            for parent in self.direct_hypernyms(queue.popleft()):
                if parent == generic:
                    return True
                if parent not in seen:
                    seen.add(parent)
                    queue.append(parent)
        return False


def is_generalization(
    kb: KnowledgeBase, specific: str, generic: str, mode: str = "transitive"
) -> bool:
    return kb.is_generalization(specific, generic, mode)


def _find_cycle(adjacency: dict[str, frozenset[str]]) -> list[str] | None:
    """Return one directed cycle as a node list (first == last), or None."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = {node: WHITE for node in adjacency}
    for start in adjacency:
        if color[start] != WHITE:
            continue
        stack: list[tuple[str, Iterable[str]]] = [(start, iter(adjacency.get(start, ())))]
        color[start] = GREY
        path = [start]
        while stack:
            node, children = stack[-1]
            advanced = False
            for child in children:
                if color.get(child, WHITE) == GREY:
                    return path[path.index(child):] + [child]
                if color.get(child, WHITE) == WHITE:
                    color[child] = GREY
                    path.append(child)
                    stack.append((child, iter(adjacency.get(child, ()))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                path.pop()
                stack.pop()
    return None


def build_kb(pairs: Iterable[tuple[str, str]], language: Language) -> KnowledgeBase:
    """Build a KnowledgeBase from (hyponym, hypernym) pairs, rejecting cycles.

    Self-loops are dropped with a warning; a cycle in the remaining edge set
    raises :class:`TaxonomyCycleError` naming one offending cycle.
    """
    edges: set[TaxonomyEdge] = set()
    for hypo, hyper in pairs:
        hypo, hyper = normalize_lemma(hypo), normalize_lemma(hyper)
        if not hypo or not hyper:
            raise TaxonomyFormatError("empty lemma in taxonomy pair")
        if hypo == hyper:
            logger.warning("self-loop %r -> %r rejected", hypo, hyper)
            continue
        edges.add(TaxonomyEdge(hypo, hyper, language))
    adjacency: dict[str, frozenset[str]] = {}
    grouped: dict[str, set[str]] = {}
    for edge in edges:
        grouped.setdefault(edge.hyponym, set()).add(edge.hypernym)
        grouped.setdefault(edge.hypernym, set())
    adjacency = {k: frozenset(v) for k, v in grouped.items()}
    cycle = _find_cycle(adjacency)
    if cycle is not None:
        raise TaxonomyCycleError("taxonomy contains a cycle: " + " -> ".join(cycle))
    return KnowledgeBase(edges, language)


def load_taxonomy(path: str | Path, language: Language) -> KnowledgeBase:
    """Parse ``hyponym<TAB>hypernym`` rows and build the (acyclic) knowledge base."""
    path = Path(path)
    pairs: list[tuple[str, str]] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 2:
                raise TaxonomyFormatError(
                    f"{path}:{lineno}: expected 2 fields, got {len(fields)}"
                )
            if not normalize_lemma(fields[0]) or not normalize_lemma(fields[1]):
                raise TaxonomyFormatError(f"{path}:{lineno}: empty lemma")
            pairs.append((fields[0], fields[1]))
    kb = build_kb(pairs, language)
    logger.info("loaded %d taxonomy edges from %s", len(kb), path)
    return kb
