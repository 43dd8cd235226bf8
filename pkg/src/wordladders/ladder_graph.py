"""Per-prompt play graphs: KB pre-generation, play recording, crowd arc validation.

A graph is centered on its prompt word. Hypernym arcs point away from the root
toward more generic words, hyponym arcs away from the root toward more specific
ones; the two sides never share an arc (the root may be an endpoint on either).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from .lexicon import KnowledgeBase, Language, normalize_lemma


class GameMode(str, Enum):
    INDIVIDUAL = "individual"
    CHALLENGE = "challenge"
    TEAM = "team"


class Side(str, Enum):
    HYPER = "hyper"
    HYPO = "hypo"


class LadderError(ValueError):
    """Structurally invalid ladder submission."""


class PromptMismatchError(ValueError):
    """Ladder prompt does not match the graph root."""


class GraphFormatError(ValueError):
    """Serialized graph document violates the graph invariants."""


@dataclass
class Ladder:
    """One submission: the prompt plus rungs above (toward generic) and below.

    ``ascent`` is ordered nearest-above-prompt first, most generic last;
    ``descent`` nearest-below first, most specific last.
    """

    prompt: str
    ascent: list[str] = field(default_factory=list)
    descent: list[str] = field(default_factory=list)
    language: Language = Language.EN
    mode: GameMode = GameMode.INDIVIDUAL
    duration_used: float = 0.0

    @property
    def length(self) -> int:
        """Total rung count including the prompt (the symbol ul)."""
        return 1 + len(self.ascent) + len(self.descent)

    def ordered_rungs(self) -> list[str]:
        """Full ladder from most generic to most specific."""
        return list(reversed(self.ascent)) + [self.prompt] + list(self.descent)

    def normalized(self) -> "Ladder":
        return Ladder(
            prompt=normalize_lemma(self.prompt),
            ascent=[normalize_lemma(r) for r in self.ascent],
            descent=[normalize_lemma(r) for r in self.descent],
            language=self.language,
            mode=self.mode,
            duration_used=self.duration_used,
        )

    def side_pairs(self, side: Side) -> Iterator[tuple[str, str]]:
        """Consecutive (nearer-to-prompt, rung) pairs along one side."""
        prev = self.prompt
        rungs = self.ascent if side is Side.HYPER else self.descent
        for rung in rungs:
            yield prev, rung
            prev = rung

    def validate(self, match_duration: float | None = 120.0) -> None:
        """Raise LadderError on empty rungs, duplicates, or an out-of-range duration.

        Pass ``match_duration=None`` to skip the duration check.
        """
        lemmas = [self.prompt, *self.ascent, *self.descent]
        for lemma in lemmas:
            if not lemma:
                raise LadderError("empty rung in ladder")
        seen: set[str] = set()
        for lemma in lemmas:
            if lemma in seen:
                raise LadderError(f"duplicate rung {lemma!r} in ladder")
            seen.add(lemma)
        if match_duration is not None and not 0 <= self.duration_used <= match_duration:
            raise LadderError(
                f"duration_used {self.duration_used} outside [0, {match_duration}]"
            )


@dataclass
class Arc:
    source: str
    target: str
    side: Side
    play_count: int = 0
    in_kb: bool = False


def arc_is_valid(arc: Arc, n_threshold: int) -> bool:
    """An arc counts once it is in the KB or crowd-produced n_threshold times."""
    return arc.in_kb or arc.play_count >= n_threshold


@dataclass
class PlayGraph:
    """Center word plus its hypernym-side and hyponym-side arc sets.

    total_plays counts record_play applications (the symbol np); max_length is
    the greatest validated ladder length seen for this prompt (the symbol m),
    never below the longest KB chain present at initialization.
    """

    root: str
    language: Language = Language.EN
    hyper_nodes: set[str] = field(default_factory=set)
    hypo_nodes: set[str] = field(default_factory=set)
    hyper_arcs: dict[tuple[str, str], Arc] = field(default_factory=dict)
    hypo_arcs: dict[tuple[str, str], Arc] = field(default_factory=dict)
    total_plays: int = 0
    max_length: int = 1

    def arcs(self, side: Side) -> dict[tuple[str, str], Arc]:
        return self.hyper_arcs if side is Side.HYPER else self.hypo_arcs

    def nodes(self, side: Side) -> set[str]:
        return self.hyper_nodes if side is Side.HYPER else self.hypo_nodes

    def find_arc(self, source: str, target: str, side: Side) -> Arc | None:
        return self.arcs(side).get((source, target))


def _longest_path(root: str, adjacency: dict[str, list[str]]) -> int:
    """Longest arc count from root in a DAG (memoized DFS, cycle-guarded)."""
    memo: dict[str, int] = {}
    on_stack: set[str] = set()

    def depth(node: str) -> int:
        if node in memo:
            return memo[node]
        if node in on_stack:
            raise ValueError(f"cycle through {node!r} in play graph")
        on_stack.add(node)
        best = 0
        for child in adjacency.get(node, ()):
            best = max(best, 1 + depth(child))
        on_stack.discard(node)
        memo[node] = best
        return best

    return depth(root)


def _grow_side(
    graph: PlayGraph, kb: KnowledgeBase, depth_cap: int, side: Side
) -> None:
    arcs = graph.arcs(side)
    nodes = graph.hyper_nodes if side is Side.HYPER else graph.hypo_nodes
    expand = kb.direct_hypernyms if side is Side.HYPER else kb.direct_hyponyms
    frontier = {graph.root}
    seen = {graph.root}
    for _ in range(depth_cap):
        nxt: set[str] = set()
        for word in frontier:
            for neighbour in expand(word):
                arcs.setdefault(
                    (word, neighbour), Arc(word, neighbour, side, play_count=0, in_kb=True)
                )
                if neighbour != graph.root:
                    nodes.add(neighbour)
                if neighbour not in seen:
                    seen.add(neighbour)
                    nxt.add(neighbour)
        if not nxt:
            break
        frontier = nxt


def init_graph(prompt: str, kb: KnowledgeBase, depth_cap: int = 10) -> PlayGraph:
    """Pre-generate the play graph for a prompt from the knowledge base.

    All KB hypernym chains above and hyponym chains below the prompt are
    materialized up to depth_cap, flagged in_kb with zero plays. A prompt
    absent from the KB yields a root-only graph with max_length 1.
    """
    root = normalize_lemma(prompt)
    if not root:
        raise LadderError("empty prompt")
    graph = PlayGraph(root=root, language=kb.language)
    _grow_side(graph, kb, depth_cap, Side.HYPER)
    _grow_side(graph, kb, depth_cap, Side.HYPO)
    up: dict[str, list[str]] = {}
    for src, dst in graph.hyper_arcs:
        up.setdefault(src, []).append(dst)
    down: dict[str, list[str]] = {}
    for src, dst in graph.hypo_arcs:
        down.setdefault(src, []).append(dst)
    graph.max_length = 1 + _longest_path(root, up) + _longest_path(root, down)
    return graph


def _pair_in_kb(kb: KnowledgeBase, source: str, target: str, side: Side, mode: str) -> bool:
    if side is Side.HYPER:
        return kb.is_generalization(source, target, mode)
    return kb.is_generalization(target, source, mode)


def record_play(
    graph: PlayGraph,
    ladder: Ladder,
    kb: KnowledgeBase | None = None,
    kb_mode: str = "transitive",
) -> PlayGraph:
    """Fold one submitted ladder into the prompt's graph.

    Every consecutive pair on each side increments its arc (creating it on
    first sight; a created arc is checked against the KB under kb_mode to set
    in_kb). total_plays grows by exactly one; play counts never decrease.
    """
    if ladder.prompt != graph.root:
        raise PromptMismatchError(
            f"ladder prompt {ladder.prompt!r} does not match graph root {graph.root!r}"
        )
    ladder.validate(match_duration=None)
    for side in (Side.HYPER, Side.HYPO):
        arcs = graph.arcs(side)
        nodes = graph.hyper_nodes if side is Side.HYPER else graph.hypo_nodes
        for source, target in ladder.side_pairs(side):
            arc = arcs.get((source, target))
            if arc is None:
                in_kb = bool(kb) and _pair_in_kb(kb, source, target, side, kb_mode)
                arc = Arc(source, target, side, play_count=0, in_kb=in_kb)
                arcs[(source, target)] = arc
            arc.play_count += 1
            for endpoint in (source, target):
                if endpoint != graph.root:
                    nodes.add(endpoint)
    graph.total_plays += 1
    return graph


def update_max_length(graph: PlayGraph, validated_length: int) -> None:
    """Raise the stored maximum when a newly validated ladder exceeds it."""
    if validated_length > graph.max_length:
        graph.max_length = validated_length


def ladder_arc_flags(
    ladder: Ladder,
    graph: PlayGraph | None = None,
    kb: KnowledgeBase | None = None,
    n_threshold: int = 50,
    kb_mode: str = "transitive",
) -> tuple[list[bool], list[bool]]:
    """Raw validity of each rung-linking arc (ascent flags, descent flags).

    An arc is valid when the recorded arc passes arc_is_valid or, failing
    that, when the KB certifies the pair under kb_mode. No chain truncation
    is applied here.
    """
    result: list[list[bool]] = []
    for side in (Side.HYPER, Side.HYPO):
        flags: list[bool] = []
        for source, target in ladder.side_pairs(side):
            arc = graph.find_arc(source, target, side) if graph is not None else None
            valid = arc is not None and arc_is_valid(arc, n_threshold)
            if not valid and kb is not None:
                valid = _pair_in_kb(kb, source, target, side, kb_mode)
            flags.append(valid)
        result.append(flags)
    return result[0], result[1]


def _arc_doc(arc: Arc) -> dict:
    return {
        "from": arc.source,
        "to": arc.target,
        "play_count": arc.play_count,
        "in_kb": arc.in_kb,
    }


def serialize_graph(graph: PlayGraph) -> dict:
    """Compress to the node-list + two-arc-lists document (deterministic order)."""
    return {
        "root": graph.root,
        "language": graph.language.value,
        "nodes": [
            {"lemma": lemma, "side": Side.HYPER.value}
            for lemma in sorted(graph.hyper_nodes)
        ]
        + [
            {"lemma": lemma, "side": Side.HYPO.value}
            for lemma in sorted(graph.hypo_nodes)
        ],
        "hyper_arcs": [_arc_doc(graph.hyper_arcs[key]) for key in sorted(graph.hyper_arcs)],
        "hypo_arcs": [_arc_doc(graph.hypo_arcs[key]) for key in sorted(graph.hypo_arcs)],
        "total_plays": graph.total_plays,
        "max_length": graph.max_length,
    }


def deserialize_graph(doc: dict) -> PlayGraph:
    """Rebuild a PlayGraph, rejecting any document that breaks the invariants."""
    try:
        root = doc["root"]
        language = Language(doc["language"])
        node_docs = doc["nodes"]
        arc_docs = {Side.HYPER: doc["hyper_arcs"], Side.HYPO: doc["hypo_arcs"]}
        total_plays = doc["total_plays"]
        max_length = doc["max_length"]
    except (KeyError, ValueError, TypeError) as exc:
        raise GraphFormatError(f"missing or malformed field: {exc}") from exc
    if not isinstance(root, str) or not root:
        raise GraphFormatError("root must be a non-empty lemma")
    if not isinstance(total_plays, int) or total_plays < 0:
        raise GraphFormatError("total_plays must be a non-negative integer")
    if not isinstance(max_length, int) or max_length < 1:
        raise GraphFormatError("max_length must be a positive integer")

    sides: dict[Side, set[str]] = {Side.HYPER: set(), Side.HYPO: set()}
    for node in node_docs:
        try:
            lemma, side = node["lemma"], Side(node["side"])
        except (KeyError, ValueError, TypeError) as exc:
            raise GraphFormatError(f"malformed node {node!r}") from exc
        if lemma == root:
            raise GraphFormatError("root may not appear in the node list")
        if lemma in sides[side]:
            raise GraphFormatError(f"duplicate node {lemma!r} on side {side.value}")
        sides[side].add(lemma)

    graph = PlayGraph(
        root=root,
        language=language,
        hyper_nodes=sides[Side.HYPER],
        hypo_nodes=sides[Side.HYPO],
        total_plays=total_plays,
        max_length=max_length,
    )
    for side, docs in arc_docs.items():
        allowed = sides[side] | {root}
        arcs = graph.arcs(side)
        for entry in docs:
            try:
                arc = Arc(
                    source=entry["from"],
                    target=entry["to"],
                    side=side,
                    play_count=entry["play_count"],
                    in_kb=bool(entry["in_kb"]),
                )
            except (KeyError, TypeError) as exc:
                raise GraphFormatError(f"malformed arc {entry!r}") from exc
            if not isinstance(arc.play_count, int) or arc.play_count < 0:
                raise GraphFormatError(f"negative or non-integer play_count in {entry!r}")
            for endpoint in (arc.source, arc.target):
                if endpoint not in allowed:
                    raise GraphFormatError(
                        f"arc {arc.source!r} -> {arc.target!r} touches {endpoint!r}, "
                        f"which is not on the {side.value} side"
                    )
            if (arc.source, arc.target) in arcs:
                raise GraphFormatError(
                    f"duplicate arc {arc.source!r} -> {arc.target!r} on side {side.value}"
                )
            arcs[(arc.source, arc.target)] = arc
    return graph


def graph_to_json(graph: PlayGraph) -> str:
    return json.dumps(serialize_graph(graph), ensure_ascii=False, sort_keys=True)


def graph_from_json(payload: str) -> PlayGraph:
    try:
        doc = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from exc
    return deserialize_graph(doc)
