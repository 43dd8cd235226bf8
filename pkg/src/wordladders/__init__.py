"""Gamified hypernym/hyponym ladder collection: engine, scoring, service, exports."""

from .config import EngineConfig, load_config
from .ladder_graph import (
    Arc,
    GameMode,
    Ladder,
    PlayGraph,
    arc_is_valid,
    deserialize_graph,
    init_graph,
    record_play,
    serialize_graph,
)
from .lexicon import (
    KnowledgeBase,
    Language,
    LexicalEntry,
    PartOfSpeech,
    apply_blocklist,
    load_blocklist,
    load_norms,
    load_taxonomy,
)
from .scoring import (
    MatchResult,
    apply_time_bonus,
    compute_npl,
    compute_score,
    stars,
    validated_length,
)
from .sessions import GameService, LanguageAssets, UserProfile

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "EngineConfig",
    "GameMode",
    "GameService",
    "KnowledgeBase",
    "Ladder",
    "Language",
    "LanguageAssets",
    "LexicalEntry",
    "MatchResult",
    "PartOfSpeech",
    "PlayGraph",
    "UserProfile",
    "apply_blocklist",
    "apply_time_bonus",
    "arc_is_valid",
    "compute_npl",
    "compute_score",
    "deserialize_graph",
    "init_graph",
    "load_blocklist",
    "load_config",
    "load_norms",
    "load_taxonomy",
    "record_play",
    "serialize_graph",
    "stars",
    "validated_length",
]
