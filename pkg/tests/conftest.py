import pytest

from wordladders.config import EngineConfig
from wordladders.ladder_graph import Ladder
from wordladders.levels import build_levels
from wordladders.lexicon import (
    Language,
    LexicalEntry,
    PartOfSpeech,
    build_kb,
)
from wordladders.sessions import GameService, LanguageAssets
from wordladders.storage import MemoryStore

# The fox fixture: the canonical good English ladder is
#   living being / animal / mammal / canine / FOX / grey fox
# UP_EDGES covers only the chain above the prompt; FULL_EDGES adds grey fox.
FOX_UP_EDGES = [
    ("fox", "canine"),
    ("canine", "mammal"),
    ("mammal", "animal"),
    ("animal", "living being"),
]
FOX_FULL_EDGES = FOX_UP_EDGES + [("grey fox", "fox")]

# A free-association ladder on the same prompt that is not taxonomic.
BAD_FOX_ASCENT = [
    "animal", "monkey", "apes", "species", "race",
    "earth", "planet", "solar system", "world",
]

FOX_WORDS = ["fox", "canine", "mammal", "animal", "living being", "grey fox"]


def make_entry(
    lemma,
    pos=PartOfSpeech.NOUN,
    concreteness=3.0,
    frequency=3.0,
    familiarity=4.0,
    language=Language.EN,
    blocked=False,
):
    return LexicalEntry(lemma, language, pos, concreteness, frequency, familiarity, blocked)


@pytest.fixture
def fox_kb():
    return build_kb(FOX_FULL_EDGES, Language.EN)


@pytest.fixture
def fox_up_kb():
    return build_kb(FOX_UP_EDGES, Language.EN)


@pytest.fixture
def good_fox_ladder():
    return Ladder(
        prompt="fox",
        ascent=["canine", "mammal", "animal", "living being"],
        descent=["grey fox"],
    )


@pytest.fixture
def bad_fox_ladder():
    return Ladder(prompt="fox", ascent=list(BAD_FOX_ASCENT), descent=[])


@pytest.fixture
def fox_entries():
    return [make_entry(w) for w in FOX_WORDS]


class FakeClock:
    """Deterministic stand-in for time.time with manual advancement."""

    def __init__(self, start: float = 1_000_000.0):
        self.now = start

    def __call__(self) -> float:
        return self.now

    def advance(self, seconds: float) -> None:
        self.now += seconds


@pytest.fixture
def clock():
    return FakeClock()


def make_service(
    words=None,
    kb_pairs=None,
    *,
    clock=None,
    store=None,
    language=Language.EN,
    **config_kwargs,
):
    """One-language service over a synthetic pool; all words land in one level
    unless n_levels says otherwise."""
    words = words if words is not None else list(FOX_WORDS)
    kb_pairs = kb_pairs if kb_pairs is not None else list(FOX_FULL_EDGES)
    config_kwargs.setdefault("n_levels", 1)
    config_kwargs.setdefault("seed", 7)
    config = EngineConfig(**config_kwargs)
    # descending frequency keeps the level ordering stable and obvious
    entries = [
        make_entry(w, frequency=float(len(words) - i), language=language)
        for i, w in enumerate(words)
    ]
    assets = {
        language: LanguageAssets(
            kb=build_kb(kb_pairs, language),
            entries=entries,
            table=build_levels(entries, n_levels=config.n_levels),
            blocklist=set(),
        )
    }
    return GameService(
        assets,
        config=config,
        store=store if store is not None else MemoryStore(),
        clock=clock if clock is not None else FakeClock(),
    )
