import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordladders.cleaning import (
    RemovalReason,
    clean_batch,
    clean_ladder,
    correct_typos,
    flag_bad_ladder,
    levenshtein,
    strip_invalid,
)
from wordladders.ladder_graph import Ladder, init_graph, record_play
from wordladders.lexicon import Language, build_kb

from .conftest import BAD_FOX_ASCENT, FOX_FULL_EDGES, FOX_WORDS, make_entry
from .oracles import one_edit_neighbourhood, reference_edit_distance

LEXICON = [make_entry(w) for w in ["banana", "fruit", "food", "apple", "cat", "cut"]]
LEMMAS = {e.lemma for e in LEXICON}


@given(
    st.text(alphabet="abcde", max_size=6),
    st.text(alphabet="abcde", max_size=6),
)
@settings(max_examples=200)
def test_levenshtein_matches_reference(a, b):
    assert levenshtein(a, b) == reference_edit_distance(a, b)


@given(st.text(alphabet="abcd", min_size=1, max_size=5))
@settings(max_examples=100)
def test_capped_distance_agrees_on_one_edits(word):
    for variant in one_edit_neighbourhood(word):
        assert levenshtein(word, variant, cap=1) == 1


class TestCorrectTypos:
    def test_single_candidate_corrected(self):
        ladder = Ladder(prompt="apple", ascent=["fruit"], descent=["bananna"])
        # the oracle confirms bananna has exactly one lexicon neighbour
        candidates = one_edit_neighbourhood("bananna") & LEMMAS
        assert candidates == {"banana"}
        fixed, corrections = correct_typos(ladder, LEXICON)
        assert fixed.descent == ["banana"]
        assert corrections == [("bananna", "banana")]

    def test_in_lexicon_rung_untouched(self):
        ladder = Ladder(prompt="apple", ascent=["fruit", "food"])
        fixed, corrections = correct_typos(ladder, LEXICON)
        assert fixed == ladder and corrections == []

    def test_ambiguous_candidates_untouched(self):
        assert one_edit_neighbourhood("cot") & LEMMAS == {"cat", "cut"}
        ladder = Ladder(prompt="apple", ascent=["cot"])
        fixed, corrections = correct_typos(ladder, LEXICON)
        assert fixed.ascent == ["cot"] and corrections == []

    def test_correction_never_duplicates_existing_rung(self):
        ladder = Ladder(prompt="apple", ascent=["banana", "bananna"])
        fixed, corrections = correct_typos(ladder, LEXICON)
        assert fixed.ascent == ["banana", "bananna"]
        assert corrections == []

    @given(st.sampled_from(sorted(LEMMAS)))
    def test_lexicon_words_never_change(self, word):
        ladder = Ladder(prompt="zzz", ascent=[word])
        fixed, _ = correct_typos(ladder, LEXICON)
        assert fixed.ascent == [word]


class TestStripInvalid:
    def test_nonword_truncates_side(self):
        ladder = Ladder(prompt="apple", ascent=["fruit", "xqzt", "food"])
        stripped, removed = strip_invalid(ladder, LEXICON, set())
        assert stripped.ascent == ["fruit"]
        assert removed == [("xqzt", RemovalReason.NONWORD)]

    def test_all_valid_identity(self):
        ladder = Ladder(prompt="apple", ascent=["fruit", "food"], descent=["banana"])
        stripped, removed = strip_invalid(ladder, LEXICON, set())
        assert stripped == ladder and removed == []

    def test_blocked_first_rung_empties_side(self):
        ladder = Ladder(prompt="apple", ascent=["banana", "fruit"])
        stripped, removed = strip_invalid(ladder, LEXICON, {"banana"})
        assert stripped.ascent == []
        assert removed == [("banana", RemovalReason.BLOCKED)]

    def test_descent_stripped_independently(self):
        ladder = Ladder(prompt="apple", ascent=["fruit"], descent=["zzzz", "banana"])
        stripped, removed = strip_invalid(ladder, LEXICON, set())
        assert stripped.ascent == ["fruit"] and stripped.descent == []
        assert removed == [("zzzz", RemovalReason.NONWORD)]


class TestFlagBadLadder:
    def test_good_fox_ladder_not_flagged(self, fox_kb, good_fox_ladder):
        graph = init_graph("fox", fox_kb)
        bad, fraction = flag_bad_ladder(good_fox_ladder, fox_kb, graph)
        assert fraction == pytest.approx(1.0)
        assert not bad

    def test_bad_fox_ladder_flagged(self, fox_kb, bad_fox_ladder):
        graph = init_graph("fox", fox_kb)
        bad, fraction = flag_bad_ladder(bad_fox_ladder, fox_kb, graph)
        # only fox->animal holds (transitively); the other eight arcs are junk
        assert fraction == pytest.approx(1 / 9)
        assert bad

    def test_prompt_only_is_vacuously_good(self, fox_kb):
        bad, fraction = flag_bad_ladder(Ladder(prompt="fox"), fox_kb)
        assert fraction == 1.0 and not bad

    def test_crowd_arcs_count_toward_fraction(self, fox_kb):
        graph = init_graph("fox", fox_kb)
        ladder = Ladder(prompt="fox", descent=["fennec"])
        for _ in range(50):
            record_play(graph, ladder, kb=fox_kb)
        bad, fraction = flag_bad_ladder(ladder, fox_kb, graph)
        assert fraction == pytest.approx(1.0) and not bad

    @given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_monotone_in_tau(self, tau1, tau2):
        if tau1 > tau2:
            tau1, tau2 = tau2, tau1
        kb = build_kb(FOX_FULL_EDGES, Language.EN)
        ladder = Ladder(prompt="fox", ascent=list(BAD_FOX_ASCENT))
        flagged_low, _ = flag_bad_ladder(ladder, kb, tau=tau1)
        flagged_high, _ = flag_bad_ladder(ladder, kb, tau=tau2)
        assert not (flagged_low and not flagged_high)


class TestCleanPipeline:
    def test_full_pipeline(self, fox_kb):
        lexicon = LEXICON + [make_entry(w) for w in FOX_WORDS]
        kb = build_kb([("apple", "fruit"), ("fruit", "food")], Language.EN)
        ladder = Ladder(prompt="Apple", ascent=["frut", "food", "xqzt"], descent=["bananna"])
        cleaned, report = clean_ladder(ladder, lexicon, set(), kb=kb, ladder_id="l1")
        assert cleaned.ascent == ["fruit", "food"]
        assert cleaned.descent == ["banana"]
        assert ("frut", "fruit") in report.corrections
        assert ("bananna", "banana") in report.corrections
        assert [lemma for lemma, _ in report.removed] == ["xqzt"]
        # apple->fruit->food in KB, fruit... banana below apple is not
        assert report.kb_valid_fraction == pytest.approx(2 / 3)
        assert not report.bad_ladder

    @given(
        st.lists(
            st.sampled_from(sorted(LEMMAS) + ["xq", "zt", "frut", "bananna"]),
            max_size=6,
            unique=True,
        )
    )
    @settings(max_examples=80)
    def test_idempotent(self, rungs):
        cut = len(rungs) // 2
        ladder = Ladder(prompt="zebra", ascent=rungs[:cut], descent=rungs[cut:])
        kb = build_kb([("apple", "fruit")], Language.EN)
        once, report_once = clean_ladder(ladder, LEXICON, {"cut"}, kb=kb)
        twice, report_twice = clean_ladder(once, LEXICON, {"cut"}, kb=kb)
        assert twice == once
        assert report_twice.corrections == []
        assert report_twice.removed == []
        assert report_twice.kb_valid_fraction == report_once.kb_valid_fraction

    def test_report_serializes(self, fox_kb, bad_fox_ladder):
        _, report = clean_ladder(
            bad_fox_ladder,
            [make_entry(w) for w in FOX_WORDS + bad_fox_ladder.ascent],
            set(),
            kb=fox_kb,
            ladder_id="bad1",
        )
        doc = report.to_dict()
        assert doc["ladder_id"] == "bad1"
        assert doc["bad_ladder"] is True
        assert isinstance(doc["kb_valid_fraction"], float)


def test_clean_batch_stream(fox_kb):
    records = [
        {
            "ladder_id": "a",
            "prompt": "fox",
            "ascent": ["canine", "mammal"],
            "descent": [],
            "language": "EN",
            "mode": "individual",
        },
        {
            "ladder_id": "b",
            "prompt": "fox",
            "ascent": ["xqzt"],
            "descent": [],
            "language": "EN",
            "mode": "challenge",
        },
    ]
    lexicon = [make_entry(w) for w in FOX_WORDS]
    results = list(clean_batch(records, lexicon, set(), kb=fox_kb))
    assert len(results) == 2
    first_ladder, first_report = results[0]
    assert first_report.ladder_id == "a" and not first_report.bad_ladder
    assert first_ladder.ascent == ["canine", "mammal"]
    _, second_report = results[1]
    assert second_report.removed == [("xqzt", RemovalReason.NONWORD)]
    assert second_report.kb_valid_fraction == 1.0  # nothing left but the prompt
