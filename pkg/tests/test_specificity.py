import logging
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordladders.ladder_graph import Ladder
from wordladders.lexicon import Language
from wordladders.specificity import (
    SpecificityRecord,
    aggregate,
    export_specificity,
    ladder_specificity,
    parse_specificity,
)

APPROX = 1e-12


class TestLadderSpecificity:
    def test_good_fox_ladder_positions(self, good_fox_ladder):
        scores = ladder_specificity(good_fox_ladder)
        assert scores["living being"] == pytest.approx(1 / 6, abs=APPROX)
        assert scores["animal"] == pytest.approx(2 / 6, abs=APPROX)
        assert scores["mammal"] == pytest.approx(3 / 6, abs=APPROX)
        assert scores["canine"] == pytest.approx(4 / 6, abs=APPROX)
        assert scores["fox"] == pytest.approx(5 / 6, abs=APPROX)
        assert scores["grey fox"] == pytest.approx(1.0, abs=APPROX)

    def test_prompt_only_ladder(self):
        assert ladder_specificity(Ladder(prompt="banana")) == {"banana": 1.0}

    def test_ascent_only_positions(self):
        scores = ladder_specificity(Ladder(prompt="apple", ascent=["fruit", "food"]))
        assert scores["food"] == pytest.approx(1 / 3, abs=APPROX)
        assert scores["fruit"] == pytest.approx(2 / 3, abs=APPROX)
        assert scores["apple"] == pytest.approx(1.0, abs=APPROX)


@st.composite
def random_ladders(draw):
    words = draw(
        st.lists(
            st.text(alphabet="abcdefgh", min_size=1, max_size=6),
            min_size=1,
            max_size=9,
            unique=True,
        )
    )
    cut = draw(st.integers(1, len(words)))
    return Ladder(prompt=words[0], ascent=words[1:cut], descent=words[cut:])


@given(random_ladders())
@settings(max_examples=150)
def test_strictly_increasing_generic_to_specific(ladder):
    scores = ladder_specificity(ladder)
    ordered = ladder.ordered_rungs()
    values = [scores[w] for w in ordered]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert all(0.0 < v <= 1.0 for v in values)
    assert values[-1] == pytest.approx(1.0, abs=APPROX)


class TestAggregate:
    def test_single_observation(self):
        (record,) = aggregate([("banana", 0.5)], Language.EN)
        assert record.mean_specificity == pytest.approx(0.5)
        assert record.sd == 0.0
        assert record.n_observations == 1
        assert not record.target_reached

    def test_symmetric_pair(self):
        (record,) = aggregate([("banana", 0.4), ("banana", 0.6)], Language.EN)
        assert record.mean_specificity == pytest.approx(0.5)
        assert record.n_observations == 2

    def test_target_reached_at_one_hundred(self):
        records = aggregate([("banana", 0.5)] * 100, Language.EN)
        assert records[0].target_reached
        records = aggregate([("banana", 0.5)] * 99, Language.EN)
        assert not records[0].target_reached

    def test_out_of_range_rejected_with_warning(self, caplog):
        with caplog.at_level(logging.WARNING):
            records = aggregate([("banana", 0.0), ("banana", 1.5)], Language.EN)
        assert records == []
        assert sum("rejected" in r.message for r in caplog.records) == 2

    @given(st.lists(st.tuples(st.sampled_from("abc"), st.floats(0.01, 1.0)), max_size=30))
    @settings(max_examples=60)
    def test_permutation_invariant(self, observations):
        rng = random.Random(11)
        shuffled = list(observations)
        rng.shuffle(shuffled)
        assert aggregate(observations, Language.EN) == aggregate(shuffled, Language.EN)

    @given(st.lists(st.floats(0.01, 1.0), min_size=1, max_size=40))
    def test_mean_within_bounds(self, scores):
        (record,) = aggregate([("w", s) for s in scores], Language.EN)
        assert min(scores) - APPROX <= record.mean_specificity <= max(scores) + APPROX


class TestExport:
    def records(self):
        return [
            SpecificityRecord("fox", Language.EN, 5 / 6, 0.1, 12, False),
            SpecificityRecord("animal", Language.EN, 1 / 3, 0.0, 100, True),
        ]

    def test_empty_csv_is_header_only(self):
        assert export_specificity([], "csv") == "lemma,language,mean,sd,n,target_reached\n"

    def test_single_record_row(self):
        doc = export_specificity(self.records()[:1], "csv")
        lines = doc.strip().splitlines()
        assert len(lines) == 2
        assert lines[1].startswith("fox,EN,")

    def test_sorted_by_lemma(self):
        doc = export_specificity(self.records(), "csv")
        body = doc.strip().splitlines()[1:]
        assert [line.split(",")[0] for line in body] == ["animal", "fox"]

    @pytest.mark.parametrize("fmt", ["csv", "json"])
    def test_round_trip(self, fmt):
        records = self.records()
        assert parse_specificity(export_specificity(records, fmt), fmt) == sorted(
            records, key=lambda r: r.lemma
        )

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            export_specificity([], "xml")
