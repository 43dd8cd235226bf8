import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordladders.ladder_graph import GameMode, Ladder, LadderError
from wordladders.lexicon import Language
from wordladders.privacy import PIIError, ensure_pii_free
from wordladders.scoring import MatchResult
from wordladders.sessions import (
    AlreadySubmittedError,
    DuplicateNicknameError,
    Education,
    ExpiredMatchError,
    Match,
    MatchState,
    NotParticipantError,
    ReadingHabits,
    SessionError,
    UnknownUserError,
    UserProfile,
    age_band,
)
from wordladders.storage import MemoryStore

from .conftest import FakeClock, make_service


def profile(nickname, **overrides):
    base = dict(
        nickname=nickname,
        age=30,
        education=Education.MASTER,
        profession="researcher",
        mother_tongue="italian",
        reading_habits=ReadingHabits.DAILY,
        language_pref=Language.EN,
    )
    base.update(overrides)
    return UserProfile(**base)


class TestRegistration:
    def test_round_trip(self):
        service = make_service()
        service.register_user(profile("ada"))
        assert service.get_user("ada").profession == "researcher"

    def test_duplicate_nickname_rejected(self):
        service = make_service()
        service.register_user(profile("ada"))
        with pytest.raises(DuplicateNicknameError):
            service.register_user(profile("ada"))

    def test_profile_doc_with_email_rejected(self):
        doc = profile("ada").to_dict() | {"email": "ada@example.org"}
        with pytest.raises(SessionError, match="email"):
            UserProfile.from_dict(doc)

    def test_profile_schema_has_no_pii_fields(self):
        from wordladders.privacy import is_pii_field

        for field in dataclasses.fields(UserProfile):
            assert not is_pii_field(field.name)

    def test_invalid_age_rejected(self):
        with pytest.raises(SessionError):
            profile("ada", age=-1).validate()

    def test_unknown_education_rejected(self):
        doc = profile("ada").to_dict() | {"education": "wizard"}
        with pytest.raises(SessionError):
            UserProfile.from_dict(doc)


class TestMatchLifecycle:
    def test_individual_match_opens_with_120s(self):
        service = make_service()
        service.register_user(profile("ada"))
        match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
        assert match.state is MatchState.OPEN
        assert match.duration == 120.0
        assert match.prompt in {e.lemma for e in service.assets[Language.EN].entries}

    def test_challenge_shares_one_prompt(self):
        service = make_service()
        service.register_user(profile("ada"))
        service.register_user(profile("bob"))
        match = service.start_match(["ada", "bob"], GameMode.CHALLENGE, Language.EN)
        assert match.participants == ["ada", "bob"]
        assert isinstance(match.prompt, str) and match.prompt

    def test_challenge_needs_exactly_two(self):
        service = make_service()
        service.register_user(profile("ada"))
        with pytest.raises(SessionError, match="exactly 2"):
            service.start_match(["ada"], GameMode.CHALLENGE, Language.EN)

    def test_unregistered_participant_rejected(self):
        service = make_service()
        with pytest.raises(UnknownUserError):
            service.start_match(["ghost"], GameMode.INDIVIDUAL, Language.EN)

    def test_unknown_language_rejected(self):
        service = make_service()
        service.register_user(profile("ada"))
        with pytest.raises(SessionError, match="not loaded"):
            service.start_match(["ada"], GameMode.INDIVIDUAL, Language.IT)


class TestSubmission:
    def fox_service(self, clock=None):
        """Single-word pool so every match plays the fox fixture prompt."""
        return make_service(words=["fox"], clock=clock or FakeClock())

    def test_good_fox_ladder_full_pipeline(self):
        clock = FakeClock()
        service = self.fox_service(clock)
        service.register_user(profile("ada"))
        match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
        assert match.prompt == "fox"
        clock.advance(100.0)
        result = service.submit_ladder(
            match.match_id,
            "ada",
            Ladder(
                prompt="fox",
                ascent=["canine", "mammal", "animal", "living being"],
                descent=["grey fox"],
            ),
        )
        # fresh graph: np=0 -> npl=0.2; KB init m=6; ul=ulv=6 -> base 100
        assert result.npl == pytest.approx(0.2)
        assert result.ul == 6 and result.ulv == 6
        assert result.score == pytest.approx(100.0)
        assert result.stars == 5
        assert match.state is MatchState.SCORED
        graph = service.find_graph("fox", Language.EN)
        assert graph.total_plays == 1
        assert graph.hyper_arcs[("fox", "canine")].play_count == 1

    def test_late_submission_expires_without_mutation(self):
        clock = FakeClock()
        service = self.fox_service(clock)
        service.register_user(profile("ada"))
        match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
        graph = service.graph_for("fox", Language.EN)
        before = graph.total_plays
        clock.advance(121.0)
        with pytest.raises(ExpiredMatchError):
            service.submit_ladder(match.match_id, "ada", Ladder(prompt="fox"))
        assert graph.total_plays == before
        assert match.state is MatchState.EXPIRED

    def test_boundary_submission_accepted(self):
        clock = FakeClock()
        service = self.fox_service(clock)
        service.register_user(profile("ada"))
        match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
        clock.advance(120.0)
        result = service.submit_ladder(match.match_id, "ada", Ladder(prompt="fox"))
        assert result.ul == 1

    def test_prompt_only_submission_scores(self):
        clock = FakeClock()
        service = self.fox_service(clock)
        service.register_user(profile("ada"))
        match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
        clock.advance(110.0)
        result = service.submit_ladder(match.match_id, "ada", Ladder(prompt="fox"))
        assert result.ul == 1 and result.ulv == 1
        # m=6 from KB init: base 100/6, bonus 10/12 -> one star
        assert result.score == pytest.approx(100 / 6 + 10 * (1 - 110 / 120))
        assert result.stars == 1

    def test_duplicate_rung_rejected_with_explanation(self):
        service = self.fox_service()
        service.register_user(profile("ada"))
        match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
        with pytest.raises(LadderError, match="duplicate rung 'canine'"):
            service.submit_ladder(
                match.match_id, "ada", Ladder(prompt="fox", ascent=["canine", "canine"])
            )

    def test_non_participant_rejected(self):
        service = self.fox_service()
        service.register_user(profile("ada"))
        service.register_user(profile("eve"))
        match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
        with pytest.raises(NotParticipantError):
            service.submit_ladder(match.match_id, "eve", Ladder(prompt="fox"))

    def test_second_submission_rejected(self):
        service = self.fox_service()
        service.register_user(profile("ada"))
        match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
        service.submit_ladder(match.match_id, "ada", Ladder(prompt="fox"))
        with pytest.raises(AlreadySubmittedError):
            service.submit_ladder(match.match_id, "ada", Ladder(prompt="fox"))

    def test_wrong_prompt_rejected(self):
        service = self.fox_service()
        service.register_user(profile("ada"))
        match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
        with pytest.raises(LadderError, match="prompt"):
            service.submit_ladder(match.match_id, "ada", Ladder(prompt="apple"))

    def test_timer_contract_sweep(self):
        # accepted iff elapsed <= duration, across the whole grid
        for elapsed in [0.0, 1.0, 60.0, 119.5, 120.0, 120.001, 150.0]:
            clock = FakeClock()
            service = self.fox_service(clock)
            service.register_user(profile("ada"))
            match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
            clock.advance(elapsed)
            if elapsed <= 120.0:
                service.submit_ladder(match.match_id, "ada", Ladder(prompt="fox"))
            else:
                with pytest.raises(ExpiredMatchError):
                    service.submit_ladder(match.match_id, "ada", Ladder(prompt="fox"))

    def test_challenge_winner_is_higher_score(self):
        clock = FakeClock()
        service = make_service(words=["fox"], clock=clock)
        service.register_user(profile("ada"))
        service.register_user(profile("bob"))
        match = service.start_match(["ada", "bob"], GameMode.CHALLENGE, Language.EN)
        clock.advance(10.0)
        service.submit_ladder(
            match.match_id, "ada", Ladder(prompt="fox", ascent=["canine", "mammal"])
        )
        clock.advance(10.0)
        service.submit_ladder(match.match_id, "bob", Ladder(prompt="fox"))
        assert match.state is MatchState.SCORED
        assert match.winner() == "ada"

    def test_team_mode_mean_score(self):
        clock = FakeClock()
        service = make_service(words=["fox"], clock=clock)
        for nick in ("ada", "bob", "cyd"):
            service.register_user(profile(nick))
        match = service.start_match(["ada", "bob", "cyd"], GameMode.TEAM, Language.EN)
        clock.advance(5.0)
        results = [
            service.submit_ladder(match.match_id, nick, Ladder(prompt="fox"))
            for nick in ("ada", "bob", "cyd")
        ]
        expected = sum(r.score for r in results) / 3
        assert match.team_score() == pytest.approx(expected)


class TestProgression:
    def test_ten_good_matches_advance_level(self):
        clock = FakeClock()
        words = [f"w{i:02d}" for i in range(20)]
        service = make_service(
            words=words, kb_pairs=[], clock=clock, n_levels=2, advance_threshold=0.0
        )
        service.register_user(profile("ada"))
        for _ in range(10):
            match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
            clock.advance(1.0)
            service.submit_ladder(match.match_id, "ada", Ladder(prompt=match.prompt))
            clock.advance(200.0)  # next match starts well past the previous window
        assert service.progress[("ada", Language.EN)].level == 2

    def test_low_scores_retain_level(self):
        clock = FakeClock()
        words = [f"w{i:02d}" for i in range(20)]
        # every word has a hypernym, so m=2 and a prompt-only ladder scores ~60
        service = make_service(
            words=words,
            kb_pairs=[(w, "thing") for w in words],
            clock=clock,
            n_levels=2,
            advance_threshold=99.0,
        )
        service.register_user(profile("ada"))
        for _ in range(10):
            match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
            clock.advance(1.0)
            service.submit_ladder(match.match_id, "ada", Ladder(prompt=match.prompt))
            clock.advance(200.0)
        progress = service.progress[("ada", Language.EN)]
        assert progress.level == 1
        assert progress.words_played_in_level == set()

    def test_abandoned_match_scores_zero_on_sweep(self):
        clock = FakeClock()
        words = [f"w{i:02d}" for i in range(20)]
        service = make_service(words=words, kb_pairs=[], clock=clock, n_levels=1)
        service.register_user(profile("ada"))
        service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
        clock.advance(121.0)
        service.expire_stale_matches()
        progress = service.progress[("ada", Language.EN)]
        assert progress.scores_in_level == [0.0]


class TestLeaderboard:
    def seeded(self):
        service = make_service(words=["fox"])
        service.register_user(profile("ada", age=34, education=Education.MASTER))
        service.register_user(profile("bob", age=61, education=Education.HIGH_SCHOOL))
        service.register_user(profile("cyd", age=35, education=Education.MASTER))
        return service

    def inject_result(self, service, nickname, score, games=1):
        for i in range(games):
            match = Match(
                match_id=f"m-{nickname}-{i}",
                mode=GameMode.INDIVIDUAL,
                participants=[nickname],
                prompt="fox",
                language=Language.EN,
                started_at=service.clock(),
                state=MatchState.SCORED,
            )
            match.results[nickname] = MatchResult(
                score=score / games, stars=3, ul=2, ulv=2, npl=0.2, validated_flags=[True]
            )
            match.resolved[nickname] = "submitted"
            service.matches[match.match_id] = match

    def test_global_ranking(self):
        service = self.seeded()
        self.inject_result(service, "ada", 90.0)
        self.inject_result(service, "bob", 50.0)
        rows = service.leaderboard()
        assert [row["nickname"] for row in rows] == ["ada", "bob", "cyd"]

    def test_facet_filter_singleton(self):
        service = self.seeded()
        rows = service.leaderboard(facets={"education": "high_school"})
        assert [row["nickname"] for row in rows] == ["bob"]

    def test_unknown_facet_value_gives_empty(self):
        service = self.seeded()
        assert service.leaderboard(facets={"education": "wizardry"}) == []

    def test_unknown_facet_key_rejected(self):
        service = self.seeded()
        with pytest.raises(SessionError):
            service.leaderboard(facets={"shoe_size": "42"})

    def test_tie_broken_by_fewer_games(self):
        service = self.seeded()
        self.inject_result(service, "ada", 80.0, games=5)
        self.inject_result(service, "bob", 80.0, games=7)
        rows = service.leaderboard()
        assert [row["nickname"] for row in rows][:2] == ["ada", "bob"]

    def test_age_shown_only_as_band(self):
        service = self.seeded()
        rows = service.leaderboard(facets={"age_band": "30-39"})
        assert {row["nickname"] for row in rows} == {"ada", "cyd"}
        assert all("age" not in row for row in rows)
        assert all(row["age_band"] == "30-39" for row in rows)

    def test_limit(self):
        service = self.seeded()
        assert len(service.leaderboard(limit=2)) == 2


class TestAgeBand:
    @pytest.mark.parametrize("age,band", [(0, "0-9"), (34, "30-39"), (61, "60-69")])
    def test_bands(self, age, band):
        assert age_band(age) == band


class TestPersistenceAndPII:
    def test_records_flow_into_store(self):
        store = MemoryStore()
        clock = FakeClock()
        service = make_service(words=["fox"], store=store, clock=clock)
        service.register_user(profile("ada"))
        match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
        clock.advance(30.0)
        service.submit_ladder(
            match.match_id, "ada", Ladder(prompt="fox", ascent=["canine"])
        )
        assert len(store.records("users")) == 1
        assert len(store.records("matches")) == 1
        assert store.records("matches")[0]["state"] == "scored"
        (ladder_record,) = store.records("ladders")
        assert ladder_record["ascent"] == ["canine"]
        graph_doc = store.load_graph("EN", "fox")
        assert graph_doc["total_plays"] == 1

    def test_restore_from_store(self):
        store = MemoryStore()
        clock = FakeClock()
        service = make_service(words=["fox"], store=store, clock=clock)
        service.register_user(profile("ada"))
        match = service.start_match(["ada"], GameMode.INDIVIDUAL, Language.EN)
        clock.advance(10.0)
        service.submit_ladder(match.match_id, "ada", Ladder(prompt="fox"))

        reborn = make_service(words=["fox"], store=store, clock=clock)
        assert "ada" in reborn.users
        assert match.match_id in reborn.matches
        assert reborn.find_graph("fox", Language.EN).total_plays == 1
        rows = reborn.leaderboard()
        assert rows[0]["nickname"] == "ada" and rows[0]["games"] == 1

    def test_store_rejects_pii_records(self):
        store = MemoryStore()
        with pytest.raises(PIIError):
            store.append("users", {"nickname": "x", "email": "x@example.org"})

    @given(
        st.dictionaries(
            st.sampled_from(["a", "b", "data", "notes"]),
            st.one_of(st.integers(), st.text(max_size=4)),
            max_size=3,
        ),
        st.sampled_from(
            ["email", "e-mail", "phone", "phone_number", "ip", "ip_address",
             "geolocation", "latitude", "longitude", "LOCATION"]
        ),
        st.integers(0, 3),
    )
    @settings(max_examples=80)
    def test_no_nesting_hides_pii(self, doc, pii_key, depth):
        ensure_pii_free(doc)  # clean documents pass
        payload: dict = {pii_key: "42"}
        for _ in range(depth):
            payload = {"wrap": [payload]}
        doc = dict(doc)
        doc["payload"] = payload
        with pytest.raises(PIIError):
            ensure_pii_free(doc)
