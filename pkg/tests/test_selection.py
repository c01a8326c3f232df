import random

import pytest

from expr_helpers import VOCAB, random_expression
from lithoid.characterize import Registry, SourceDescriptor
from lithoid.errors import EmptyRequest
from lithoid.expressions import parse
from lithoid.navigation import PreferenceProfile
from lithoid.selection import (
    CONTAINED,
    PARTIAL,
    SelectionParams,
    brute_force_select,
    select,
)


def registry_of(*sources):
    registry = Registry()
    for source_id, phrase_list in sources:
        registry.register(
            SourceDescriptor(source_id, f"https://example.org/{source_id}"),
            phrases=phrase_list,
        )
    return registry


def random_registry(rng, n_sources, max_phrases=3, max_size=5):
    registry = Registry()
    for i in range(n_sources):
        phrases = {
            random_expression(rng, max_size) for _ in range(rng.randint(1, max_phrases))
        }
        registry.register(
            SourceDescriptor(f"s{i:03d}", f"https://example.org/s{i}"), phrases=phrases
        )
    return registry


class TestSelect:
    def test_exact_match_scores_one(self):
        registry = registry_of(
            ("a", ["migration of salmon"]),
            ("b", ["weather of mars"]),
        )
        results = select(registry, {parse("migration of salmon")})
        assert [r.source_id for r in results] == ["a"]
        assert results[0].score == pytest.approx(1.0)
        assert results[0].matched[0].kind == CONTAINED

    def test_source_matching_both_clues_wins(self):
        registry = registry_of(
            ("both", ["polution of rivers", "migration of salmon"]),
            ("one", ["migration of salmon"]),
        )
        clues = {parse("polution of rivers"), parse("migration of salmon")}
        results = select(registry, clues)
        assert [r.source_id for r in results] == ["both", "one"]
        assert results[0].contained_count == 2
        assert results[1].contained_count == 1

    def test_preference_breaks_containment_tie(self, wave_engine):
        session = wave_engine.begin_session()
        session.record_feedback("wavesurf", True)
        results = wave_engine.select({parse("surfing")}, session.profile)
        assert [r.source_id for r in results] == ["wavesurf", "netsurf"]
        assert results[0].score > results[1].score

    def test_partial_match_via_term_overlap(self):
        registry = registry_of(("a", ["migration of salmon"]))
        results = select(registry, {parse("salmon of norway")})
        (r,) = results
        assert r.matched[0].kind == PARTIAL
        assert r.contained_count == 0
        # jaccard 1/3 discounted by w_partial 0.5
        assert r.score == pytest.approx(1 / 6)

    def test_no_overlap_is_omitted(self):
        registry = registry_of(("a", ["migration of salmon"]))
        assert select(registry, {parse("weather of mars")}) == []

    def test_contained_preferred_over_larger_partial(self):
        # "salmon" is contained in a big phrase (low ratio) and overlaps a
        # two-term phrase partially; containment must still win
        registry = registry_of(
            ("a", ["migration of (salmon in norway) by autumn", "salmon of doubt"]),
        )
        results = select(registry, {parse("salmon")})
        (r,) = results
        assert r.matched[0].kind == CONTAINED

    def test_limit(self):
        registry = registry_of(*((f"s{i}", ["salmon"]) for i in range(5)))
        results = select(registry, {parse("salmon")}, limit=2)
        assert [r.source_id for r in results] == ["s0", "s1"]

    def test_exclude(self):
        registry = registry_of(("a", ["salmon"]), ("b", ["salmon"]))
        results = select(registry, {parse("salmon")}, exclude={"a"})
        assert [r.source_id for r in results] == ["b"]

    def test_empty_request(self):
        with pytest.raises(EmptyRequest):
            select(registry_of(("a", ["salmon"])), set())

    def test_deterministic(self):
        rng = random.Random(41)
        registry = random_registry(rng, 30)
        clues = {random_expression(rng, 3) for _ in range(3)}
        first = select(registry, clues)
        assert all(select(registry, clues) == first for _ in range(3))


class TestBruteForce:
    def test_empty_registry(self):
        assert brute_force_select(Registry(), {parse("salmon")}) == set()

    def test_exact_match(self):
        registry = registry_of(("a", ["migration of salmon"]))
        assert brute_force_select(registry, {parse("salmon")}) == {"a"}

    def test_oracle_agreement(self):
        rng = random.Random(42)
        for _ in range(10):
            registry = random_registry(rng, 50)
            clues = {random_expression(rng, 3) for _ in range(rng.randint(1, 3))}
            ranked = select(registry, clues)
            contained = {r.source_id for r in ranked if r.contained_count > 0}
            assert contained == brute_force_select(registry, clues)

    def test_pure_containment_regime(self):
        rng = random.Random(43)
        params = SelectionParams(w_partial=0.0)
        for _ in range(10):
            registry = random_registry(rng, 40)
            clues = {random_expression(rng, 3) for _ in range(2)}
            got = {r.source_id for r in select(registry, clues, params=params)}
            assert got == brute_force_select(registry, clues)


class TestOrdering:
    def test_containment_dominates_partial(self):
        rng = random.Random(44)
        for _ in range(10):
            registry = random_registry(rng, 40)
            clues = {random_expression(rng, 4) for _ in range(2)}
            results = select(registry, clues)
            seen_partial_only = False
            for r in results:
                if r.contained_count == 0:
                    seen_partial_only = True
                else:
                    assert not seen_partial_only

    def test_adding_clue_never_drops_contained_count(self):
        rng = random.Random(45)
        registry = random_registry(rng, 30)
        clues = {random_expression(rng, 3)}
        before = {r.source_id: r.contained_count for r in select(registry, clues)}
        clues.add(random_expression(rng, 3))
        after = {r.source_id: r.contained_count for r in select(registry, clues)}
        for source_id, count in before.items():
            assert after.get(source_id, 0) >= count

    def test_score_implies_match(self):
        rng = random.Random(46)
        registry = random_registry(rng, 30)
        profile = PreferenceProfile()
        for term in VOCAB:
            profile.bump_term(term, 2.0)
        results = select(registry, {random_expression(rng, 3)}, profile)
        for r in results:
            assert r.score > 0
            assert r.matched
