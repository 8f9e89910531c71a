import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from models.ranking import TieBreakChain, TieBreakKey
from models.record import CitationRecord, ReferenceSet
from services.ranking_service import RankingService
from utils.errors import CovariateError

from tests.conftest import make_set


def _set_of(rows):
    """rows: (citations, pages, journal_metric) tuples"""
    members = [
        CitationRecord(id=f"r{index}", citations=citations, field="F", year=2000, doctype="Article",
                       pages=pages, journal_metric=metric)
        for index, (citations, pages, metric) in enumerate(rows)
    ]
    return ReferenceSet(key=("F", 2000, "Article"), members=members)


def test_sample_set_average_ranks(sample_set, sample_ranked):
    ranks = sample_ranked.ranks
    assert ranks["p41"] == ranks["p40"] == 40.5
    assert {ranks[f"p{k}"] for k in range(36, 40)} == {37.5}
    assert ranks["p21"] == 21.0
    assert {ranks[f"p0{k}"] for k in range(1, 5)} == {2.5}
    assert sum(ranks.values()) == pytest.approx(41 * 42 / 2)


def test_sample_set_tie_groups(sample_ranked):
    groups = sample_ranked.tie_groups
    assert [g.citations for g in groups] == [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15]
    assert sample_ranked.largest_tie_group == 7

    fourteen = sample_ranked.group_of("p39")
    assert fourteen.lower == 35
    assert fourteen.size == 4
    assert fourteen.upper == 39
    assert fourteen.member_ids == ["p36", "p37", "p38", "p39"]


def test_single_record_gets_rank_one():
    ranked = RankingService().rank_with_ties(make_set([7]))
    assert ranked.ranks == {"p01": 1.0}
    assert ranked.largest_tie_group == 1


def test_effective_scores_carry_chain_values():
    reference_set = _set_of([(6, 3, 1.5), (6, None, 2.0), (9, None, None)])
    chain = TieBreakChain.parse("journal-metric")

    scores = RankingService().effective_scores(reference_set, chain)

    assert [s.id for s in scores] == ["r0", "r1", "r2"]
    assert scores[0].sort_key == (6.0, 1.5)
    assert scores[1].tie_breakers == {"journal-metric": 2.0}
    # untied member may lack the covariate
    assert scores[2].sort_key == (9.0, 0.0)
    assert scores[2].tie_breakers == {"journal-metric": None}


def test_chain_parse_aliases():
    chain = TieBreakChain.parse("cpp, jm")
    assert chain.keys == (TieBreakKey.CITATIONS_PER_PAGE, TieBreakKey.JOURNAL_METRIC)
    assert str(chain) == "citations-per-page,journal-metric"
    assert TieBreakChain.parse("").is_empty
    with pytest.raises(ValueError):
        TieBreakChain.parse("impact-factor")


def test_citations_per_page_breaks_ties():
    reference_set = _set_of([(10, 5, None), (10, 2, None), (10, 10, None), (3, None, None)])
    ranked = RankingService().rank_with_ties(reference_set, TieBreakChain.parse("citations-per-page"))

    # 10/2 > 10/5 > 10/10
    assert ranked.ranks == {"r3": 1.0, "r2": 2.0, "r0": 3.0, "r1": 4.0}
    assert ranked.largest_tie_group == 1


def test_chain_applies_keys_in_order():
    reference_set = _set_of([(4, 2, 0.5), (4, 2, 1.5), (4, 4, 9.0), (4, 2, 1.5)])
    ranked = RankingService().rank_with_ties(reference_set, TieBreakChain.parse("citations-per-page,journal-metric"))

    assert ranked.ranks["r2"] == 1.0
    assert ranked.ranks["r0"] == 2.0
    assert ranked.ranks["r1"] == ranked.ranks["r3"] == 3.5


def test_chain_never_reorders_across_citation_counts():
    reference_set = _set_of([(5, None, 99.0), (5, None, 0.1), (6, None, 0.0)])
    ranked = RankingService().rank_with_ties(reference_set, TieBreakChain.parse("journal-metric"))
    assert ranked.ranks["r2"] == 3.0
    assert ranked.ranks["r0"] == 2.0


def test_missing_covariate_on_tied_record_raises():
    reference_set = _set_of([(5, 3, None), (5, None, None), (8, None, None)])
    with pytest.raises(CovariateError) as error:
        RankingService().rank_with_ties(reference_set, TieBreakChain.parse("citations-per-page"))
    assert error.value.record_id == "r1"
    assert error.value.covariate == "pages"


def test_missing_covariate_on_untied_record_is_fine():
    reference_set = _set_of([(5, 3, None), (5, 1, None), (8, None, None)])
    ranked = RankingService().rank_with_ties(reference_set, TieBreakChain.parse("citations-per-page"))
    assert ranked.ranks["r2"] == 3.0


@settings(max_examples=1000, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=20), min_size=1, max_size=60))
def test_rank_sum_is_preserved(citations):
    ranked = RankingService().rank_with_ties(make_set(citations))
    n = len(citations)
    assert sum(ranked.ranks.values()) == pytest.approx(n * (n + 1) / 2)
    assert sum(group.size for group in ranked.tie_groups) == n


@given(st.lists(st.integers(min_value=0, max_value=10), min_size=1, max_size=40), st.randoms())
def test_ranks_ignore_input_order(citations, rnd):
    reference_set = make_set(citations)
    shuffled_members = list(reference_set.members)
    rnd.shuffle(shuffled_members)
    shuffled = ReferenceSet(key=reference_set.key, members=shuffled_members)

    service = RankingService()
    assert service.rank_with_ties(shuffled).ranks == service.rank_with_ties(reference_set).ranks


rows_strategy = st.lists(
    st.tuples(st.integers(min_value=0, max_value=4), st.integers(min_value=1, max_value=3),
              st.sampled_from([0.5, 1.0, 2.0])),
    min_size=1, max_size=8,
)


@settings(max_examples=200)
@given(rows_strategy)
def test_chain_matches_brute_force_ordering(rows):
    reference_set = _set_of(rows)
    ranked = RankingService().rank_with_ties(reference_set, TieBreakChain.parse("citations-per-page,journal-metric"))

    keys = {f"r{index}": (c, c / p, m) for index, (c, p, m) in enumerate(rows)}
    for record_id, key in keys.items():
        below = sum(1 for other in keys.values() if other < key)
        equal = sum(1 for other in keys.values() if other == key)
        assert ranked.ranks[record_id] == pytest.approx(below + (equal + 1) / 2)

    # records with more citations always rank higher, whatever their covariates
    for a, (ca, _, _) in enumerate(rows):
        for b, (cb, _, _) in enumerate(rows):
            if ca < cb:
                assert ranked.ranks[f"r{a}"] < ranked.ranks[f"r{b}"]
