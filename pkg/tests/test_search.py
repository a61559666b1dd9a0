"""Search over candidate switching cells: budgets, dedup, pattern generators."""

import pytest

from spectral_switch.families import recipe_j2n4, recipe_sporadic
from spectral_switch.graphcore import Graph
from spectral_switch.schemes import SchemeParams, build
from spectral_switch.search import (
    SearchConfig,
    SearchResult,
    johnson_block_triples,
    johnson_core_triples,
    search_gm4,
    search_wqh33,
)
from spectral_switch.switching import apply_switching, validate


def pair_key(spec):
    return frozenset((frozenset(spec.c1), frozenset(spec.c2)))


def test_config_validation():
    with pytest.raises(ValueError, match="unknown search mode"):
        SearchConfig(mode="dfs")
    with pytest.raises(ValueError, match="positive"):
        SearchConfig(max_candidates=0)
    with pytest.raises(ValueError, match="positive"):
        SearchConfig(time_budget=0)


def test_gm4_raw_scan_on_q2_kneser(k242):
    res = search_gm4(k242, SearchConfig(dedup=False))
    assert not res.partial
    assert res.dedup_exact is None
    assert len(res.specs) == 840
    assert any(sorted(s.cells[0]) == [0, 10, 16, 28] for s in res.specs)
    # every returned spec actually validates
    for s in res.specs[:25]:
        assert validate(k242, s).valid
    # deterministic
    res2 = search_gm4(k242, SearchConfig(dedup=False))
    assert res.specs == res2.specs


def test_gm4_dedup_collapses_orbit(k242):
    res = search_gm4(k242, SearchConfig(dedup=True))
    assert not res.partial
    assert res.dedup_exact is True
    assert len(res.specs) == 2
    # the kept mates are genuinely different graphs
    from spectral_switch.certify import canonical_form

    mates = [apply_switching(k242, s) for s in res.specs]
    assert canonical_form(mates[0]) != canonical_form(mates[1])
    assert all(m != k242 for m in mates)


def test_gm4_candidate_budget(k242):
    res = search_gm4(k242, SearchConfig(max_candidates=100, dedup=False))
    assert res.partial


def test_gm4_time_budget(k242):
    res = search_gm4(k242, SearchConfig(time_budget=1e-9, dedup=False))
    assert res.partial


def test_gm4_edgeless_identity_switches():
    g = Graph(8, [0] * 8)
    raw = search_gm4(g, SearchConfig(dedup=False))
    assert len(raw.specs) == 70  # C(8,4); every cell qualifies trivially
    deduped = search_gm4(g, SearchConfig(dedup=True))
    assert deduped.specs == ()  # nothing flips, all switches are identities


def test_core_triples_shape():
    cands = johnson_core_triples(8, 4)
    assert len(cands) == 560  # C(8,3) * C(5,3)
    assert all(len(set(t)) == 3 for t in cands)
    with pytest.raises(ValueError, match="k >= 2"):
        johnson_core_triples(6, 1)


def test_block_triples_shape():
    cands = johnson_block_triples(11, 4)
    assert len(cands) == 560  # 280 partitions of {1..9} x 2 tails
    assert all(len(set(t)) == 3 for t in cands)
    with pytest.raises(ValueError, match="base must hold"):
        johnson_block_triples(11, 4, base=(1, 2, 3))
    with pytest.raises(ValueError, match="k >= 2"):
        johnson_block_triples(6, 1)


def test_wqh33_rediscovers_j2n4_pair(j284):
    cands = johnson_core_triples(8, 4)
    res = search_wqh33(j284, cands, cands, SearchConfig(mode="wqh33", dedup=False))
    assert not res.partial
    assert len(res.specs) == 280
    assert pair_key(recipe_j2n4(8).spec) in {pair_key(s) for s in res.specs}
    for s in res.specs[:10]:
        assert validate(j284, s).valid


def test_wqh33_rediscovers_sporadic_pair():
    g = build(SchemeParams.johnson(11, 4, {1}))
    cands = johnson_block_triples(11, 4)
    res = search_wqh33(g, cands, cands, SearchConfig(mode="wqh33", dedup=False))
    assert len(res.specs) == 280
    assert pair_key(recipe_sporadic("J1-11-4").spec) in {pair_key(s) for s in res.specs}


def test_wqh33_candidate_validation(j284):
    cfg = SearchConfig(mode="wqh33")
    with pytest.raises(ValueError, match="candidate triple"):
        search_wqh33(j284, [(0, 1)], [(2, 3, 4)], cfg)
    with pytest.raises(ValueError, match="candidate triple"):
        search_wqh33(j284, [(0, 1, 1)], [(2, 3, 4)], cfg)
    with pytest.raises(ValueError, match="candidate triple"):
        search_wqh33(j284, [(0, 1, 70)], [(2, 3, 4)], cfg)


def test_wqh33_mirrored_pairs_deduplicated():
    # same candidate list on both sides must not double-report (C1,C2)/(C2,C1)
    g = build(SchemeParams.johnson(8, 4, {2}))
    r = recipe_j2n4(8)
    t1, t2 = tuple(r.spec.c1), tuple(r.spec.c2)
    res = search_wqh33(g, [t1, t2], [t1, t2], SearchConfig(mode="wqh33", dedup=False))
    assert len(res.specs) == 1


def test_search_result_json_shapes():
    assert SearchResult((), False, None).to_json_dict() == {
        "specs": [], "partial": False}
    d = SearchResult((), True, True).to_json_dict()
    assert d["partial"] and d["dedup_exact"] and "note" not in d
    d = SearchResult((), False, False).to_json_dict()
    assert "fingerprint" in d["note"]
