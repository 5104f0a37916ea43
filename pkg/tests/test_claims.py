import pytest

from conftest import Zmod
from specgraph.algebra import FinModule, Ring
from specgraph.claims import (
    FAIL,
    NOT_MET,
    PASS,
    REGISTRY,
    Corpus,
    Instance,
    check,
    explore_members_as_vertices,
    replay,
    run_suite,
    select_claims,
)
from specgraph.spectrum import max_spec


def test_registry_scopes_and_refinements():
    assert len(REGISTRY) >= 30
    for cid, c in REGISTRY.items():
        assert c.scope in ("module", "subset")
        if c.refines:
            assert c.refines in REGISTRY and cid.startswith(c.refines)


def test_select_claims():
    literal, corrected = select_claims("literal"), select_claims("corrected")
    assert set(literal) | set(corrected) == set(REGISTRY)
    assert "ag-quotient-embeds-in-zmax" in literal
    assert "ag-quotient-embeds-in-zmax" not in corrected
    assert "ag-quotient-embeds-in-zmax-closed" in corrected
    assert select_claims(["prime-lifting"]) == ["prime-lifting"]
    with pytest.raises(KeyError):
        select_claims(["no-such-claim"])


def test_shape_on_z30(z30):
    r = check("zmax-connected-diameter-girth", z30, max_spec(z30))
    assert r.status == PASS and r.witness == {"diameter": 3, "girth": 3}


def test_irreducible_subset_on_z12(z12):
    T = [z12.multiple(2)]
    assert check("zmax-nonempty-iff-closed-reducible", z12, T).status == PASS
    assert Instance(z12, T).G.is_empty


def test_isomorphism_on_z30_over_itself():
    M = FinModule(Ring(30), (30,))
    assert check("zmax-isomorphic-ag-quotient", M, max_spec(M)).status == PASS


def test_vertex_count_on_z30():
    M = FinModule(Ring(30), (30,))
    r = check("zmax-vertex-count", M, max_spec(M))
    assert r.status == PASS and r.witness == {"vertices": 6}


def test_scope_mismatch_is_skipped(z12):
    assert check("prime-lifting", z12, max_spec(z12)).status == "skipped"


def test_hypothesis_not_met_is_reported():
    M = Zmod(12)
    assert check("ag-artinian-vertex-totality", M).status == NOT_MET
    assert check("ag-artinian-vertex-totality", Zmod(12, 12)).status == PASS


def test_example_z12_quotient(z12):
    inst = Instance(z12, max_spec(z12))
    assert inst.Mbar.invariant_factors == (6,)
    assert check("disjoint-empty-iff-no-idempotents", z12, max_spec(z12)).status == PASS


# Documented counterexamples to the statements as written.

def test_embedding_fails_for_non_closed_subset():
    M = FinModule(Ring(0), (2, 6))
    subs = M.submodules()
    T = [subs[5], subs[6]]
    r = check("ag-quotient-embeds-in-zmax", M, T)
    assert r.status == FAIL and r.witness["T_closed"] is False
    assert check("ag-quotient-embeds-in-zmax-closed", M, T).status == NOT_MET


def test_socle_dichotomy_fails_on_simple_modules():
    assert check("ag-socle-dichotomy", Zmod(2)).status == FAIL
    assert check("ag-socle-dichotomy-nonsimple", Zmod(2)).status == NOT_MET
    assert check("ag-socle-dichotomy", Zmod(4)).status == PASS


def test_vertex_count_counts_whole_module():
    M = FinModule(Ring(6), (2, 6))
    r = check("ag-vertex-count-faithful", M)
    assert r.status == FAIL and r.witness["M_vertex"] is True
    assert r.witness["graph_vertices"] == r.witness["nonzero_proper"] + 1
    assert check("ag-vertex-count-faithful-proper", M).status == PASS


def test_corpus_is_deterministic_and_duplicate_free():
    c = Corpus(max_order=24)
    mods = c.modules()
    assert mods == Corpus(max_order=24).modules()
    assert len(set(mods)) == len(mods)
    groups = c.groups()
    assert (2, 2, 2) in groups and (24,) in groups and (2, 12) in groups
    assert all(len(g) <= 3 for g in groups)
    assert len(Corpus(max_order=8, max_rank=1, rings=("Z",)).modules()) == 7


def test_subset_enumeration_limit():
    c = Corpus(max_subset_base=2)
    assert c.subsets(Zmod(30)) == []
    assert len(c.subsets(Zmod(12))) == 3


def test_empty_corpus_gives_empty_report():
    report = run_suite(Corpus(include=()))
    assert report.results == [] and report.ok


def test_single_instance_corpus_matches_hand_computation():
    report = run_suite(Corpus(include=((0, (12,)),)), claims="corrected")
    assert report.ok
    assert report.summary["zmax-connected-diameter-girth"]["pass"] == 1


def test_failures_replay_in_isolation():
    report = run_suite(Corpus(max_order=24), claims="literal")
    assert report.failures
    seen = set()
    for r in report.failures:
        if r.claim in seen:
            continue
        seen.add(r.claim)
        again = replay(r)
        assert again.status == FAIL and again.witness == r.witness


def test_run_suite_unknown_claim():
    with pytest.raises(KeyError):
        run_suite(Corpus(max_order=4), claims=["bogus"])


def test_explorer_examples():
    doc = explore_members_as_vertices(Corpus(include=((0, (12,)), (0, (30,)))))
    rows = {(tuple(r["invariant_factors"]), tuple(r["T"])): r for r in doc["instances"]}
    assert rows[((12,), (3, 4))]["members_that_are_vertices"] == [3, 4]
    assert rows[((30,), (4, 5, 6))]["members_that_are_vertices"] == [4, 5, 6]
    assert doc["negative_count"] == 0
    # singleton subsets give empty graphs and are skipped
    assert doc["instances_skipped_empty_graph"] >= 5
