import json

import pytest

from lexmatroid.enumeration import Corpus, based_matroids, enumerate_up_to
from lexmatroid.matroid import new_matroid, to_mask
from lexmatroid.oseq import check_conditions
from lexmatroid.constructor import construct
from lexmatroid.shelling import BasedMatroid
from lexmatroid.verifier import (
    VerificationReport,
    rank3_pair_clause,
    rank4_pair_clause,
    rank4_triple_clause,
    run_full_verification,
    verify_corpus,
    verify_lemma_rank3,
    verify_lemma_rank4_edges,
    verify_lemma_rank4_faces,
    verify_structure,
)
from lexmatroid.gamma import label_family

from test_constructor import TIE_BASES


@pytest.fixture(scope="module")
def small3():
    return based_matroids(enumerate_up_to(3, 5))


def single(bm, rank):
    return Corpus(rank, bm.matroid.n, [bm.matroid], [bm])


def test_fano_lemma_clean(fano_bm):
    report = verify_lemma_rank3(single(fano_bm, 3))
    assert report.clean and report.checks


def test_dual_fano_lemmas(dual_fano_bm):
    fam = label_family(dual_fano_bm.matroid, dual_fano_bm.base)
    assert rank4_pair_clause(fam, 5, 6) == ("5", True)
    assert rank4_triple_clause(fam, 5, 6, 7) == ("2", True)
    assert verify_lemma_rank4_edges(single(dual_fano_bm, 4)).clean
    assert verify_lemma_rank4_faces(single(dual_fano_bm, 4)).clean


def test_cone_breaks_pair_clause_one():
    m = new_matroid(5, [(1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 5)])
    bm = BasedMatroid.natural(m)
    fam = label_family(m, bm.base)
    assert rank3_pair_clause(bm, fam, 4, 5) == ("1", False)
    report = verify_lemma_rank3(single(bm, 3))
    assert report.checks["rank-3 pairs clause 1"].failed == 1
    assert "rank-3 pairs clause 1 (non-cone)" not in report.checks


def test_structure_small_corpus(small3):
    report = verify_structure(small3)
    assert report.clean
    assert {"cone", "decomposition", "U=V", "going-up", "h from f"} <= set(report.checks)


def test_verify_corpus_small(small3):
    report = verify_corpus(small3, jobs=1)
    assert report.clean
    assert report.counts["signatures"] == len(small3.based)
    assert report.checks["purity"].passed == len(small3.based)


def test_parallel_matches_serial(small3):
    a = verify_corpus(small3, jobs=1).to_json()
    b = verify_corpus(small3, jobs=2).to_json()
    a.pop("duration"), b.pop("duration")
    assert a == b


def test_witnesses_replay():
    m = new_matroid(7, TIE_BASES)
    bm = BasedMatroid(m, to_mask([1, 3, 4, 5]), (6, 7, 2))
    report = verify_corpus(single(bm, 4), jobs=1)
    assert report.checks["purity"].failed == 1
    w = report.checks["purity"].witnesses[0]
    replay = BasedMatroid(new_matroid(w["n"], w["bases"]), to_mask(w["base"]), tuple(w["order"]))
    assert "purity" in check_conditions(replay, construct(replay)).failures()
    json.loads(report.dumps())


def test_rank5_reports_error():
    report = run_full_verification(5)
    assert not report.clean
    assert report.errors and "RankUnsupported" in report.errors[0]


def test_report_summary_lines():
    r = VerificationReport("demo")
    r.counts["classes"] = 3
    r.record("x", True)
    r.record("x", False, {"n": 1})
    text = r.summary()
    assert "classes: 3" in text and "x: 1 passed, 1 failed" in text and "failures: 1" in text
