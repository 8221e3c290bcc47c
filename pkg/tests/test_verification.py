import pytest

from app.services.verification import (
    CLASSIFICATION_TABLE, FULL, QUICK, bijection_round_trip, bmw_relations, closed_forms, counting_identities,
    iter_suites, lickorish_identity, oracle_agreement, run_suite, suites, verify_all,
)


def test_suite_catalogue():
    names = [name for name, _ in suites(quick=True)]
    assert len(names) == 10
    assert names[0] == "bijection round trip"
    assert names[-1] == "infinite images"
    assert len(CLASSIFICATION_TABLE) == 20


@pytest.mark.parametrize(
    "check",
    [
        lambda: bijection_round_trip(4),
        lambda: counting_identities(6),
        lambda: closed_forms(10),
        lambda: oracle_agreement(4),
        lambda: bmw_relations(2),
        lambda: lickorish_identity(4, 3, 4),
    ],
)
def test_small_suites_pass(check):
    passed, detail = check()
    assert passed, detail


def test_markov_moves_cover_the_corpus_and_stabilize_past_max_strands():
    passed, detail = lickorish_identity(4, 3, 6)
    assert passed, detail
    assert "6 words invariant" in detail
    assert FULL.markov_words >= 100
    assert QUICK.markov_words <= QUICK.lickorish_words + 2


def test_run_suite_reports_failures():
    result = run_suite(99, "always fails", lambda: (False, "nope"))
    assert not result.passed
    assert result.detail == "nope"


def test_only_filter():
    results = list(iter_suites(quick=True, only=[3]))
    assert [r.index for r in results] == [3]


def test_verify_all_report():
    report = verify_all(quick=True, only=[1, 3])
    assert report.quick
    assert report.passed
    assert [s.name for s in report.suites] == ["bijection round trip", "closed forms"]
    assert QUICK.bijection_m < 9


@pytest.mark.slow
def test_quick_acceptance_run():
    report = verify_all(quick=True)
    failed = [f"{s.index} {s.name}: {s.detail}" for s in report.suites if not s.passed]
    assert not failed
