import json

import pytest

from eec.suites import SUITES, SuiteReport, UnknownSuite, all_types_upto, axiom_corpus, load_corpus, run_suite
from eec.rules import RULE_IDS
from eec.typecheck import check_judgement
from eec.syntax import parse_judgement


def test_suite_names():
    assert len(SUITES) == 10 and "iso" in SUITES and "counterexample" in SUITES


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("no-such-suite")


def test_reports_are_reproducible():
    a = run_suite("axioms", seed=4, per_rule=2)
    b = run_suite("axioms", seed=4, per_rule=2)
    assert a.to_text(verbose=True) == b.to_text(verbose=True)
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())
    assert "wall_time" not in a.to_json() and "wall_time" in a.to_json(timing=True)


def test_unknown_is_counted_apart_from_failure():
    rep = SuiteReport("x", max_unknown=1)
    rep.add("a", "pass")
    rep.add("b", "unknown", "fuel")
    assert rep.totals == {"pass": 1, "fail": 0, "unknown": 1}
    assert rep.ok
    rep.add("c", "unknown")
    assert not rep.ok
    rep = SuiteReport("y", max_unknown=0.02)
    for i in range(100):
        rep.add(str(i), "pass")
    assert rep.unknown_allowed == 2
    rep.add("bad", "fail")
    assert not rep.ok


def test_failed_cases_listed_in_text():
    rep = SuiteReport("x")
    rep.add("good", "pass")
    rep.add("bad", "fail", "why")
    text = rep.to_text()
    assert "FAILED" in text and "[1] fail bad: why" in text and "good" not in text


def test_empty_involution_corpus_passes_vacuously():
    rep = run_suite("involution", corpus=[])
    assert rep.ok and rep.cases == [] and rep.notes == ["empty corpus"]


def test_axiom_corpus_covers_every_rule():
    corpus = axiom_corpus(seed=1, per_rule=1)
    assert {name.split(" #")[0] for name, _, _ in corpus} == set(RULE_IDS)
    for _, lhs, rhs in corpus:
        assert lhs.ty == rhs.ty and lhs.stoup == rhs.stoup


def test_shipped_corpora():
    good = load_corpus()
    assert len(good) >= 40
    for _, src in good:
        check_judgement(parse_judgement(src))
    assert len(load_corpus("ill")) >= 15


def test_type_enumeration_sizes():
    # value, embedded computation and computation types per size: 2+4+4, 0+6+6, 88+86+86
    assert len(all_types_upto(1)) == 10
    assert len(all_types_upto(3)) == 10 + 12 + 260


def test_small_suites_pass():
    assert run_suite("typing", count=30).ok
    assert run_suite("iso", max_type_size=2).ok
    assert run_suite("fullness", count=3).ok


def test_lincps_soundness_small():
    rep = run_suite("lincps-soundness", count=6)
    assert rep.ok and len(rep.cases) >= 6
