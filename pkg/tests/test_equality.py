import pytest
from hypothesis import given

from eec import terms as T
from eec.equality import (DistinctNormalForms, JudgementMismatch, Proved, Unknown, check_eq, parse_trace,
                          replay)
from eec.normalize import canonical_form, normalize
from eec.rules import RULE_IDS, Step
from eec.search import rewrite_candidates
from eec.syntax import parse_term
from eec.translate import involution_rhs, result_type, self_term
from eec.typecheck import check_judgement, Judgement
from strategies import judgements


def nf(j, src):
    return normalize(j(src)).term


def test_beta(j):
    assert nf(j, "|- (fun x:1 -> x) * : 1") == T.STAR


def test_pair_projection(j):
    assert nf(j, "|- fst (*, fun x:1 -> x) : 1") == T.STAR


def test_bang_beta(j):
    assert nf(j, "|- let !x be !* in !x : !1") == T.BangIntro(T.STAR)


def test_fuel_exhaustion_is_reported(j):
    r = normalize(j("|- (fun x:1 -> (fun y:1 -> y) x) * : 1"), fuel=1)
    assert r.exhausted


def test_twenty_four_rules():
    assert len(RULE_IDS) == 24
    assert len(set(RULE_IDS)) == 24


def test_beta_is_proved(j):
    v = check_eq(j("|- (fun x:1 -> x) * : 1"), j("|- * : 1"))
    assert isinstance(v, Proved)


def test_fun_eta_is_proved(j):
    v = check_eq(j("f:a -> a |- fun x:a -> f x : a -> a"), j("f:a -> a |- f : a -> a"))
    assert isinstance(v, Proved)
    assert any(s.rule == "V-funeta" for s in v.trace)


def test_alpha_variants(j):
    v = check_eq(j("|- fun x:a -> x : a -> a"), j("|- fun y:a -> y : a -> a"))
    assert isinstance(v, Proved) and v.trace == []


def test_top_against_its_double_translation(j):
    tt = j("|- top : I")
    r = result_type("^r")
    # by hand: top° = λ°k:^r. k, and since ^r° = I, top°° = λ°k:I. k
    twice = self_term(self_term(tt, r), r)
    assert twice.term == parse_term("lfun k:I -> k")
    v = check_eq(tt, involution_rhs(tt, r))
    assert isinstance(v, Proved)


def test_distinct_sequencing(j):
    a = j("f:I, g:I |- let top be f in let top be g in top : I")
    b = j("f:I, g:I |- let top be g in let top be f in top : I")
    assert isinstance(check_eq(a, b, fuel=200), DistinctNormalForms)


def test_distinct_constants_differ(j):
    v = check_eq(j("x:a, y:a |- x : a"), j("x:a, y:a |- y : a"))
    assert isinstance(v, DistinctNormalForms)


def test_unknown_when_fuel_runs_out(j):
    v = check_eq(j("|- (fun x:1 -> (fun y:1 -> y) x) * : 1"), j("|- * : 1"), fuel=1)
    assert isinstance(v, Unknown)


def test_mismatched_judgements_are_an_input_error(j):
    with pytest.raises(JudgementMismatch):
        check_eq(j("|- * : 1"), j("|- top : I"))


def test_trace_text_round_trip(j):
    a = j("f:a -> a |- fun x:a -> (fun y:a -> f y) x : a -> a")
    v = check_eq(a, j("f:a -> a |- f : a -> a"))
    lines = v.trace_text().splitlines()
    assert all(line.startswith("STEP ") for line in lines)
    parsed = parse_trace(v.trace_text())
    assert [(s.path, s.rule, s.direction) for s in v.trace] == parsed


def test_star_has_no_forward_candidates(j):
    fwd = [s for s, _ in rewrite_candidates(j("|- * : 1")) if s.direction == "fwd"]
    assert fwd == []


def test_projection_candidates(j):
    fwd = [(s, new) for s, new in rewrite_candidates(j("|- fst (*, *) : 1"))
           if s.direction == "fwd" and s.path == ()]
    assert "V-xbeta1" in [s.rule for s, _ in fwd]
    # V-1eta also fires, since every term of type 1 contracts to *; both land on *
    assert {new for _, new in fwd} == {T.STAR}


def test_let_eta_candidates(j):
    cands = rewrite_candidates(j("y:!a |- let !x be y in !x : !a"))
    kinds = {(s.rule, s.direction) for s, _ in cands}
    assert ("bang-leteta", "fwd") in kinds and ("bang-leteta", "bwd") in kinds


def test_candidates_are_sorted(j):
    cands = rewrite_candidates(j("x:a |- (fun y:a -> (y, fst (y, *))) x : a x a"))
    keys = [(s.path, s.rule, s.direction) for s, _ in cands]
    assert keys == sorted(keys)


@given(judgements(max_size=6))
def test_every_candidate_rechecks(tt):
    for step, new in rewrite_candidates(tt)[:12]:
        check_judgement(Judgement(tt.gamma, tt.stoup, new, tt.ty))


@given(judgements())
def test_normalizer_is_idempotent(tt):
    once = normalize(tt)
    assert not once.exhausted
    again = normalize(tt.with_term(once.term))
    assert T.alpha_eq(again.term, once.term)


@given(judgements())
def test_normal_form_rechecks_and_is_provably_equal(tt):
    c = canonical_form(tt)
    other = check_judgement(Judgement(tt.gamma, tt.stoup, c.term, tt.ty))
    v = check_eq(tt, other)
    assert isinstance(v, Proved)
    end = replay(tt, v.trace)
    assert end.term == other.term


def test_step_json_round_trip(j):
    v = check_eq(j("|- (fun x:1 -> x) * : 1"), j("|- * : 1"))
    for s in v.trace:
        back = Step.from_json(s.to_json())
        assert (back.path, back.rule, back.direction) == (s.path, s.rule, s.direction)
        assert back.bindings == s.bindings
