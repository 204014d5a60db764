import pytest
from hypothesis import given, strategies as st

from eec import stlc as S
from eec.suites import load_corpus
from eec.syntax import parse_judgement, parse_term
from eec.typecheck import (TypingError, check_comp, check_judgement, check_value, shift_stoup, weaken)
from eec.types import Bang, CConst, Const, Embed, Fun, I, UNIT
from strategies import judgements


def test_identity_on_unit():
    tt = check_value([], parse_term("fun x:1 -> x"))
    assert tt.ty == Fun(UNIT, UNIT)


def test_top_has_type_i(j):
    assert j("|- top : I").ty == I


def test_value_lambda_cannot_see_the_stoup():
    with pytest.raises(TypingError) as e:
        check_comp([("x", Const("a"))], ("z", CConst("a")), parse_term("fun y:1 -> z", ["x"], "z"))
    assert e.value.kind == "stoup-misuse"


def test_stoup_variable(j):
    assert j("x:a | z:^c |- z : ^c").ty == CConst("c")


def test_bang_let_of_stoup(j):
    assert j("| z:!1 |- let !x be z in !x : !1").ty == Bang(UNIT)


def test_bang_of_stoup_is_rejected():
    with pytest.raises(TypingError) as e:
        check_judgement(parse_judgement("| z:^a |- !z : !(^a)"))
    assert e.value.kind == "stoup-misuse"


def test_elaboration_picks_application_kind(j):
    kinds = {
        "f:a -> a, x:a |- f x : a": "v",
        "f:a => ^c, x:a |- f x : ^c": "c",
        "f:^c -o ^d | z:^c |- f z : ^d": "l",
    }
    for src, kind in kinds.items():
        assert j(src).term.kind == kind


def test_type_is_checked_against_annotation():
    with pytest.raises(TypingError) as e:
        check_judgement(parse_judgement("|- * : I"))
    assert e.value.kind == "mismatch"


def test_error_reports_path():
    with pytest.raises(TypingError) as e:
        check_judgement(parse_judgement("|- (*, fst *) : 1 x 1"))
    assert e.value.kind == "mismatch"
    assert list(e.value.path) == [1, 0]   # the argument of fst


@pytest.mark.parametrize("name, src", load_corpus("ill"))
def test_ill_typed_corpus(name, src):
    expect = src.splitlines()[0].split("expect:")[1].strip()
    with pytest.raises(TypingError) as e:
        check_judgement(parse_judgement(src))
    assert e.value.kind == expect


def test_ill_typed_corpus_size():
    names = [n for n, _ in load_corpus("ill")]
    assert len(names) >= 15
    assert {"bang_of_stoup", "iterated_lin"} <= set(names)


@pytest.mark.parametrize("name, src", load_corpus())
def test_curated_corpus_checks(name, src):
    check_judgement(parse_judgement(src))


def test_stlc_checker():
    a = S.SConst("a")
    assert S.check_stlc([a], S.SLam(a, S.SVarT(0))) == S.SFun(a, a)
    one = S.SUnit()
    f = S.SFun(one, one)
    k = S.SLam(one, S.SLam(one, S.SStar()))
    m = S.SApp(S.SApp(k, S.SApp(S.SVarT(1), S.SStar())), S.SApp(S.SVarT(0), S.SStar()))
    assert S.check_stlc([f, f], m) == one
    with pytest.raises(S.StlcTypeError):
        S.check_stlc([], S.SFst(S.SStar()))


def test_shift_moves_stoup_into_context(j):
    moved = shift_stoup(j("| z:^c |- z : ^c"))
    assert moved.stoup is None and moved.gamma == (("z", Embed(CConst("c"))),)
    moved = shift_stoup(j("| z:!1 |- let !x be z in !x : !1"))
    assert moved.ty == Bang(UNIT)


def test_weakening_example(j):
    tt = j("x:a |- x : a")
    w = weaken(tt, 0, "y", UNIT)
    assert w.gamma == (("y", UNIT), ("x", Const("a")))


@given(judgements())
def test_generated_terms_recheck(tt):
    again = check_judgement(parse_judgement(str(tt)))
    assert again.ty == tt.ty


@given(judgements(), st.integers(0, 5))
def test_weakening_preserves_typing(tt, k):
    w = weaken(tt, k % (len(tt.gamma) + 1), "fresh_", UNIT)
    assert w.ty == tt.ty


@given(judgements(sort="comp"))
def test_shift_preserves_typing(tt):
    assert shift_stoup(tt).stoup is None
