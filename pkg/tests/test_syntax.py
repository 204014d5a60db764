import json

import pytest
from hypothesis import given

from eec import terms as T
from eec.syntax import (ParseError, judgement_from_json, judgement_to_json, parse_judgement, parse_term,
                        parse_type, show_judgement, show_term, show_type, term_from_json, term_to_json,
                        type_from_json)
from eec.typecheck import Judgement, TypingError
from eec.types import (Arrow, Bang, CConst, Const, Copower, Fun, I, Lin, ONE, Plus, Prod, UNIT, With, ZERO)
from strategies import judgements

A, C = Const("a"), CConst("c")


@pytest.mark.parametrize("src, ty", [
    ("1", UNIT),
    ("a x a", Prod(A, A)),
    ("a -> a -> a", Fun(A, Fun(A, A))),
    ("^c -o ^c", Lin(C, C)),
    ("C1", ONE),
    ("^c & ^c", With(C, C)),
    ("a => ^c", Arrow(A, C)),
    ("I", I),
    ("!a", Bang(A)),
    ("!a (*) ^c", Copower(A, C)),
    ("C0", ZERO),
    ("^c (+) C0", Plus(C, ZERO)),
])
def test_type_grammar(src, ty):
    assert parse_type(src) == ty
    assert parse_type(show_type(ty)) == ty


@pytest.mark.parametrize("src", [
    "*", "(*, *)", "fst (*, *)", "snd (*, *)", "fun x:1 -> x", "cstar", "<cstar, cstar>",
    "pfst <cstar, cstar>", "psnd <cstar, cstar>", "cfun x:1 -> cstar", "top",
    "let top be top in top", "!*", "let !x be !* in !x", "!* (*) top",
    "let !x (*) y be !* (*) top in y", "absurd[^c] z", "inl[I (+) C0] top", "inr[C0 (+) I] top",
    "case inl[I (+) I] top of inl x -> x | inr y -> y", "lfun z:^c -> z", "(fun x:1 -> x) *",
])
def test_every_term_former_prints_back(src):
    stoup = "z" if "absurd" in src else None
    t = parse_term(src, stoup=stoup)
    assert parse_term(show_term(t, stoup=stoup), stoup=stoup) == t


def test_judgement_shapes():
    j = parse_judgement("x:a, f:a -> 1 | z:!a |- let !y be z in !(f y) : !1")
    assert [n for n, _ in j.gamma] == ["x", "f"]
    assert j.stoup == ("z", Bang(A))
    assert j.ty == Bang(UNIT)
    assert parse_judgement("|- top : I").stoup is None


def test_stoup_requires_computation_type():
    with pytest.raises(TypingError) as e:
        parse_judgement("| z:!a |- z : a")
    assert e.value.kind == "sort-error"


@pytest.mark.parametrize("bad", ["fun x:1 ->", "(*, *", "let !x be in x", "|- * :", "* * )"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_judgement(bad) if "|-" in bad else parse_term(bad)


def test_colliding_hints_get_ticks():
    t = T.Lam(UNIT, T.Lam(UNIT, T.Var(1, "x"), "x"), "x")
    assert show_term(t) == "fun x:1 -> fun x1:1 -> x"


def test_json_node_schema():
    obj = term_to_json(T.Pair(T.Star(), T.Var(0, "x")))
    assert obj["node"] == "Pair"
    assert [a["node"] for a in obj["args"]] == ["Star", "Var"]
    assert term_from_json(json.loads(json.dumps(obj))) == T.Pair(T.Star(), T.Var(0))


def test_json_rejects_sort_confusion():
    bad = {"node": "Lin", "args": [{"node": "Unit", "args": []}, {"node": "TensorUnit", "args": []}]}
    with pytest.raises((ParseError, TypingError, TypeError)):
        type_from_json(bad)


@given(judgements())
def test_print_then_parse_is_identity(tt):
    j = Judgement(tt.gamma, tt.stoup, tt.term, tt.ty)
    back = parse_judgement(show_judgement(j))
    assert T.alpha_eq(back.subject, tt.term)
    assert back.gamma == tt.gamma and back.stoup == tt.stoup and back.ty == tt.ty


@given(judgements())
def test_json_round_trip(tt):
    j = Judgement(tt.gamma, tt.stoup, tt.term, tt.ty)
    back = judgement_from_json(json.loads(json.dumps(judgement_to_json(j))))
    assert back == j
