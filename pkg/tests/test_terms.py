from hypothesis import given

from eec import terms as T
from eec.syntax import parse_term
from eec.terms import (App, BangIntro, BangLet, CPair, Lam, PFst, SVar, Star, Var, alpha_eq, occurrences,
                       plug_stoup, shift, size, subst_stoup, subst_value)
from eec.types import CConst, UNIT
from strategies import judgements

STAR = Star()


def test_substitute_the_variable_itself():
    u = Lam(UNIT, Var(0, "y"), "y")
    assert subst_value(Var(0, "x"), u) == u


def test_substitution_leaves_unrelated_binder_alone():
    t = Lam(UNIT, Var(1, "x"), "y")
    assert subst_value(t, STAR) == Lam(UNIT, STAR, "y")


def test_substitution_under_bang():
    assert subst_value(BangIntro(Var(0, "x")), STAR) == BangIntro(STAR)


def test_stoup_substitution_examples():
    u = CPair(Var(0, "a"), Var(1, "b"))
    assert subst_stoup(SVar(0, "z"), u) == u
    assert subst_stoup(PFst(SVar(0, "z")), u) == PFst(u)
    t = BangLet(SVar(0, "z"), BangIntro(Var(0, "x")), "x")
    assert plug_stoup(t, BangIntro(STAR)) == BangLet(BangIntro(STAR), BangIntro(Var(0, "x")), "x")


def test_alpha_equivalence_ignores_names():
    assert alpha_eq(parse_term("fun x:1 -> x"), parse_term("fun y:1 -> y"))
    assert not alpha_eq(parse_term("fun x:1 -> x"), parse_term("fun x:1 -> *"))
    assert alpha_eq(parse_term("lfun z:^a -> z"), parse_term("lfun w:^a -> w"))


def test_free_names_point_past_binders():
    t = parse_term("fun x:1 -> f x", gamma=["f"])
    assert t == Lam(UNIT, App(Var(1, "f"), Var(0, "x"), "v"), "x")
    assert parse_term("z", stoup="z") == SVar(0)
    assert parse_term("lfun w:^c -> w") == T.LFun(CConst("c"), SVar(0))


@given(judgements(), judgements(), judgements())
def test_substitution_composes(a, b, c):
    t, u, v = a.term, b.term, c.term
    lhs = subst_value(subst_value(t, u, 0), v, 0)
    rhs = subst_value(subst_value(t, shift(v, 1), 1), subst_value(u, v, 0), 0)
    assert alpha_eq(lhs, rhs)


@given(judgements(), judgements())
def test_substitution_size_bound(a, b):
    t, u = a.term, b.term
    assert size(subst_value(t, u)) <= size(t) + occurrences(t, 0) * size(u)


@given(judgements())
def test_shift_round_trip(a):
    t = a.term
    assert shift(shift(t, 2, 1), -2, -1) == t
