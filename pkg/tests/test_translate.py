import warnings

import pytest
from hypothesis import given

from eec import stlc as S
from eec import terms as T
from eec.equality import Proved, check_eq
from eec.syntax import parse_term, parse_type
from eec.translate import (ConstantRegistry, ResultType, UnsupportedConfiguration, cbn_term, cbn_type, cbv_term,
                           cbv_type, fullness_witness, involution_rhs, iso_comp, iso_value, lincps_cbn_term,
                           lincps_cbn_type, lincps_cbv_term, lincps_cbv_type, result_type, self_cterm,
                           self_ctype, self_term, self_vterm, self_vtype)
from eec.types import (Arrow, Bang, CConst, Const, Copower, Fun, I, Lin, ONE, With, ZERO)
from strategies import judgements, results, stlc_judgements

a, one = S.SConst("a"), S.SUnit()
R = result_type("^r")
RI = result_type("I")


def test_cbv_types():
    assert cbv_type(S.SFun(a, one)) == Fun(cbv_type(a), Bang(cbv_type(one)))


def test_cbv_terms():
    assert cbv_term([a], S.SVarT(0)).term == T.BangIntro(T.Var(0))
    lam = cbv_term([], S.SLam(a, S.SVarT(0)))
    assert isinstance(lam.term, T.BangIntro) and isinstance(lam.term.arg, T.Lam)
    assert lam.term.arg.ty == Const("a")


def test_cbn_types():
    assert cbn_type(S.SProd(a, one)) == With(cbn_type(a), cbn_type(one))
    assert cbn_type(one) == ONE


def test_cbn_projection_is_with_projection():
    out = cbn_term([S.SProd(a, a)], S.SFst(S.SVarT(0)))
    assert out.term == T.PFst(T.Var(0))


def test_lincps_cbv_types():
    s, t = a, one
    want = Fun(lincps_cbv_type(s, R), Lin(Arrow(lincps_cbv_type(t, R), R.ty), R.ty))
    assert lincps_cbv_type(S.SFun(s, t), R) == want


def test_lincps_cbv_terms():
    x = lincps_cbv_term([a], S.SVarT(0), R)
    assert x.term == parse_term("lfun k:(a => ^r) -> k x", ["x"])
    star = lincps_cbv_term([], S.SStar(), R)
    assert star.term == parse_term("lfun k:(1 => ^r) -> k *")


def test_lincps_cbn_types():
    assert lincps_cbn_type(one, R) == ZERO
    s, t = a, one
    want = Copower(Lin(lincps_cbn_type(s, R), R.ty), lincps_cbn_type(t, R))
    assert lincps_cbn_type(S.SFun(s, t), R) == want


def test_lincps_cbn_variable_is_itself():
    assert lincps_cbn_term([a], S.SVarT(0), R).term == T.Var(0)


def test_self_types():
    assert self_ctype(Bang(Const("a")), R) == Arrow(self_vtype(Const("a"), R), R.ty)
    assert self_ctype(CConst("r"), R) == I
    assert self_ctype(I, R) == R.ty
    assert self_ctype(CConst("c"), R) == CConst("c")


def test_self_terms(j):
    assert self_vterm(j("|- top : I"), R).term == parse_term("lfun k:^r -> k")
    assert self_cterm(j("| z:^c |- z : ^c"), R).term == T.SVar(0)
    fst = self_cterm(j("| z:^c & ^d |- pfst z : ^c"), R)
    assert fst.stoup[0] == "k_z"
    assert fst.term == parse_term("inl[^c (+) ^d] k", stoup="k")


def test_iso_examples():
    phi1, _ = iso_value(parse_type("1"), R)
    assert phi1.term == parse_term("fun x:1 -> *")
    psi_c, psi_c_inv = iso_comp(CConst("c"), R)
    assert psi_c.term == parse_term("lfun z:^c -> z")
    _, inv = iso_comp(Bang(Const("a")), R)
    phi_a_inv = iso_value(Const("a"), R)[1].term
    want = T.LFun(Bang(Const("a")),
                  T.BangLet(T.SVar(0), T.CopowIntro(T.App(T.shift(phi_a_inv, 1), T.Var(0), "v"), T.TOP)))
    assert inv.term == want


def test_iso_types_line_up():
    for ty in [parse_type(s) for s in ("!a (*) ^c", "a -> 1", "^c -o I", "C0 (+) C1")]:
        if isinstance(ty, (CConst,)) or hasattr(ty, "comp") or ty.__class__.__name__ in ("Copower", "Plus"):
            f, g = iso_comp(ty, R)
            assert f.ty == Lin(f.ty.dom, ty) and g.ty == Lin(ty, f.ty.dom)
        else:
            f, g = iso_value(ty, R)
            assert f.ty.cod == ty and g.ty.dom == ty


def test_other_result_type_is_rejected_for_iso_and_witness(j):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        other = result_type("!a")
    assert other.variant == "Other"
    with pytest.raises(UnsupportedConfiguration):
        iso_value(parse_type("1"), other)
    tt = j("|- * : 1")
    with pytest.raises(UnsupportedConfiguration):
        fullness_witness(self_term(tt, other), tt.gamma, tt.ty, other)


def test_other_result_type_still_translates(j):
    with pytest.warns(UserWarning):
        other = result_type("!a")
    out = self_vterm(j("|- top : I"), other)
    assert out.ty == Lin(other.ty, other.ty)


def test_result_type_variants():
    assert ResultType.const("r").variant == "CompConst"
    assert ResultType.tensor_unit().variant == "TensorUnit"


def test_registry_keeps_namespaces_apart():
    reg = ConstantRegistry({"a": ("a", "c")})
    assert reg.comp("a") == "c"
    assert cbn_type(a, reg) == CConst("c")


def test_witness_for_constant(j):
    tt = j("x:a |- x : a")
    w = fullness_witness(self_term(tt, R), tt.gamma, tt.ty, R)
    # φ_a applied to t with φ_a⁻¹ substituted for x; both are identities on a
    assert w.term == parse_term("(fun y:a -> y) ((fun y:a -> y) x)", ["x"])


def test_witness_for_bang_star(j):
    s = j("|- !* : !1")
    t = self_term(s, R)
    u = fullness_witness(t, s.gamma, s.ty, R)
    assert isinstance(check_eq(self_term(u, R), t), Proved)


def test_witness_with_stoup(j):
    s = j("x:a | z:!a |- let !y be z in !(x, y) : !(a x a)")
    t = self_term(s, RI)
    u = fullness_witness(t, s.gamma, s.ty, RI, stoup=s.stoup)
    assert u.stoup == s.stoup
    assert isinstance(check_eq(self_term(u, RI), t), Proved)


@given(stlc_judgements(), results)
def test_recovering_types(jd, r):
    r = result_type(r)
    assert lincps_cbv_type(jd.ty, r) == self_vtype(cbv_type(jd.ty), r)
    assert lincps_cbn_type(jd.ty, r) == self_ctype(cbn_type(jd.ty), r)


@given(stlc_judgements(max_size=6), results)
def test_recovering_terms(jd, r):
    r = result_type(r)
    th, names = list(jd.theta), list(jd.names)
    v = check_eq(lincps_cbv_term(th, jd.term, r, names), self_vterm(cbv_term(th, jd.term, names), r))
    assert isinstance(v, Proved)


@given(judgements(max_size=6), results)
def test_self_translation_is_well_typed(tt, r):
    r = result_type(r)
    out = self_term(tt, r)
    want = self_vtype(tt.ty, r) if tt.stoup is None else self_ctype(tt.stoup[1], r)
    assert out.ty == want or out.ty == getattr(want, "comp", None)


@given(judgements(max_size=6), results)
def test_involution(tt, r):
    r = result_type(r)
    assert isinstance(check_eq(tt, involution_rhs(tt, r)), Proved)
