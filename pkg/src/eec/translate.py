"""Translations into EEC and the linear-use CPS self-translation of EEC.

All translations work on nameless terms, so the outputs never depend on the
names in the input context.  Every public function returns a re-checked
``TypedTerm`` at the judgement the translation promises.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

from . import terms as T
from .stlc import SApp, SConst, SFst, SFun, SLam, SPair, SProd, SSnd, SStar, SType, SUnit, SVarT, STerm, check_stlc
from .terms import App, SVar, Term, Var
from .typecheck import Ctx, TypedTerm, check_comp, check_value, child_ctx, ctx_of, infer_type
from .types import (Arrow, Bang, CConst, CompType, Const, Copower, Embed, Fun, I, Lin, ONE, Plus, Prod,
                    TensorUnit, Type, UNIT, Unit, ValueType, With, WithUnit, ZERO, Zero, as_value, unembed)

K = SVar(0, "k")


class UnsupportedConfiguration(ValueError):
    pass


@dataclass(frozen=True)
class ResultType:
    """The answer type R of the CPS translations."""
    ty: CompType

    @classmethod
    def const(cls, name: str) -> "ResultType":
        return cls(CConst(name))

    @classmethod
    def tensor_unit(cls) -> "ResultType":
        return cls(I)

    @property
    def variant(self) -> str:
        if isinstance(self.ty, CConst):
            return "CompConst"
        if isinstance(self.ty, TensorUnit):
            return "TensorUnit"
        return "Other"

    @property
    def theorem_grade(self) -> bool:
        return self.variant != "Other"

    def require_theorem_grade(self, what: str) -> None:
        if not self.theorem_grade:
            raise UnsupportedConfiguration(
                f"{what} needs R to be a computation constant or I, not {self.ty}")

    def __str__(self) -> str:
        return str(self.ty)


def result_type(ty) -> ResultType:
    """Accept a ``ResultType``, a computation type, or its surface syntax."""
    if isinstance(ty, ResultType):
        return ty
    if isinstance(ty, str):
        from .syntax import parse_type
        ty = parse_type(ty)
    ty = unembed(ty)
    if not isinstance(ty, CompType):
        raise UnsupportedConfiguration(f"result type must be a computation type, got {ty}")
    r = ResultType(ty)
    if not r.theorem_grade:
        warnings.warn(f"result type {ty} is outside the range where the involution and "
                      "fullness results apply; iso and witness operations are disabled",
                      stacklevel=2)
    return r


@dataclass(frozen=True)
class ConstantRegistry:
    """Pairs each simple-type constant with a value constant and a computation constant."""
    pairs: dict = field(default_factory=dict)

    def value(self, name: str) -> str:
        return self.pairs.get(name, (name, name))[0]

    def comp(self, name: str) -> str:
        return self.pairs.get(name, (name, name))[1]

    def validate(self, names=()) -> None:
        names = set(names) | set(self.pairs)
        vs = [self.value(n) for n in names]
        cs = [self.comp(n) for n in names]
        if len(set(vs)) != len(vs) or len(set(cs)) != len(cs):
            raise ValueError("constant pairing is not injective")

    def avoids(self, r: ResultType, names) -> bool:
        """Whether R lies outside the computation constants used for ``names``."""
        return not (isinstance(r.ty, CConst) and any(self.comp(n) == r.ty.name for n in names))


DEFAULT_REGISTRY = ConstantRegistry()


# --- call-by-value and call-by-name into EEC ------------------------------------

def cbv_type(s: SType, reg: ConstantRegistry = DEFAULT_REGISTRY) -> ValueType:
    match s:
        case SConst(n):
            return Const(reg.value(n))
        case SUnit():
            return UNIT
        case SProd(a, b):
            return Prod(cbv_type(a, reg), cbv_type(b, reg))
        case SFun(a, b):
            return Fun(cbv_type(a, reg), Embed(Bang(cbv_type(b, reg))))
    raise TypeError(f"not a simple type: {s!r}")


def cbn_type(s: SType, reg: ConstantRegistry = DEFAULT_REGISTRY) -> CompType:
    match s:
        case SConst(n):
            return CConst(reg.comp(n))
        case SUnit():
            return ONE
        case SProd(a, b):
            return With(cbn_type(a, reg), cbn_type(b, reg))
        case SFun(a, b):
            return Arrow(Embed(cbn_type(a, reg)), cbn_type(b, reg))
    raise TypeError(f"not a simple type: {s!r}")


def _cbv(m: STerm, theta: list, reg) -> Term:
    match m:
        case SVarT(i, n):
            return T.BangIntro(Var(i, n))
        case SStar():
            return T.BangIntro(T.STAR)
        case SPair(l, r):
            body = T.BangLet(T.shift(_cbv(r, theta, reg), 1), T.BangIntro(T.Pair(Var(1, "x"), Var(0, "y"))), "y")
            return T.BangLet(_cbv(l, theta, reg), body, "x")
        case SFst(a) | SSnd(a):
            proj = T.Fst if isinstance(m, SFst) else T.Snd
            return T.BangLet(_cbv(a, theta, reg), T.BangIntro(proj(Var(0, "z"))), "z")
        case SLam(ty, body, n):
            return T.BangIntro(T.Lam(cbv_type(ty, reg), _cbv(body, [ty] + theta, reg), n))
        case SApp(f, a):
            inner = T.BangLet(T.shift(_cbv(a, theta, reg), 1), App(Var(1, "f"), Var(0, "x"), "v"), "x")
            return T.BangLet(_cbv(f, theta, reg), inner, "f")
    raise TypeError(f"not a simple term: {m!r}")


def _cbn(m: STerm, theta: list, reg) -> Term:
    match m:
        case SVarT(i, n):
            return Var(i, n)
        case SStar():
            return T.CSTAR
        case SPair(l, r):
            return T.CPair(_cbn(l, theta, reg), _cbn(r, theta, reg))
        case SFst(a):
            return T.PFst(_cbn(a, theta, reg))
        case SSnd(a):
            return T.PSnd(_cbn(a, theta, reg))
        case SLam(ty, body, n):
            return T.CLam(Embed(cbn_type(ty, reg)), _cbn(body, [ty] + theta, reg), n)
        case SApp(f, a):
            return App(_cbn(f, theta, reg), _cbn(a, theta, reg), "c")
    raise TypeError(f"not a simple term: {m!r}")


def _stlc_gamma(theta, names, fn) -> tuple:
    """``theta`` is innermost-first; judgements want outermost-first (name, type) pairs."""
    names = names or [f"x{i}" for i in range(len(theta))]
    return tuple((n, fn(s)) for n, s in zip(reversed(names), reversed(theta)))


def cbv_term(theta: list, m: STerm, names=None, reg: ConstantRegistry = DEFAULT_REGISTRY) -> TypedTerm:
    """``Θ ⊢ M : τ`` becomes ``Θ^v ⊢ M^v : !τ^v``.  ``theta``/``names`` are innermost-first."""
    tau = check_stlc(theta, m)
    gamma = _stlc_gamma(theta, names, lambda s: cbv_type(s, reg))
    return check_value(gamma, _cbv(m, theta, reg), Embed(Bang(cbv_type(tau, reg))))


def cbn_term(theta: list, m: STerm, names=None, reg: ConstantRegistry = DEFAULT_REGISTRY) -> TypedTerm:
    tau = check_stlc(theta, m)
    gamma = _stlc_gamma(theta, names, lambda s: Embed(cbn_type(s, reg)))
    return check_value(gamma, _cbn(m, theta, reg), Embed(cbn_type(tau, reg)))


# --- linear-use CPS translations of the simply-typed calculus ---------------------

def lincps_cbv_type(s: SType, r, reg: ConstantRegistry = DEFAULT_REGISTRY) -> ValueType:
    r = result_type(r)
    match s:
        case SConst(n):
            return Const(reg.value(n))
        case SUnit():
            return UNIT
        case SProd(a, b):
            return Prod(lincps_cbv_type(a, r, reg), lincps_cbv_type(b, r, reg))
        case SFun(a, b):
            return Fun(lincps_cbv_type(a, r, reg), _cbv_answer(lincps_cbv_type(b, r, reg), r))
    raise TypeError(f"not a simple type: {s!r}")


def _cbv_answer(v: ValueType, r: ResultType) -> Lin:
    return Lin(Arrow(v, r.ty), r.ty)


def lincps_cbn_type(s: SType, r, reg: ConstantRegistry = DEFAULT_REGISTRY) -> CompType:
    r = result_type(r)
    match s:
        case SConst(n):
            return CConst(reg.comp(n))
        case SUnit():
            return ZERO
        case SProd(a, b):
            return Plus(lincps_cbn_type(a, r, reg), lincps_cbn_type(b, r, reg))
        case SFun(a, b):
            return Copower(Lin(lincps_cbn_type(a, r, reg), r.ty), lincps_cbn_type(b, r, reg))
    raise TypeError(f"not a simple type: {s!r}")


def _lcbv(m: STerm, theta: list, r: ResultType, reg) -> Term:
    ty = lambda s: lincps_cbv_type(s, r, reg)
    tau = check_stlc(theta, m)
    kty = Arrow(ty(tau), r.ty)
    match m:
        case SVarT(i, n):
            body = App(K, Var(i, n), "c")
        case SStar():
            body = App(K, T.STAR, "c")
        case SPair(a, b):
            sa, sb = check_stlc(theta, a), check_stlc(theta, b)
            inner = App(T.shift(_lcbv(b, theta, r, reg), 1),
                        T.CLam(ty(sb), App(K, T.Pair(Var(1, "x"), Var(0, "y")), "c"), "y"), "l")
            body = App(_lcbv(a, theta, r, reg), T.CLam(ty(sa), inner, "x"), "l")
        case SFst(a) | SSnd(a):
            proj = T.Fst if isinstance(m, SFst) else T.Snd
            body = App(_lcbv(a, theta, r, reg),
                       T.CLam(ty(check_stlc(theta, a)), App(K, proj(Var(0, "z")), "c"), "z"), "l")
        case SLam(s, b, n):
            body = App(K, T.Lam(ty(s), _lcbv(b, [s] + theta, r, reg), n), "c")
        case SApp(f, a):
            fty, aty = check_stlc(theta, f), check_stlc(theta, a)
            call = App(App(Var(1, "f"), Var(0, "x"), "v"), K, "l")
            inner = App(T.shift(_lcbv(a, theta, r, reg), 1), T.CLam(ty(aty), call, "x"), "l")
            body = App(_lcbv(f, theta, r, reg), T.CLam(ty(fty), inner, "f"), "l")
        case _:
            raise TypeError(f"not a simple term: {m!r}")
    return T.LFun(kty, body, "k")


def _lcbn(m: STerm, theta: list, r: ResultType, reg) -> Term:
    ty = lambda s: lincps_cbn_type(s, r, reg)
    match m:
        case SVarT(i, n):
            return Var(i, n)
        case SStar():
            return T.LFun(ZERO, T.Absurd(r.ty, K), "k")
        case SPair(a, b):
            sty = ty(check_stlc(theta, m))
            body = T.Case(K, App(_lcbn(a, theta, r, reg), K, "l"), App(_lcbn(b, theta, r, reg), K, "l"))
            return T.LFun(sty, body, "k")
        case SFst(a) | SSnd(a):
            pty = ty(check_stlc(theta, a))
            inj = T.Inl if isinstance(m, SFst) else T.Inr
            part = pty.left if isinstance(m, SFst) else pty.right
            return T.LFun(part, App(_lcbn(a, theta, r, reg), inj(pty, K), "l"), "k")
        case SLam(s, b, n):
            fty = ty(check_stlc(theta, m))
            body = T.CopowLet(K, App(_lcbn(b, [s] + theta, r, reg), SVar(0, "h"), "l"), n, "h")
            return T.LFun(fty, body, "k")
        case SApp(f, a):
            tau = ty(check_stlc(theta, m))
            arg = T.CopowIntro(_lcbn(a, theta, r, reg), K)
            return T.LFun(tau, App(_lcbn(f, theta, r, reg), arg, "l"), "k")
    raise TypeError(f"not a simple term: {m!r}")


def lincps_cbv_term(theta: list, m: STerm, r, names=None,
                    reg: ConstantRegistry = DEFAULT_REGISTRY) -> TypedTerm:
    r = result_type(r)
    tau = check_stlc(theta, m)
    gamma = _stlc_gamma(theta, names, lambda s: lincps_cbv_type(s, r, reg))
    return check_value(gamma, _lcbv(m, theta, r, reg), _cbv_answer(lincps_cbv_type(tau, r, reg), r))


def lincps_cbn_term(theta: list, m: STerm, r, names=None,
                    reg: ConstantRegistry = DEFAULT_REGISTRY) -> TypedTerm:
    r = result_type(r)
    tau = check_stlc(theta, m)
    gamma = _stlc_gamma(theta, names, lambda s: Lin(lincps_cbn_type(s, r, reg), r.ty))
    return check_value(gamma, _lcbn(m, theta, r, reg), Lin(lincps_cbn_type(tau, r, reg), r.ty))


# --- the self-translation ------------------------------------------------------------

def self_vtype(a: Type, r) -> ValueType:
    """A° for a value type (a bare computation type is read as embedded)."""
    r = result_type(r)
    match a:
        case Const() | Unit():
            return a
        case Prod(x, y):
            return Prod(self_vtype(x, r), self_vtype(y, r))
        case Fun(x, y):
            return Fun(self_vtype(x, r), self_vtype(y, r))
        case Embed(c):
            return Lin(self_ctype(c, r), r.ty)
        case Lin(x, y):
            return Lin(self_ctype(y, r), self_ctype(x, r))
        case CompType():
            return Lin(self_ctype(a, r), r.ty)
    raise TypeError(f"not a value type: {a!r}")


def self_ctype(c: CompType, r) -> CompType:
    """Ā*; note the contravariance: negative connectives become positive ones and back."""
    r = result_type(r)
    match unembed(c):
        case CConst(n):
            return I if r.variant == "CompConst" and r.ty.name == n else CConst(n)
        case WithUnit():
            return ZERO
        case With(x, y):
            return Plus(self_ctype(x, r), self_ctype(y, r))
        case Arrow(a, b):
            return Copower(self_vtype(a, r), self_ctype(b, r))
        case TensorUnit():
            return r.ty
        case Bang(a):
            return Arrow(self_vtype(a, r), r.ty)
        case Copower(a, b):
            return Arrow(self_vtype(a, r), self_ctype(b, r))
        case Zero():
            return ONE
        case Plus(x, y):
            return With(self_ctype(x, r), self_ctype(y, r))
    raise TypeError(f"not a computation type: {c!r}")


class _Self:
    def __init__(self, r: ResultType):
        self.r = r

    def vty(self, a):
        return self_vtype(a, self.r)

    def cty(self, c):
        return self_ctype(c, self.r)

    def go(self, t: Term, ctx: Ctx, i: int) -> Term:
        c = T.children(t)[i]
        cctx = child_ctx(t, i, ctx)
        return self.comp(c, cctx) if cctx.live else self.value(c, cctx)

    def ty_of(self, t: Term, i: int, ctx: Ctx):
        return infer_type(T.children(t)[i], child_ctx(t, i, ctx))

    def value(self, t: Term, ctx: Ctx) -> Term:
        """Γ ⊢ t : A  gives  Γ° ⊢ t° : A°."""
        go = lambda i: self.go(t, ctx, i)
        match t:
            case T.Var() | T.Star():
                return t
            case T.Pair():
                return T.Pair(go(0), go(1))
            case T.Fst():
                return T.Fst(go(0))
            case T.Snd():
                return T.Snd(go(0))
            case T.Lam(a, _, n):
                return T.Lam(self.vty(a), go(0), n)
            case App(f) if (t.kind or _kind(f, ctx)) == "v":
                return App(go(0), go(1), "v")
            case T.LFun(a, _, n):
                return T.LFun(self.cty(infer_type(t.body, ctx.bind_stoup(a))), go(0), "k_" + n)
        # a computation term with an empty stoup: λ°k:Ā*. (...)
        ty = infer_type(t, ctx)
        lam = lambda body: T.LFun(self.cty(ty), body, "k")
        L = lambda f, a: App(f, a, "l")
        match t:
            case T.CStar():
                return T.LFun(ZERO, T.Absurd(self.r.ty, K), "k")
            case T.CPair():
                return lam(T.Case(K, L(go(0), SVar(0, "kx")), L(go(1), SVar(0, "ky")), "kx", "ky"))
            case T.PFst() | T.PSnd():
                pty = self.cty(self.ty_of(t, 0, ctx))
                inj = T.Inl if isinstance(t, T.PFst) else T.Inr
                return lam(L(go(0), inj(pty, K)))
            case T.CLam(_, _, n):
                return lam(T.CopowLet(K, L(go(0), SVar(0, "h")), n, "h"))
            case App(f) if (t.kind or _kind(f, ctx)) == "c":
                return lam(L(go(0), T.CopowIntro(go(1), K)))
            case T.Top():
                return lam(K)
            case T.ILet():
                return lam(L(go(0), L(go(1), K)))
            case T.BangIntro():
                return lam(App(K, go(0), "c"))
            case T.BangLet(_, _, n):
                a = self.ty_of(t, 0, ctx).arg
                return lam(L(go(0), T.CLam(self.vty(a), L(go(1), K), n)))
            case T.CopowIntro():
                return lam(L(go(1), App(K, go(0), "c")))
            case T.CopowLet(_, _, xn, _):
                a = self.ty_of(t, 0, ctx).val
                return lam(L(go(0), T.CLam(self.vty(a), go(1), xn)))
            case T.Absurd():
                return lam(L(go(0), T.CSTAR))
            case T.Inl() | T.Inr():
                proj = T.PFst if isinstance(t, T.Inl) else T.PSnd
                return lam(L(go(0), proj(K)))
            case T.Case():
                return lam(L(go(0), T.CPair(go(1), go(2))))
            case App():
                # s : Ā ⊸ B̄ applied to t : Ā, both with empty stoup
                return lam(L(go(1), L(go(0), K)))
        raise TypeError(f"cannot translate {t!r}")

    def comp(self, t: Term, ctx: Ctx) -> Term:
        """Γ | z:D̄ ⊢ t : Ā  gives  Γ° | k_z:Ā* ⊢ t* : D̄*, with k_z as stoup variable 0."""
        go = lambda i: self.go(t, ctx, i)
        plug = T.plug_stoup
        match t:
            case T.SVar(0):
                return K
            case T.CStar():
                return T.Absurd(self.cty(ctx.stoup), K)
            case T.CPair():
                return T.Case(K, go(0), go(1), "kx", "ky")
            case T.PFst() | T.PSnd():
                pty = self.cty(self.ty_of(t, 0, ctx))
                inj = T.Inl if isinstance(t, T.PFst) else T.Inr
                return plug(go(0), inj(pty, K))
            case T.CLam(_, _, n):
                return T.CopowLet(K, go(0), n, "h")
            case App(f) if (t.kind or _kind(f, ctx)) == "c":
                return plug(go(0), T.CopowIntro(go(1), K))
            case T.ILet():
                return plug(go(0), App(go(1), K, "l"))
            case T.BangLet(_, _, n):
                a = self.ty_of(t, 0, ctx).arg
                return plug(go(0), T.CLam(self.vty(a), App(go(1), K, "l"), n))
            case T.CopowIntro():
                return plug(go(1), App(K, go(0), "c"))
            case T.CopowLet(_, _, xn, _):
                a = self.ty_of(t, 0, ctx).val
                return plug(go(0), T.CLam(self.vty(a), go(1), xn))
            case T.Absurd():
                return plug(go(0), T.CSTAR)
            case T.Inl() | T.Inr():
                proj = T.PFst if isinstance(t, T.Inl) else T.PSnd
                return plug(go(0), proj(K))
            case T.Case():
                return plug(go(0), T.CPair(go(1), go(2)))
            case App():
                return plug(go(1), App(go(0), K, "l"))
        raise TypeError(f"cannot translate {t!r} with a stoup")


def _kind(f: Term, ctx: Ctx) -> str:
    fty = infer_type(f, Ctx(ctx.gamma, ctx.stoups, ctx.live, True))
    return {Fun: "v", Arrow: "c", Lin: "l"}[type(unembed(fty))]


def _translated_gamma(gamma, r) -> tuple:
    return tuple((n, self_vtype(a, r)) for n, a in gamma)


def self_vterm(tt: TypedTerm, r) -> TypedTerm:
    """Γ ⊢ t : A  to  Γ° ⊢ t° : A°."""
    r = result_type(r)
    if tt.stoup is not None:
        raise ValueError("self_vterm expects a judgement with an empty stoup")
    t = _Self(r).value(tt.elaboration, ctx_of(tt.gamma))
    return check_value(_translated_gamma(tt.gamma, r), t, self_vtype(as_value(tt.ty), r))


def self_cterm(tt: TypedTerm, r) -> TypedTerm:
    """Γ | z:Ā ⊢ t : B̄  to  Γ° | k_z:B̄* ⊢ t* : Ā*."""
    r = result_type(r)
    if tt.stoup is None:
        raise ValueError("self_cterm expects a judgement with a stoup")
    z, a = tt.stoup
    t = _Self(r).comp(tt.elaboration, ctx_of(tt.gamma, tt.stoup))
    return check_comp(_translated_gamma(tt.gamma, r), ("k_" + z, self_ctype(tt.ty, r)), t,
                      self_ctype(a, r))


def self_term(tt: TypedTerm, r) -> TypedTerm:
    return self_vterm(tt, r) if tt.stoup is None else self_cterm(tt, r)


# --- isomorphisms between doubly translated types and the originals ---------------

def _vv(a, r):
    return self_vtype(self_vtype(a, r), r)


def _cc(c, r):
    return self_ctype(self_ctype(c, r), r)


def phi(a: ValueType, r: ResultType) -> Term:
    """φ_A : A°° → A as a closed term."""
    a = as_value(a)
    V = lambda f, x: App(f, x, "v")
    L = lambda f, x: App(f, x, "l")
    match a:
        case Const():
            return T.Lam(a, Var(0))
        case Unit():
            return T.Lam(a, T.STAR)
        case Prod(x, y):
            return T.Lam(_vv(a, r), T.Pair(V(phi(x, r), T.Fst(Var(0, "z"))), V(phi(y, r), T.Snd(Var(0, "z")))), "z")
        case Fun(x, y):
            body = V(phi(y, r), V(Var(1, "f"), V(phi_inv(x, r), Var(0))))
            return T.Lam(_vv(a, r), T.Lam(x, body), "f")
        case Embed(c):
            return T.Lam(_vv(a, r), L(psi(c, r), L(Var(0, "h"), T.TOP)), "h")
        case Lin(x, y):
            body = L(psi(y, r), L(Var(0, "h"), L(psi_inv(x, r), SVar(0, "x"))))
            return T.Lam(_vv(a, r), T.LFun(x, body, "x"), "h")
    raise TypeError(f"not a value type: {a!r}")


def phi_inv(a: ValueType, r: ResultType) -> Term:
    """φ_A⁻¹ : A → A°°."""
    a = as_value(a)
    V = lambda f, x: App(f, x, "v")
    L = lambda f, x: App(f, x, "l")
    match a:
        case Const():
            return T.Lam(a, Var(0))
        case Unit():
            return T.Lam(a, T.STAR)
        case Prod(x, y):
            return T.Lam(a, T.Pair(V(phi_inv(x, r), T.Fst(Var(0, "z"))),
                                   V(phi_inv(y, r), T.Snd(Var(0, "z")))), "z")
        case Fun(x, y):
            body = V(phi_inv(y, r), V(Var(1, "f"), V(phi(x, r), Var(0))))
            return T.Lam(a, T.Lam(_vv(x, r), body), "f")
        case Embed(c):
            return T.Lam(a, T.LFun(I, T.ILet(SVar(0, "z"), L(psi_inv(c, r), Var(0))), "z"))
        case Lin(x, y):
            body = L(psi_inv(y, r), L(Var(0, "h"), L(psi(x, r), SVar(0, "x"))))
            return T.Lam(a, T.LFun(_cc(x, r), body, "x"), "h")
    raise TypeError(f"not a value type: {a!r}")


def psi(c: CompType, r: ResultType) -> Term:
    """ψ_Ā : Ā** ⊸ Ā."""
    c = unembed(c)
    z = SVar(0, "z")
    L = lambda f, x: App(f, x, "l")
    match c:
        case CConst() | TensorUnit() | Zero():
            return T.LFun(c, z, "z")
        case WithUnit():
            return T.LFun(c, T.CSTAR, "z")
        case With(x, y):
            return T.LFun(_cc(c, r), T.CPair(L(psi(x, r), T.PFst(z)), L(psi(y, r), T.PSnd(z))), "z")
        case Arrow(a, b):
            body = L(psi(b, r), App(SVar(0, "f"), App(phi_inv(a, r), Var(0), "v"), "c"))
            return T.LFun(_cc(c, r), T.CLam(a, body), "f")
        case Bang(a):
            body = T.CopowLet(z, T.ILet(SVar(0, "y"), T.BangIntro(App(phi(a, r), Var(0), "v"))))
            return T.LFun(_cc(c, r), body, "z")
        case Copower(a, b):
            body = T.CopowLet(z, T.CopowIntro(App(phi(a, r), Var(0), "v"), L(psi(b, r), SVar(0, "y"))))
            return T.LFun(_cc(c, r), body, "z")
        case Plus(x, y):
            body = T.Case(z, T.Inl(c, L(psi(x, r), SVar(0, "x"))), T.Inr(c, L(psi(y, r), SVar(0, "y"))))
            return T.LFun(_cc(c, r), body, "z")
    raise TypeError(f"not a computation type: {c!r}")


def psi_inv(c: CompType, r: ResultType) -> Term:
    """ψ_Ā⁻¹ : Ā ⊸ Ā**."""
    c = unembed(c)
    z = SVar(0, "z")
    L = lambda f, x: App(f, x, "l")
    match c:
        case CConst() | TensorUnit() | Zero():
            return T.LFun(c, z, "z")
        case WithUnit():
            return T.LFun(c, T.CSTAR, "z")
        case With(x, y):
            return T.LFun(c, T.CPair(L(psi_inv(x, r), T.PFst(z)), L(psi_inv(y, r), T.PSnd(z))), "z")
        case Arrow(a, b):
            body = L(psi_inv(b, r), App(SVar(0, "f"), App(phi(a, r), Var(0), "v"), "c"))
            return T.LFun(c, T.CLam(_vv(a, r), body), "f")
        case Bang(a):
            body = T.BangLet(SVar(0, "w"), T.CopowIntro(App(phi_inv(a, r), Var(0), "v"), T.TOP))
            return T.LFun(c, body, "w")
        case Copower(a, b):
            body = T.CopowLet(z, T.CopowIntro(App(phi_inv(a, r), Var(0), "v"), L(psi_inv(b, r), SVar(0, "y"))))
            return T.LFun(c, body, "z")
        case Plus(x, y):
            cc = _cc(c, r)
            body = T.Case(z, T.Inl(cc, L(psi_inv(x, r), SVar(0, "x"))), T.Inr(cc, L(psi_inv(y, r), SVar(0, "y"))))
            return T.LFun(c, body, "z")
    raise TypeError(f"not a computation type: {c!r}")


def iso_value(a: ValueType, r) -> tuple[TypedTerm, TypedTerm]:
    """(φ_A, φ_A⁻¹), both checked as closed terms."""
    r = result_type(r)
    r.require_theorem_grade("the value isomorphisms")
    a = as_value(a)
    vv = _vv(a, r)
    return (check_value((), phi(a, r), Fun(vv, a)), check_value((), phi_inv(a, r), Fun(a, vv)))


def iso_comp(c: CompType, r) -> tuple[TypedTerm, TypedTerm]:
    """(ψ_Ā, ψ_Ā⁻¹), both checked as closed terms."""
    r = result_type(r)
    r.require_theorem_grade("the computation isomorphisms")
    c = unembed(c)
    cc = _cc(c, r)
    return (check_value((), psi(c, r), Lin(cc, c)), check_value((), psi_inv(c, r), Lin(c, cc)))


def undo_context(t: Term, gamma, r: ResultType) -> Term:
    """``t[φ⁻¹ x / x]`` for every x in Γ, turning a term over Γ°° into one over Γ."""
    n = len(gamma)
    sigma = {n - 1 - i: App(phi_inv(a, r), Var(n - 1 - i, name), "v") for i, (name, a) in enumerate(gamma)}
    return T.subst_many(t, sigma)


def involution_rhs(tt: TypedTerm, r) -> TypedTerm:
    """The round trip through the double translation, brought back to the original judgement.

    For Γ ⊢ t : A this is ``φ_A t°° [φ⁻¹ Γ]``; for Γ | z:Ā ⊢ t : B̄ it is
    ``ψ_B̄ t** [ψ_Ā⁻¹ z / k_k_z] [φ⁻¹ Γ]``.
    """
    r = result_type(r)
    r.require_theorem_grade("the involution round trip")
    once = self_term(tt, r)
    twice = self_term(once, r)
    if tt.stoup is None:
        body = App(phi(tt.ty, r), twice.elaboration, "v")
    else:
        body = App(psi(tt.ty, r), twice.elaboration, "l")
        body = T.plug_stoup(body, App(psi_inv(tt.stoup[1], r), SVar(0, tt.stoup[0]), "l"))
    body = undo_context(body, tt.gamma, r)
    if tt.stoup is None:
        return check_value(tt.gamma, body, as_value(tt.ty))
    return check_comp(tt.gamma, tt.stoup, body, tt.ty)


def fullness_witness(tt: TypedTerm, gamma, ty, r, stoup: Optional[tuple] = None) -> TypedTerm:
    """A source term whose translation equals ``tt``.

    Value case: ``tt`` is Γ° ⊢ t : A° and the witness is Γ ⊢ φ_A (t° [φ⁻¹ Γ]) : A.
    Stoup case: ``tt`` is Γ° | k_z:B̄* ⊢ t : Ā* with ``stoup = (z, Ā)`` and ``ty`` = B̄;
    the witness is Γ | z:Ā ⊢ ψ_B̄ t* [ψ_Ā⁻¹ z / k] [φ⁻¹ Γ] : B̄.
    """
    r = result_type(r)
    r.require_theorem_grade("the fullness witness")
    gamma = tuple(gamma)
    want_gamma = _translated_gamma(gamma, r)
    if [unembed(a) for _, a in tt.gamma] != [unembed(a) for _, a in want_gamma]:
        raise ValueError("the term's context is not the translation of the given context")
    if stoup is None:
        if tt.stoup is not None or unembed(tt.ty) != unembed(self_vtype(as_value(ty), r)):
            raise ValueError("the term's type is not the translation of the given type")
        body = App(phi(ty, r), self_vterm(tt, r).elaboration, "v")
        return check_value(gamma, undo_context(body, gamma, r), as_value(ty))
    z, a = stoup
    if (tt.stoup is None or unembed(tt.stoup[1]) != self_ctype(ty, r)
            or unembed(tt.ty) != self_ctype(a, r)):
        raise ValueError("the term's judgement is not the translation of the given one")
    body = App(psi(ty, r), self_cterm(tt, r).elaboration, "l")
    body = T.plug_stoup(body, App(psi_inv(a, r), SVar(0, z), "l"))
    return check_comp(gamma, stoup, undo_context(body, gamma, r), unembed(ty))
