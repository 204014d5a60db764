"""Oriented rewriting to normal form and eta-long canonicalisation.

Both passes record every rewrite as a ``Step`` at an absolute path, so the
sequence can be replayed against the rule table.  Commuting conversions,
stoup inversion and hoisting of effectful subterms are all performed as a
single generalised let-eta step (with the surrounding context as the ``u``
binding) followed by ordinary beta steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import terms as T
from .rules import Step, beta_step, eta_step, instantiate, pure_let_eta
from .terms import Term, shift
from .typecheck import Ctx, _app_kind, child_ctx, infer_type
from .types import (Arrow, Bang, CompType, Copower, Fun, Lin, Plus, Prod, TensorUnit, Unit,
                    With, WithUnit, Zero, ZERO, is_positive, unembed)

DEFAULT_NORMALIZE_FUEL = 10_000


class OutOfFuel(Exception):
    pass


@dataclass
class Fuel:
    limit: int
    used: int = 0

    def spend(self):
        if self.used >= self.limit:
            raise OutOfFuel()
        self.used += 1


@dataclass
class NormalResult:
    term: Term
    steps: list = field(default_factory=list)
    exhausted: bool = False
    fuel_used: int = 0


LET_FORMS = (T.ILet, T.BangLet, T.CopowLet, T.Case, T.Absurd)
NEUTRAL = (T.Var, T.SVar, T.App, T.PFst, T.PSnd, T.Fst, T.Snd)


def app_kind(t: T.App, ctx: Ctx) -> str:
    return t.kind or _app_kind(t.fn, ctx)


def linear_child(t: Term, ctx: Ctx):
    """Index of the child that receives the stoup of ``t`` without crossing a binder."""
    match t:
        case T.PFst() | T.PSnd() | T.Inl() | T.Inr() | T.Absurd():
            return 0
        case T.ILet() | T.BangLet() | T.CopowLet() | T.Case():
            return 0
        case T.CopowIntro():
            return 1
        case T.App():
            k = app_kind(t, ctx)
            return {"c": 0, "l": 1}.get(k)
    return None


def hoist_bindings(t: Term, hole: tuple, s: Term, s_ty: CompType, ctx_type: CompType, names=None):
    """Bindings of the let-eta (or zero-eta) step that pulls ``s`` out of ``t`` at ``hole``."""
    u = T.replace_at(shift(t, 0, 1), hole, T.SVar(0, "y"))
    names = names or {}
    b = {"t": s, "u": u}
    match s_ty:
        case TensorUnit():
            return "I-leteta", b
        case Bang():
            b["x"] = names.get("x", "x")
            return "bang-leteta", b
        case Copower():
            b["x"], b["y"] = names.get("x", "x"), names.get("y", "y")
            return "tensor-leteta", b
        case Plus():
            b["S"] = s_ty
            b["x"], b["y"] = names.get("x", "x"), names.get("y", "y")
            return "plus-leteta", b
        case Zero():
            b["C"] = ctx_type
            return "zero-eta", b
    raise ValueError(f"cannot hoist a subterm of type {s_ty}")


def _let_names(node: Term) -> dict:
    match node:
        case T.BangLet(_, _, n):
            return {"x": n}
        case T.CopowLet(_, _, xn, yn) | T.Case(_, _, _, xn, yn):
            return {"x": xn, "y": yn}
    return {}


class Engine:
    def __init__(self, fuel: Fuel, eta: bool = True):
        self.fuel = fuel
        self.eta = eta
        self.steps: list[Step] = []

    def record(self, path, rule, direction, bindings) -> Term:
        self.fuel.spend()
        self.steps.append(Step(tuple(path), rule, direction, bindings))
        lhs, rhs = instantiate(rule, bindings)
        return rhs if direction == "fwd" else lhs

    # normalisation

    def norm(self, t: Term, ctx: Ctx, path=()) -> Term:
        kids = T.children(t)
        if kids:
            new = [self.norm(c, child_ctx(t, i, ctx), path + (i,)) for i, c in enumerate(kids)]
            if any(a is not b for a, b in zip(new, kids)):
                t = T.with_children(t, new)
        return self.head(t, ctx, path)

    def head(self, t: Term, ctx: Ctx, path) -> Term:
        r = beta_step(t)
        if r is not None:
            t = self.record(path, r[0], "fwd", r[1])
            return self.norm(t, ctx, path)
        i = linear_child(t, ctx)
        if i is not None and isinstance(T.children(t)[i], LET_FORMS):
            return self.norm(self.commute(t, i, ctx, path), ctx, path)
        if self.eta:
            r = eta_step(t) or pure_let_eta(t)
            if r is not None:
                return self.record(path, r[0], "fwd", r[1])
        return t

    def commute(self, t: Term, i: int, ctx: Ctx, path) -> Term:
        """E[let p be s in b]  ~>  let p be s in E[let p be p in b]  (beta follows)."""
        inner = T.children(t)[i]
        s = T.children(inner)[0]
        if isinstance(inner, T.Absurd):
            s_ty = ZERO
        else:
            s_ty = infer_type(s, child_ctx(inner, 0, child_ctx(t, i, ctx)))
        rule, b = hoist_bindings(t, (i, 0), s, s_ty, infer_type(t, ctx), _let_names(inner))
        return self.record(path, rule, "bwd", b)

    # canonical forms

    def value(self, t: Term, ctx: Ctx, ty, path) -> Term:
        ty = unembed(ty)
        if isinstance(ty, CompType):
            return self.comp(t, ctx, ty, path)
        match ty:
            case Unit():
                if not isinstance(t, T.Star):
                    return self.record(path, "V-1eta", "fwd", {"t": t})
                return t
            case Prod(a, b):
                if not isinstance(t, T.Pair):
                    t = self.record(path, "V-xeta", "bwd", {"t": t})
                l = self.value(t.left, ctx, a, path + (0,))
                r = self.value(t.right, ctx, b, path + (1,))
                return T.Pair(l, r)
            case Fun(a, b):
                if not isinstance(t, T.Lam):
                    t = self.record(path, "V-funeta", "bwd", {"A": a, "t": t, "x": "x"})
                inner = ctx.push(a)
                body = self.norm_nested(t.body, inner, path + (0,))
                return T.Lam(t.ty, self.value(body, inner, b, path + (0,)), t.name)
            case Lin(a, b):
                if not isinstance(t, T.LFun):
                    t = self.record(path, "lin-eta", "bwd", {"A": a, "t": t, "z": "k"})
                inner = ctx.bind_stoup(a)
                body = self.norm_nested(t.body, inner, path + (0,))
                return T.LFun(t.ty, self.comp(body, inner, b, path + (0,)), t.name)
        return self.neutral(t, ctx, path)

    def norm_nested(self, t: Term, ctx: Ctx, path) -> Term:
        saved, self.eta = self.eta, False
        try:
            return self.norm(t, ctx, path)
        finally:
            self.eta = saved

    def comp(self, t: Term, ctx: Ctx, ty: CompType, path) -> Term:
        match ty:
            case WithUnit():
                if not isinstance(t, T.CStar):
                    return self.record(path, "C-1eta", "fwd", {"t": t})
                return t
            case With(a, b):
                if not isinstance(t, T.CPair):
                    t = self.record(path, "C-witheta", "bwd", {"t": t})
                    t = T.CPair(self.norm_nested(t.left, ctx, path + (0,)), t.right)
                    t = T.CPair(t.left, self.norm_nested(t.right, ctx, path + (1,)))
                l = self.comp(t.left, ctx, a, path + (0,))
                r = self.comp(t.right, ctx, b, path + (1,))
                return T.CPair(l, r)
            case Arrow(a, b):
                if not isinstance(t, T.CLam):
                    t = self.record(path, "C-arreta", "bwd", {"A": a, "t": t, "x": "x"})
                inner = ctx.push(a)
                body = self.norm_nested(t.body, inner, path + (0,))
                return T.CLam(t.ty, self.comp(body, inner, b, path + (0,)), t.name)
        return self.positive(t, ctx, ty, path)

    def spine(self, t: Term, ctx: Ctx):
        out = [((), t, ctx)]
        rel = ()
        while True:
            i = linear_child(t, ctx)
            if i is None:
                return out
            ctx = child_ctx(t, i, ctx)
            t = T.children(t)[i]
            rel = rel + (i,)
            out.append((rel, t, ctx))

    def positive(self, t: Term, ctx: Ctx, ty: CompType, path) -> Term:
        """Focus a term of positive (or atomic) type: effects first, then an introduction."""
        while True:
            cands = [(rel, s, c) for rel, s, c in self.spine(t, ctx)
                     if isinstance(s, NEUTRAL) and is_positive(infer_type(s, c))]
            if not cands:
                return self.intro(t, ctx, ty, path)
            rel, s, c = cands[-1]
            s_ty = infer_type(s, c)
            if rel == (0,) and isinstance(t, LET_FORMS):
                return self.focused(t, ctx, ty, path)
            rule, b = hoist_bindings(t, rel, s, s_ty, ty)
            t = self.record(path, rule, "bwd", b)
            t = self.norm_nested(t, ctx, path)

    def focused(self, t: Term, ctx: Ctx, ty: CompType, path) -> Term:
        s = self.neutral(T.children(t)[0], child_ctx(t, 0, ctx), path + (0,))
        match t:
            case T.Absurd(ann, _):
                return T.Absurd(ann, s)
            case T.ILet(_, u):
                return T.ILet(s, self.comp(u, child_ctx(t, 1, ctx), ty, path + (1,)))
            case T.BangLet(_, u, n):
                return T.BangLet(s, self.comp(u, child_ctx(t, 1, ctx), ty, path + (1,)), n)
            case T.CopowLet(_, u, xn, yn):
                return T.CopowLet(s, self.comp(u, child_ctx(t, 1, ctx), ty, path + (1,)), xn, yn)
            case T.Case(_, l, r, xn, yn):
                l2 = self.comp(l, child_ctx(t, 1, ctx), ty, path + (1,))
                r2 = self.comp(r, child_ctx(t, 2, ctx), ty, path + (2,))
                return T.Case(s, l2, r2, xn, yn)
        raise ValueError(f"not a let form: {t!r}")

    def intro(self, t: Term, ctx: Ctx, ty: CompType, path) -> Term:
        match t:
            case T.Top():
                return t
            case T.BangIntro(v):
                return T.BangIntro(self.value(v, child_ctx(t, 0, ctx), ty.arg, path + (0,)))
            case T.CopowIntro(v, c):
                v2 = self.value(v, child_ctx(t, 0, ctx), ty.val, path + (0,))
                return T.CopowIntro(v2, self.comp(c, child_ctx(t, 1, ctx), ty.comp, path + (1,)))
            case T.Inl(ann, c):
                return T.Inl(ann, self.comp(c, ctx, ty.left, path + (0,)))
            case T.Inr(ann, c):
                return T.Inr(ann, self.comp(c, ctx, ty.right, path + (0,)))
            case _ if isinstance(t, LET_FORMS):
                return self.focused(t, ctx, ty, path)
        return self.neutral(t, ctx, path)

    def neutral(self, t: Term, ctx: Ctx, path) -> Term:
        match t:
            case T.Fst(a) | T.Snd(a) | T.PFst(a) | T.PSnd(a):
                return type(t)(self.neutral(a, child_ctx(t, 0, ctx), path + (0,)))
            case T.App(f, a):
                kind = app_kind(t, ctx)
                fctx, actx = child_ctx(t, 0, ctx), child_ctx(t, 1, ctx)
                fty = infer_type(f, fctx)
                f2 = self.neutral(f, fctx, path + (0,))
                if kind == "l":
                    a2 = self.comp(a, actx, fty.dom, path + (1,))
                else:
                    a2 = self.value(a, actx, fty.dom, path + (1,))
                return T.App(f2, a2, kind)
        return t


def normalize_term(t: Term, ctx: Ctx, fuel: int = DEFAULT_NORMALIZE_FUEL, eta: bool = True) -> NormalResult:
    eng = Engine(Fuel(fuel), eta)
    try:
        out = eng.norm(t, ctx)
    except OutOfFuel:
        return NormalResult(t, eng.steps, True, eng.fuel.used)
    return NormalResult(out, eng.steps, False, eng.fuel.used)


def canonicalize_term(t: Term, ctx: Ctx, ty, fuel: int = DEFAULT_NORMALIZE_FUEL) -> NormalResult:
    """Eta-long, focused form of a normal term ``t`` of type ``ty``."""
    eng = Engine(Fuel(fuel), eta=False)
    try:
        if ctx.live or isinstance(unembed(ty), CompType):
            out = eng.comp(t, ctx, unembed(ty), ())
        else:
            out = eng.value(t, ctx, ty, ())
    except OutOfFuel:
        return NormalResult(t, eng.steps, True, eng.fuel.used)
    return NormalResult(out, eng.steps, False, eng.fuel.used)


def normalize(tt, fuel: int = DEFAULT_NORMALIZE_FUEL, eta: bool = True) -> NormalResult:
    """Normal form of a checked term (a ``TypedTerm``)."""
    from .typecheck import ctx_of
    return normalize_term(tt.elaboration, ctx_of(tt.gamma, tt.stoup), fuel, eta)


def canonical_form(tt, fuel: int = DEFAULT_NORMALIZE_FUEL) -> NormalResult:
    """Normalise then canonicalise; the steps of both phases are concatenated."""
    from .typecheck import ctx_of
    ctx = ctx_of(tt.gamma, tt.stoup)
    n = normalize_term(tt.elaboration, ctx, fuel)
    if n.exhausted:
        return n
    c = canonicalize_term(n.term, ctx, tt.ty, fuel)
    return NormalResult(c.term, n.steps + c.steps, c.exhausted, n.fuel_used + c.fuel_used)
