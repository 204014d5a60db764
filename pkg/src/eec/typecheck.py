"""Bidirectional checker for the two EEC judgement forms.

``Γ ⊢ t : A`` is a judgement with an empty stoup; ``Γ | z:Ā ⊢ t : B̄`` carries a
single linear hypothesis.  The checker elaborates every application with the
rule it used ('v' for ->, 'c' for =>, 'l' for -o) and fills in the optional
result annotations of ``inl``, ``inr`` and ``absurd``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import terms as T
from .terms import Term
from .types import (Arrow, Bang, CompType, Copower, Embed, Fun, I, Lin, ONE, Plus, Prod,
                    Type, Unit, ValueType, With, ZERO, as_value, unembed)

KINDS = ("unbound-variable", "stoup-misuse", "sort-error", "mismatch", "ambiguous-application")


class TypingError(Exception):
    def __init__(self, kind: str, path, message: str, expected=None, actual=None):
        assert kind in KINDS, kind
        super().__init__(message)
        self.kind = kind
        self.path = list(path)
        self.message = message
        self.expected = expected
        self.actual = actual

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "path": self.path,
            "message": self.message,
            "expected": None if self.expected is None else str(self.expected),
            "actual": None if self.actual is None else str(self.actual),
        }

    def __str__(self) -> str:
        s = f"{self.kind} at {self.path}: {self.message}"
        if self.expected is not None or self.actual is not None:
            s += f" (expected {self.expected}, got {self.actual})"
        return s


@dataclass(frozen=True)
class Judgement:
    """``gamma`` is outermost-first, so its last entry is value variable 0."""
    gamma: tuple
    stoup: Optional[tuple]
    subject: Term
    ty: Optional[Type] = None

    def __post_init__(self):
        names = [n for n, _ in self.gamma]
        if len(set(names)) != len(names):
            raise ValueError(f"context names are not distinct: {names}")
        if self.stoup is not None and self.ty is not None and not isinstance(unembed(self.ty), CompType):
            raise TypingError("sort-error", [], "a judgement with a stoup must have a computation type",
                              "computation type", self.ty)

    @property
    def gamma_types(self) -> list:
        return [ty for _, ty in self.gamma]

    def __str__(self) -> str:
        from .syntax import show_judgement
        return show_judgement(self)


@dataclass(frozen=True)
class TypedTerm:
    judgement: Judgement
    elaboration: Term = field(compare=False)

    @property
    def term(self) -> Term:
        return self.elaboration

    @property
    def ty(self) -> Type:
        return self.judgement.ty

    @property
    def gamma(self) -> tuple:
        return self.judgement.gamma

    @property
    def stoup(self) -> Optional[tuple]:
        return self.judgement.stoup

    def with_term(self, t: Term) -> "TypedTerm":
        j = Judgement(self.gamma, self.stoup, t, self.ty)
        return TypedTerm(j, t)

    def __str__(self) -> str:
        from .syntax import show_judgement
        return show_judgement(Judgement(self.gamma, self.stoup, self.elaboration, self.ty))


@dataclass(frozen=True)
class Ctx:
    gamma: tuple = ()       # value types, innermost first
    stoups: tuple = ()      # stoup binder types, innermost first
    live: bool = False      # whether stoup variable 0 may be used here
    lenient: bool = False   # skip stoup discipline (type reconstruction only)

    def push(self, ty: Type) -> "Ctx":
        return Ctx((as_value(ty),) + self.gamma, self.stoups, self.live, self.lenient)

    def bind_stoup(self, ty: CompType) -> "Ctx":
        return Ctx(self.gamma, (ty,) + self.stoups, True, self.lenient)

    def empty(self) -> "Ctx":
        return Ctx(self.gamma, self.stoups, False, self.lenient)

    @property
    def stoup(self) -> Optional[CompType]:
        return self.stoups[0] if self.live and self.stoups else None


def ctx_of(gamma, stoup=None, lenient=False) -> Ctx:
    """Build a context from an outermost-first list of types (or (name, type) pairs)."""
    tys = [g[1] if isinstance(g, tuple) else g for g in gamma]
    g = tuple(as_value(t) for t in reversed(tys))
    if stoup is None:
        return Ctx(g, (), False, lenient)
    sty = stoup[1] if isinstance(stoup, tuple) else stoup
    return Ctx(g, (unembed(sty),), True, lenient)


def _same(a: Type, b: Type) -> bool:
    return unembed(a) == unembed(b)


class Checker:
    def __init__(self):
        pass

    # helpers

    def _empty(self, ctx: Ctx, path, what: str):
        if ctx.live and not ctx.lenient:
            raise TypingError("stoup-misuse", path, f"{what} needs an empty stoup, but the stoup is in use here")

    def _comp(self, ty: Type, path, what: str) -> CompType:
        ty = unembed(ty)
        if not isinstance(ty, CompType):
            raise TypingError("sort-error", path, f"{what} must have a computation type", "computation type", ty)
        return ty

    def _expect(self, got: Type, want: Type, path):
        if not _same(got, want):
            raise TypingError("mismatch", path, "type mismatch", unembed(want), unembed(got))

    # synthesis

    def synth(self, t: Term, ctx: Ctx, path=()) -> tuple[Term, Type]:
        p = list(path)
        match t:
            case T.Var(i, n):
                if i >= len(ctx.gamma):
                    raise TypingError("unbound-variable", p, f"value variable {n!r} is not bound")
                self._empty(ctx, p, "a value variable")
                return t, unembed(ctx.gamma[i])
            case T.SVar(i, n):
                if i >= len(ctx.stoups):
                    raise TypingError("unbound-variable", p, f"stoup variable {n!r} is not bound")
                if ctx.lenient:
                    return t, ctx.stoups[i]
                if i != 0 or not ctx.live:
                    raise TypingError("stoup-misuse", p, "the stoup variable is not available here")
                return t, ctx.stoups[0]
            case T.Star():
                self._empty(ctx, p, "*")
                return t, Unit()
            case T.Pair(l, r):
                self._empty(ctx, p, "a value pair")
                el, a = self.synth(l, ctx, p + [0])
                er, b = self.synth(r, ctx, p + [1])
                return T.Pair(el, er), Prod(as_value(a), as_value(b))
            case T.Fst(u) | T.Snd(u):
                self._empty(ctx, p, "a projection")
                eu, ty = self.synth(u, ctx, p + [0])
                if not isinstance(ty, Prod):
                    raise TypingError("mismatch", p + [0], "projection from a non-product", "A x B", ty)
                part = ty.left if isinstance(t, T.Fst) else ty.right
                return type(t)(eu), unembed(part)
            case T.Lam(a, body, n):
                self._empty(ctx, p, "fun")
                eb, b = self.synth(body, ctx.push(a), p + [0])
                return T.Lam(a, eb, n), Fun(as_value(a), as_value(b))
            case T.App():
                return self._app(t, ctx, p)
            case T.CStar():
                return t, ONE
            case T.CPair(l, r):
                el, a = self.synth(l, ctx, p + [0])
                er, b = self.synth(r, ctx, p + [1])
                return T.CPair(el, er), With(self._comp(a, p + [0], "a component of <_,_>"),
                                             self._comp(b, p + [1], "a component of <_,_>"))
            case T.PFst(u) | T.PSnd(u):
                eu, ty = self.synth(u, ctx, p + [0])
                if not isinstance(ty, With):
                    raise TypingError("mismatch", p + [0], "projection from a non-with type", "A & B", ty)
                return type(t)(eu), (ty.left if isinstance(t, T.PFst) else ty.right)
            case T.CLam(a, body, n):
                eb, b = self.synth(body, ctx.push(a), p + [0])
                return T.CLam(a, eb, n), Arrow(as_value(a), self._comp(b, p + [0], "the body of cfun"))
            case T.Top():
                self._empty(ctx, p, "top")
                return t, I
            case T.ILet(s, u):
                es = self.check(s, ctx, I, p + [0])
                eu, ty = self.synth(u, ctx.empty(), p + [1])
                return T.ILet(es, eu), self._comp(ty, p + [1], "the body of let top")
            case T.BangIntro(u):
                self._empty(ctx, p, "!t")
                eu, a = self.synth(u, ctx, p + [0])
                return T.BangIntro(eu), Bang(as_value(a))
            case T.BangLet(s, u, n):
                es, ty = self.synth(s, ctx, p + [0])
                if not isinstance(ty, Bang):
                    raise TypingError("mismatch", p + [0], "let ! on a non-! type", "!A", ty)
                eu, b = self.synth(u, ctx.empty().push(ty.arg), p + [1])
                return T.BangLet(es, eu, n), self._comp(b, p + [1], "the body of let !")
            case T.CopowIntro(v, c):
                ev, a = self.synth(v, ctx.empty(), p + [0])
                ec, b = self.synth(c, ctx, p + [1])
                return T.CopowIntro(ev, ec), Copower(as_value(a), self._comp(b, p + [1], "the right of (*)"))
            case T.CopowLet(s, u, xn, yn):
                es, ty = self.synth(s, ctx, p + [0])
                if not isinstance(ty, Copower):
                    raise TypingError("mismatch", p + [0], "copower let on a non-copower", "!A (*) B", ty)
                eu, c = self.synth(u, ctx.push(ty.val).bind_stoup(ty.comp), p + [1])
                return T.CopowLet(es, eu, xn, yn), self._comp(c, p + [1], "the body of a copower let")
            case T.Absurd(ann, u):
                if ann is None:
                    raise TypingError("mismatch", p, "absurd needs a result annotation here", "annotation", None)
                eu = self.check(u, ctx, ZERO, p + [0])
                return T.Absurd(ann, eu), ann
            case T.Inl(ann, u) | T.Inr(ann, u):
                if ann is None:
                    raise TypingError("mismatch", p, "injection needs a sum annotation here", "annotation", None)
                return self._inject(t, ann, ctx, p), ann
            case T.Case(s, l, r, ln, rn):
                es, ty = self.synth(s, ctx, p + [0])
                if not isinstance(ty, Plus):
                    raise TypingError("mismatch", p + [0], "case on a non-sum", "A (+) B", ty)
                el, c1 = self.synth(l, ctx.bind_stoup(ty.left), p + [1])
                c1 = self._comp(c1, p + [1], "a case branch")
                er = self.check(r, ctx.bind_stoup(ty.right), c1, p + [2])
                return T.Case(es, el, er, ln, rn), c1
            case T.LFun(a, body, n):
                self._empty(ctx, p, "lfun")
                eb, b = self.synth(body, ctx.bind_stoup(a), p + [0])
                return T.LFun(a, eb, n), Lin(a, self._comp(b, p + [0], "the body of lfun"))
        raise TypingError("mismatch", p, f"not a term: {t!r}")

    def _inject(self, t, ann, ctx, p):
        if not isinstance(ann, Plus):
            raise TypingError("mismatch", p, "injection into a non-sum", "A (+) B", ann)
        part = ann.left if isinstance(t, T.Inl) else ann.right
        eu = self.check(t.arg, ctx, part, p + [0])
        return type(t)(ann, eu)

    def _app(self, t: T.App, ctx: Ctx, p) -> tuple[Term, Type]:
        lenient = Ctx(ctx.gamma, ctx.stoups, ctx.live, True)
        ef0, fty = self.synth(t.fn, lenient, p + [0])
        if ctx.lenient:
            # the second pass would only repeat this one
            ctx_arg = ctx.empty() if isinstance(fty, Arrow) else ctx
            if isinstance(fty, (Fun, Arrow, Lin)):
                kind = "v" if isinstance(fty, Fun) else "c" if isinstance(fty, Arrow) else "l"
                ea = self.check(t.arg, ctx_arg, fty.dom, p + [1])
                return T.App(ef0, ea, kind), unembed(fty.cod) if kind == "v" else fty.cod
        if isinstance(fty, Fun):
            self._empty(ctx, p, "a value application")
            ef, _ = self.synth(t.fn, ctx, p + [0])
            ea = self.check(t.arg, ctx, fty.dom, p + [1])
            return T.App(ef, ea, "v"), unembed(fty.cod)
        if isinstance(fty, Arrow):
            ef, _ = self.synth(t.fn, ctx, p + [0])
            ea = self.check(t.arg, ctx.empty(), fty.dom, p + [1])
            return T.App(ef, ea, "c"), fty.cod
        if isinstance(fty, Lin):
            ef, _ = self.synth(t.fn, ctx.empty(), p + [0])
            ea = self.check(t.arg, ctx, fty.dom, p + [1])
            return T.App(ef, ea, "l"), fty.cod
        raise TypingError("mismatch", p + [0], "application of a non-function", "A -> B, A => B or A -o B", fty)

    # checking

    def check(self, t: Term, ctx: Ctx, want: Type, path=()) -> Term:
        p = list(path)
        want = unembed(want)
        match t:
            case T.Absurd(ann, u) if ann is None:
                want = self._comp(want, p, "absurd")
                return T.Absurd(want, self.check(u, ctx, ZERO, p + [0]))
            case T.Inl(ann, u) | T.Inr(ann, u):
                if ann is None:
                    ann = want
                elif not _same(ann, want):
                    raise TypingError("mismatch", p, "injection annotation disagrees", want, ann)
                return self._inject(t, ann, ctx, p)
            case T.Case(s, l, r, ln, rn):
                es, ty = self.synth(s, ctx, p + [0])
                if not isinstance(ty, Plus):
                    raise TypingError("mismatch", p + [0], "case on a non-sum", "A (+) B", ty)
                want = self._comp(want, p, "case")
                el = self.check(l, ctx.bind_stoup(ty.left), want, p + [1])
                er = self.check(r, ctx.bind_stoup(ty.right), want, p + [2])
                return T.Case(es, el, er, ln, rn)
            case T.ILet(s, u):
                es = self.check(s, ctx, I, p + [0])
                return T.ILet(es, self.check(u, ctx.empty(), self._comp(want, p, "let top"), p + [1]))
            case T.BangLet(s, u, n):
                es, ty = self.synth(s, ctx, p + [0])
                if not isinstance(ty, Bang):
                    raise TypingError("mismatch", p + [0], "let ! on a non-! type", "!A", ty)
                want = self._comp(want, p, "let !")
                return T.BangLet(es, self.check(u, ctx.empty().push(ty.arg), want, p + [1]), n)
            case T.CopowLet(s, u, xn, yn):
                es, ty = self.synth(s, ctx, p + [0])
                if not isinstance(ty, Copower):
                    raise TypingError("mismatch", p + [0], "copower let on a non-copower", "!A (*) B", ty)
                want = self._comp(want, p, "a copower let")
                eu = self.check(u, ctx.push(ty.val).bind_stoup(ty.comp), want, p + [1])
                return T.CopowLet(es, eu, xn, yn)
            case T.CPair(l, r) if isinstance(want, With):
                return T.CPair(self.check(l, ctx, want.left, p + [0]), self.check(r, ctx, want.right, p + [1]))
            case T.Pair(l, r) if isinstance(want, Prod):
                self._empty(ctx, p, "a value pair")
                return T.Pair(self.check(l, ctx, want.left, p + [0]), self.check(r, ctx, want.right, p + [1]))
            case T.CLam(a, body, n) if isinstance(want, Arrow) and _same(a, want.dom):
                return T.CLam(a, self.check(body, ctx.push(a), want.cod, p + [0]), n)
            case T.Lam(a, body, n) if isinstance(want, Fun) and _same(a, want.dom):
                self._empty(ctx, p, "fun")
                return T.Lam(a, self.check(body, ctx.push(a), want.cod, p + [0]), n)
            case T.LFun(a, body, n) if isinstance(want, Lin) and a == want.dom:
                self._empty(ctx, p, "lfun")
                return T.LFun(a, self.check(body, ctx.bind_stoup(a), want.cod, p + [0]), n)
            case T.BangIntro(u) if isinstance(want, Bang):
                self._empty(ctx, p, "!t")
                return T.BangIntro(self.check(u, ctx, want.arg, p + [0]))
            case T.CopowIntro(v, c) if isinstance(want, Copower):
                return T.CopowIntro(self.check(v, ctx.empty(), want.val, p + [0]),
                                    self.check(c, ctx, want.comp, p + [1]))
        et, got = self.synth(t, ctx, p)
        self._expect(got, want, p)
        return et


_CHECKER = Checker()


def synth(t: Term, ctx: Ctx, path=()) -> tuple[Term, Type]:
    return _CHECKER.synth(t, ctx, path)


def check(t: Term, ctx: Ctx, want: Type, path=()) -> Term:
    return _CHECKER.check(t, ctx, want, path)


def check_value(gamma, t: Term, expected: Optional[ValueType] = None) -> TypedTerm:
    """Check ``Γ ⊢ t : A``; ``gamma`` is a list of (name, type) pairs, outermost first."""
    gamma = tuple(gamma)
    ctx = ctx_of(gamma)
    if expected is None:
        et, ty = synth(t, ctx)
    else:
        et, ty = check(t, ctx, expected), unembed(expected)
    return TypedTerm(Judgement(gamma, None, t, ty), et)


def check_comp(gamma, stoup: tuple, t: Term, expected: Optional[CompType] = None) -> TypedTerm:
    """Check ``Γ | z:Ā ⊢ t : B̄``; ``stoup`` is a (name, type) pair."""
    gamma = tuple(gamma)
    ctx = ctx_of(gamma, stoup)
    if expected is None:
        et, ty = synth(t, ctx)
    else:
        et, ty = check(t, ctx, expected), unembed(expected)
    if not isinstance(ty, CompType):
        raise TypingError("sort-error", [], "a judgement with a stoup must have a computation type",
                          "computation type", ty)
    return TypedTerm(Judgement(gamma, stoup, t, ty), et)


def check_judgement(j: Judgement) -> TypedTerm:
    if j.stoup is None:
        return check_value(j.gamma, j.subject, j.ty)
    return check_comp(j.gamma, j.stoup, j.subject, j.ty)


def recheck(tt: TypedTerm, t: Optional[Term] = None) -> TypedTerm:
    """Re-check a (possibly rewritten) subject at the judgement of ``tt``."""
    t = tt.elaboration if t is None else t
    return check_judgement(Judgement(tt.gamma, tt.stoup, t, tt.ty))


def infer_type(t: Term, ctx: Ctx) -> Type:
    """Type of an elaborated, well-typed term without re-validating it."""
    match t:
        case T.Var(i):
            return unembed(ctx.gamma[i])
        case T.SVar(i):
            return ctx.stoups[i]
        case T.Star():
            return Unit()
        case T.Pair(l, r):
            return Prod(as_value(infer_type(l, ctx)), as_value(infer_type(r, ctx)))
        case T.Fst(u):
            return unembed(infer_type(u, ctx).left)
        case T.Snd(u):
            return unembed(infer_type(u, ctx).right)
        case T.Lam(a, b):
            return Fun(as_value(a), as_value(infer_type(b, ctx.push(a))))
        case T.App(f, _):
            fty = infer_type(f, ctx)
            return unembed(fty.cod)
        case T.CStar():
            return ONE
        case T.CPair(l, r):
            return With(infer_type(l, ctx), infer_type(r, ctx))
        case T.PFst(u):
            return infer_type(u, ctx).left
        case T.PSnd(u):
            return infer_type(u, ctx).right
        case T.CLam(a, b):
            return Arrow(as_value(a), infer_type(b, ctx.push(a)))
        case T.Top():
            return I
        case T.ILet(_, u):
            return infer_type(u, ctx)
        case T.BangIntro(u):
            return Bang(as_value(infer_type(u, ctx)))
        case T.BangLet(s, u):
            return infer_type(u, ctx.push(infer_type(s, ctx).arg))
        case T.CopowIntro(v, c):
            return Copower(as_value(infer_type(v, ctx)), infer_type(c, ctx))
        case T.CopowLet(s, u):
            ty = infer_type(s, ctx)
            return infer_type(u, ctx.push(ty.val).bind_stoup(ty.comp))
        case T.Absurd(ann, _) | T.Inl(ann, _) | T.Inr(ann, _):
            return ann
        case T.Case(s, l, _):
            return infer_type(l, ctx.bind_stoup(infer_type(s, ctx).left))
        case T.LFun(a, b):
            return Lin(a, infer_type(b, ctx.bind_stoup(a)))
    raise ValueError(f"cannot infer {t!r}")


def child_ctx(t: Term, i: int, ctx: Ctx) -> Ctx:
    """The context in which child ``i`` of ``t`` is typed."""
    match t:
        case T.Pair() | T.Fst() | T.Snd() | T.BangIntro():
            return ctx.empty()
        case T.Lam(a):
            return ctx.empty().push(a)
        case T.App(f, _):
            kind = t.kind or _app_kind(f, ctx)
            if kind == "v":
                return ctx.empty()
            if kind == "c":
                return ctx if i == 0 else ctx.empty()
            return ctx.empty() if i == 0 else ctx
        case T.CPair() | T.PFst() | T.PSnd() | T.Absurd() | T.Inl() | T.Inr():
            return ctx
        case T.CLam(a):
            return ctx.push(a)
        case T.ILet():
            return ctx if i == 0 else ctx.empty()
        case T.BangLet(s):
            return ctx if i == 0 else ctx.empty().push(infer_type(s, ctx).arg)
        case T.CopowIntro():
            return ctx.empty() if i == 0 else ctx
        case T.CopowLet(s):
            if i == 0:
                return ctx
            ty = infer_type(s, ctx)
            return ctx.push(ty.val).bind_stoup(ty.comp)
        case T.Case(s):
            if i == 0:
                return ctx
            ty = infer_type(s, ctx)
            return ctx.bind_stoup(ty.left if i == 1 else ty.right)
        case T.LFun(a):
            return ctx.bind_stoup(a)
    raise ValueError(f"no child {i} in {t!r}")


def _app_kind(f: Term, ctx: Ctx) -> str:
    fty = infer_type(f, Ctx(ctx.gamma, ctx.stoups, ctx.live, True))
    return {Fun: "v", Arrow: "c", Lin: "l"}[type(fty)]


def ctx_at(t: Term, path, ctx: Ctx) -> Ctx:
    for i in path:
        ctx = child_ctx(t, i, ctx)
        t = T.children(t)[i]
    return ctx


def shift_stoup(tt: TypedTerm) -> TypedTerm:
    """Move the stoup hypothesis into the value context (the shift property)."""
    if tt.stoup is None:
        raise ValueError("judgement has no stoup")
    name, ty = tt.stoup
    gamma = tuple(tt.gamma) + ((name, Embed(ty)),)
    t = T.stoup_to_value(tt.elaboration)
    return check_value(gamma, t, Embed(tt.ty) if isinstance(tt.ty, CompType) else tt.ty)


def weaken(tt: TypedTerm, position: int, name: str, ty: ValueType) -> TypedTerm:
    """Insert ``name:ty`` into Γ before index ``position`` (outermost-first)."""
    gamma = list(tt.gamma)
    gamma.insert(position, (name, ty))
    # variables declared after the insertion point keep their indices
    cutoff = len(tt.gamma) - position
    t = T.shift(tt.elaboration, 1, 0, cutoff, 0)
    j = Judgement(tuple(gamma), tt.stoup, t, tt.ty)
    return check_judgement(j)
