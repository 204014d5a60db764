"""Single-step rewrite enumeration and the bounded bidirectional search.

Directions that would need to invent terms out of nothing are left out: the
backward unit-eta laws (``*`` to an arbitrary term of type 1), backward beta
(un-substitution) and forward zero-eta (``absurd t`` to an arbitrary context).
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from . import terms as T
from .normalize import hoist_bindings, linear_child
from .rules import Step, beta_step, eta_step, instantiate, pure_let_eta
from .terms import Term, shift
from .typecheck import Ctx, TypingError, check, child_ctx, ctx_of, infer_type
from .types import (Arrow, Fun, Lin, Prod, Unit, With, WithUnit, Zero, is_positive, unembed)

DEFAULT_SEARCH_FUEL = 20_000


def _nodes(t: Term, ctx: Ctx, path=()):
    yield path, t, ctx
    for i, c in enumerate(T.children(t)):
        yield from _nodes(c, child_ctx(t, i, ctx), path + (i,))


def _stoup_positions(t: Term, ctx: Ctx, rel=()):
    """Positions below ``t`` that receive its stoup without crossing a binder (both halves of <,>)."""
    yield rel, t
    if isinstance(t, T.CPair):
        for i, c in enumerate(T.children(t)):
            yield from _stoup_positions(c, ctx, rel + (i,))
        return
    i = linear_child(t, ctx)
    if i is not None:
        yield from _stoup_positions(T.children(t)[i], child_ctx(t, i, ctx), rel + (i,))


def _replace_all(t: Term, ctx: Ctx, pattern: Term, hole: Term) -> tuple[Term, int]:
    n = 0
    for rel, s in sorted(_stoup_positions(t, ctx), key=lambda p: -len(p[0])):
        if s == pattern:
            t = T.replace_at(t, rel, hole)
            n += 1
    return t, n


def _abstract_let(t: Term, ctx: Ctx) -> Optional[tuple[str, dict]]:
    """Recognise ``let p be s in u[p/y]`` for some context ``u``, i.e. a forward let-eta redex."""
    hole = T.SVar(0, "y")
    match t:
        case T.ILet(s, b):
            bctx = child_ctx(t, 1, ctx)
            b2, n = _replace_all(shift(b, 0, 1), bctx, T.TOP, hole)
            if n or T.stoup_occurrences(b) == 0:
                return "I-leteta", {"t": s, "u": b2}
        case T.BangLet(s, b, x):
            bctx = child_ctx(t, 1, ctx)
            b2, n = _replace_all(shift(b, 0, 1), bctx, T.BangIntro(T.Var(0)), hole)
            if 0 not in T.free_values(b2):
                return "bang-leteta", {"t": s, "u": shift(b2, -1, 0), "x": x}
        case T.CopowLet(s, b, x, y):
            bctx = child_ctx(t, 1, ctx)
            uses = T.stoup_occurrences(b)
            b2, n = _replace_all(b, bctx, T.CopowIntro(T.Var(0), T.SVar(0)), hole)
            if n == uses and 0 not in T.free_values(b2):
                return "tensor-leteta", {"t": s, "u": shift(b2, -1, 0), "x": x, "y": y}
        case T.Case(s, l, r, x, y):
            sty = infer_type(s, child_ctx(t, 0, ctx))
            lu, nl = _replace_all(l, child_ctx(t, 1, ctx), T.Inl(sty, T.SVar(0)), hole)
            ru, nr = _replace_all(r, child_ctx(t, 2, ctx), T.Inr(sty, T.SVar(0)), hole)
            if nl == T.stoup_occurrences(l) and nr == T.stoup_occurrences(r) and lu == ru:
                return "plus-leteta", {"t": s, "u": lu, "S": sty, "x": x, "y": y}
    return None


def local_rewrites(sub: Term, ctx: Ctx) -> list[tuple[str, str, dict]]:
    """All (rule, direction, bindings) applicable at the root of ``sub``."""
    out = []
    for r in (beta_step(sub), eta_step(sub), pure_let_eta(sub), _abstract_let(sub, ctx)):
        if r is not None:
            out.append((r[0], "fwd", r[1]))
    ty = unembed(infer_type(sub, ctx))
    match ty:
        case Unit() if not isinstance(sub, T.Star):
            out.append(("V-1eta", "fwd", {"t": sub}))
        case WithUnit() if not isinstance(sub, T.CStar):
            out.append(("C-1eta", "fwd", {"t": sub}))
        case Prod():
            out.append(("V-xeta", "bwd", {"t": sub}))
        case With():
            out.append(("C-witheta", "bwd", {"t": sub}))
        case Fun(a, _):
            out.append(("V-funeta", "bwd", {"A": a, "t": sub, "x": "x"}))
        case Arrow(a, _):
            out.append(("C-arreta", "bwd", {"A": a, "t": sub, "x": "x"}))
        case Lin(a, _):
            out.append(("lin-eta", "bwd", {"A": a, "t": sub, "z": "k"}))
    # pull a positive subterm in stoup position out as a let (backward let-eta)
    root_ty = infer_type(sub, ctx)
    for rel, s in _stoup_positions(sub, ctx):
        if isinstance(sub, T.CPair) and rel:
            continue
        sctx = _ctx_along(sub, rel, ctx)
        s_ty = infer_type(s, sctx)
        if is_positive(s_ty) and not (rel == () and isinstance(s_ty, Zero)):
            rule, b = hoist_bindings(sub, rel, s, s_ty, root_ty)
            out.append((rule, "bwd", b))
    return out


def _ctx_along(t: Term, rel, ctx: Ctx) -> Ctx:
    for i in rel:
        ctx = child_ctx(t, i, ctx)
        t = T.children(t)[i]
    return ctx


def rewrite_candidates(term, ctx: Optional[Ctx] = None, ty=None, typecheck: bool = True) -> list[tuple[Step, Term]]:
    """Every single-step rewrite of ``term``, sorted by (path, rule, direction).

    ``term`` may also be a checked judgement, in which case ``ctx`` and ``ty`` come from it.
    """
    if ctx is None:
        tt = term
        term, ctx, ty = tt.elaboration, ctx_of(tt.gamma, tt.stoup), tt.ty
    out = []
    seen = set()
    for path, sub, sctx in _nodes(term, ctx):
        for rule, direction, b in local_rewrites(sub, sctx):
            lhs, rhs = instantiate(rule, b)
            src, dst = (lhs, rhs) if direction == "fwd" else (rhs, lhs)
            if src != sub or dst == sub:
                continue
            new = T.replace_at(term, path, dst)
            if typecheck:
                try:
                    check(new, ctx, ty)
                except TypingError:
                    continue
            key = (path, rule, direction, new)
            if key in seen:
                continue
            seen.add(key)
            out.append((Step(path, rule, direction, b), new))
    out.sort(key=lambda c: (c[0].path, c[0].rule, c[0].direction))
    return out


def bidirectional_search(a: Term, b: Term, ctx: Ctx, ty, fuel: int = DEFAULT_SEARCH_FUEL):
    """Breadth-first search from both ends; returns (steps or None, nodes generated)."""
    if a == b:
        return [], 0
    seen = [{a: None}, {b: None}]      # term -> (previous term, step)
    frontier = [deque([a]), deque([b])]
    generated = 0
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        for _ in range(len(frontier[side])):
            cur = frontier[side].popleft()
            for step, new in rewrite_candidates(cur, ctx, ty):
                if new in seen[side]:
                    continue
                seen[side][new] = (cur, step)
                generated += 1
                if new in seen[1 - side]:
                    return _join(seen, new, side), generated
                if generated >= fuel:
                    return None, generated
                frontier[side].append(new)
    return None, generated


def _chain(seen: dict, t: Term) -> list[Step]:
    steps = []
    while seen[t] is not None:
        prev, step = seen[t]
        steps.append(step)
        t = prev
    steps.reverse()
    return steps


def _join(seen, meet: Term, side: int) -> list[Step]:
    left = _chain(seen[0], meet)
    right = _chain(seen[1], meet)
    return left + [s.flipped() for s in reversed(right)]


# --- empty stoups ------------------------------------------------------------------------
# Forward zero-eta would have to invent its context, so the search never takes it.  When one
# side destructures the stoup down to an ``absurd`` of it, the other side can be brought to
# the same shape by let-eta expansions followed by zero-eta, using the other side as the
# context.  The steps are replayed like any other trace.

def _as_hole(t: Term) -> Term:
    """View ``t`` as a context whose hole is its stoup variable 0."""
    return shift(t, 0, 1, 0, 1)


def _collapse(target: Term, src: Term, ctx: Ctx, path=()) -> Optional[list[Step]]:
    """Steps rewriting ``src`` into ``target`` when ``target`` only eliminates an empty stoup."""
    if ctx.stoup is None:
        return None
    z = T.SVar(0)
    match target:
        case T.Absurd(c, s) if s == z or T.stoup_occurrences(src) == 0:
            # with the stoup unused, ``src`` is a context that ignores its hole
            return [Step(path, "zero-eta", "bwd", {"C": c, "t": s, "u": _as_hole(src)})]
        case T.CopowLet(T.SVar(0), body, x, y):
            b = {"t": z, "u": _as_hole(src), "x": x, "y": y}
            expanded, _ = instantiate("tensor-leteta", b)
            rest = _collapse(body, expanded.body, child_ctx(target, 1, ctx), path + (1,))
            return None if rest is None else [Step(path, "tensor-leteta", "bwd", b)] + rest
        case T.Case(T.SVar(0), left, right, x, y):
            b = {"t": z, "u": _as_hole(src), "S": ctx.stoup, "x": x, "y": y}
            expanded, _ = instantiate("plus-leteta", b)
            ls = _collapse(left, expanded.left, child_ctx(target, 1, ctx), path + (1,))
            rs = _collapse(right, expanded.right, child_ctx(target, 2, ctx), path + (2,))
            if ls is None or rs is None:
                return None
            return [Step(path, "plus-leteta", "bwd", b)] + ls + rs
    return None


def empty_stoup_route(a: Term, b: Term, ctx: Ctx, path=()) -> Optional[list[Step]]:
    """Steps from ``a`` to ``b`` where they differ only below eliminations of an empty stoup."""
    if a == b:
        return []
    ka, kb = T.children(a), T.children(b)
    if type(a) is type(b) and ka and T.with_children(a, kb) == b:
        steps = []
        for i, (ca, cb) in enumerate(zip(ka, kb)):
            sub = empty_stoup_route(ca, cb, child_ctx(a, i, ctx), path + (i,))
            if sub is None:
                return None
            steps += sub
        return steps
    fwd = _collapse(b, a, ctx, path)
    if fwd is not None:
        return fwd
    back = _collapse(a, b, ctx, path)
    if back is not None:
        return [s.flipped() for s in reversed(back)]
    return None
