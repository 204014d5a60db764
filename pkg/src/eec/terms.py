"""Nameless EEC terms.

Two de Bruijn namespaces are kept apart: ``Var`` indices count value binders
(``fun``, ``cfun``, ``let !x``, the ``x`` of a copower let) and ``SVar`` indices
count stoup binders (``lfun``, case branches, the ``y`` of a copower let).
Binder names are printing hints only and take no part in equality, so two
alpha-equivalent terms compare equal with ``==``.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Callable, ClassVar, Optional

from .types import CompType, ValueType

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class Term:
    __slots__ = ()
    # (field name, value binders, stoup binders) for each subterm, in path order
    KIDS: ClassVar[tuple] = ()

    def __str__(self) -> str:
        from .syntax import show_term
        return show_term(self)


def _kids(*spec):
    return tuple(spec)


@dataclass(frozen=True, slots=True)
class Var(Term):
    index: int
    name: str = field(default="x", compare=False)


@dataclass(frozen=True, slots=True)
class SVar(Term):
    index: int
    name: str = field(default="z", compare=False)


@dataclass(frozen=True, slots=True)
class Star(Term):
    pass


@dataclass(frozen=True, slots=True)
class Pair(Term):
    left: Term
    right: Term
    KIDS = _kids(("left", 0, 0), ("right", 0, 0))


@dataclass(frozen=True, slots=True)
class Fst(Term):
    arg: Term
    KIDS = _kids(("arg", 0, 0))


@dataclass(frozen=True, slots=True)
class Snd(Term):
    arg: Term
    KIDS = _kids(("arg", 0, 0))


@dataclass(frozen=True, slots=True)
class Lam(Term):
    ty: ValueType
    body: Term
    name: str = field(default="x", compare=False)
    KIDS = _kids(("body", 1, 0))


@dataclass(frozen=True, slots=True)
class App(Term):
    """Application; ``kind`` records which rule the checker chose ('v', 'c' or 'l')."""
    fn: Term
    arg: Term
    kind: Optional[str] = field(default=None, compare=False)
    KIDS = _kids(("fn", 0, 0), ("arg", 0, 0))


@dataclass(frozen=True, slots=True)
class CStar(Term):
    pass


@dataclass(frozen=True, slots=True)
class CPair(Term):
    left: Term
    right: Term
    KIDS = _kids(("left", 0, 0), ("right", 0, 0))


@dataclass(frozen=True, slots=True)
class PFst(Term):
    arg: Term
    KIDS = _kids(("arg", 0, 0))


@dataclass(frozen=True, slots=True)
class PSnd(Term):
    arg: Term
    KIDS = _kids(("arg", 0, 0))


@dataclass(frozen=True, slots=True)
class CLam(Term):
    ty: ValueType
    body: Term
    name: str = field(default="x", compare=False)
    KIDS = _kids(("body", 1, 0))


@dataclass(frozen=True, slots=True)
class Top(Term):
    pass


@dataclass(frozen=True, slots=True)
class ILet(Term):
    scrut: Term
    body: Term
    KIDS = _kids(("scrut", 0, 0), ("body", 0, 0))


@dataclass(frozen=True, slots=True)
class BangIntro(Term):
    arg: Term
    KIDS = _kids(("arg", 0, 0))


@dataclass(frozen=True, slots=True)
class BangLet(Term):
    scrut: Term
    body: Term
    name: str = field(default="x", compare=False)
    KIDS = _kids(("scrut", 0, 0), ("body", 1, 0))


@dataclass(frozen=True, slots=True)
class CopowIntro(Term):
    val: Term
    comp: Term
    KIDS = _kids(("val", 0, 0), ("comp", 0, 0))


@dataclass(frozen=True, slots=True)
class CopowLet(Term):
    scrut: Term
    body: Term
    xname: str = field(default="x", compare=False)
    yname: str = field(default="y", compare=False)
    KIDS = _kids(("scrut", 0, 0), ("body", 1, 1))


@dataclass(frozen=True, slots=True)
class Absurd(Term):
    ty: Optional[CompType]
    arg: Term
    KIDS = _kids(("arg", 0, 0))


@dataclass(frozen=True, slots=True)
class Inl(Term):
    """Left injection; ``ty`` is the whole sum type when known."""
    ty: Optional[CompType]
    arg: Term
    KIDS = _kids(("arg", 0, 0))


@dataclass(frozen=True, slots=True)
class Inr(Term):
    ty: Optional[CompType]
    arg: Term
    KIDS = _kids(("arg", 0, 0))


@dataclass(frozen=True, slots=True)
class Case(Term):
    scrut: Term
    left: Term
    right: Term
    lname: str = field(default="x", compare=False)
    rname: str = field(default="y", compare=False)
    KIDS = _kids(("scrut", 0, 0), ("left", 0, 1), ("right", 0, 1))


@dataclass(frozen=True, slots=True)
class LFun(Term):
    ty: CompType
    body: Term
    name: str = field(default="z", compare=False)
    KIDS = _kids(("body", 0, 1))


NODE_CLASSES = (Var, SVar, Star, Pair, Fst, Snd, Lam, App, CStar, CPair, PFst, PSnd, CLam, Top,
                ILet, BangIntro, BangLet, CopowIntro, CopowLet, Absurd, Inl, Inr, Case, LFun)

STAR = Star()
CSTAR = CStar()
TOP = Top()


# generic structure

def children(t: Term) -> list[Term]:
    return [getattr(t, f) for f, _, _ in t.KIDS]


def child_binders(t: Term) -> list[tuple[int, int]]:
    return [(dv, ds) for _, dv, ds in t.KIDS]


def with_children(t: Term, new: list[Term]) -> Term:
    kw = {}
    for (f, _, _), c in zip(t.KIDS, new):
        kw[f] = c
    vals = [kw.get(f, getattr(t, f)) for f in t.__dataclass_fields__]
    return type(t)(*vals)


def map_vars(t: Term,
             on_var: Callable[[Var, int, int], Term],
             on_svar: Callable[[SVar, int, int], Term],
             dv: int = 0, ds: int = 0) -> Term:
    """Rebuild ``t`` replacing every variable via the callbacks.

    The callbacks receive the number of value and stoup binders crossed.
    """
    if isinstance(t, Var):
        return on_var(t, dv, ds)
    if isinstance(t, SVar):
        return on_svar(t, dv, ds)
    kids = t.KIDS
    if not kids:
        return t
    new = []
    changed = False
    for f, bv, bs in kids:
        c = getattr(t, f)
        nc = map_vars(c, on_var, on_svar, dv + bv, ds + bs)
        changed = changed or nc is not c
        new.append(nc)
    return with_children(t, new) if changed else t


def shift(t: Term, dv: int = 0, ds: int = 0, cv: int = 0, cs: int = 0) -> Term:
    """Add ``dv``/``ds`` to free value/stoup indices at or above the cutoffs."""
    if dv == 0 and ds == 0:
        return t

    def var(v: Var, bv: int, bs: int) -> Term:
        return Var(v.index + dv, v.name) if v.index >= cv + bv else v

    def svar(v: SVar, bv: int, bs: int) -> Term:
        return SVar(v.index + ds, v.name) if v.index >= cs + bs else v

    return map_vars(t, var, svar)


def subst_value(t: Term, u: Term, x: int = 0) -> Term:
    """``t[u/x]`` for the value variable with index ``x``.

    ``u`` lives in the context of ``t`` with ``x`` removed, so variables above
    ``x`` move down by one.
    """
    def var(v: Var, bv: int, bs: int) -> Term:
        i = v.index
        if i == x + bv:
            return shift(u, bv, bs)
        if i > x + bv:
            return Var(i - 1, v.name)
        return v

    return map_vars(t, var, lambda s, bv, bs: s)


def subst_stoup(t: Term, u: Term, z: int = 0) -> Term:
    """``t[u/z]`` for the stoup variable with index ``z``.

    The stoup of ``u`` (if any) becomes the stoup of the result.
    """
    def svar(v: SVar, bv: int, bs: int) -> Term:
        i = v.index
        if i == z + bs:
            return shift(u, bv, bs)
        if i > z + bs:
            return SVar(i - 1, v.name)
        return v

    return map_vars(t, lambda v, bv, bs: v, svar)


def plug_stoup(t: Term, u: Term) -> Term:
    """Replace the current stoup variable of ``t`` by ``u`` (same scope)."""
    return subst_stoup(t, u, 0)


def subst_many(t: Term, sigma: dict[int, Term]) -> Term:
    """Simultaneous substitution of free value variables, no binder removal."""
    def var(v: Var, bv: int, bs: int) -> Term:
        j = v.index - bv
        if j >= 0 and j in sigma:
            return shift(sigma[j], bv, bs)
        return v

    return map_vars(t, var, lambda s, bv, bs: s)


def stoup_to_value(t: Term) -> Term:
    """Turn the free stoup variable into value variable 0 (used by the shift property)."""
    t = shift(t, 1, 0)

    def svar(v: SVar, bv: int, bs: int) -> Term:
        if v.index == bs:
            return Var(bv, v.name)
        if v.index > bs:
            return SVar(v.index - 1, v.name)
        return v

    return map_vars(t, lambda v, bv, bs: v, svar)


def free_values(t: Term) -> set[int]:
    out: set[int] = set()

    def var(v: Var, bv: int, bs: int) -> Term:
        if v.index >= bv:
            out.add(v.index - bv)
        return v

    map_vars(t, var, lambda s, bv, bs: s)
    return out


def free_stoups(t: Term) -> set[int]:
    out: set[int] = set()

    def svar(v: SVar, bv: int, bs: int) -> Term:
        if v.index >= bs:
            out.add(v.index - bs)
        return v

    map_vars(t, lambda v, bv, bs: v, svar)
    return out


def occurrences(t: Term, x: int = 0) -> int:
    n = 0

    def var(v: Var, bv: int, bs: int) -> Term:
        nonlocal n
        if v.index == x + bv:
            n += 1
        return v

    map_vars(t, var, lambda s, bv, bs: s)
    return n


def stoup_occurrences(t: Term, z: int = 0) -> int:
    n = 0

    def svar(v: SVar, bv: int, bs: int) -> Term:
        nonlocal n
        if v.index == z + bs:
            n += 1
        return v

    map_vars(t, lambda v, bv, bs: v, svar)
    return n


def size(t: Term) -> int:
    return 1 + sum(size(c) for c in children(t))


def alpha_eq(t: Term, u: Term) -> bool:
    return t == u


def subterm(t: Term, path) -> Term:
    for i in path:
        t = getattr(t, t.KIDS[i][0])
    return t


def replace_at(t: Term, path, new: Term) -> Term:
    if not path:
        return new
    i = path[0]
    kids = children(t)
    kids[i] = replace_at(kids[i], path[1:], new)
    return with_children(t, kids)


def binders_along(t: Term, path) -> list[tuple[Term, int]]:
    """The nodes crossed by ``path`` paired with the child index taken."""
    out = []
    for i in path:
        out.append((t, i))
        t = getattr(t, t.KIDS[i][0])
    return out


def node_name(t: Term) -> str:
    return type(t).__name__


def iter_nodes(t: Term, path=()):
    yield path, t
    for i, c in enumerate(children(t)):
        yield from iter_nodes(c, path + (i,))
