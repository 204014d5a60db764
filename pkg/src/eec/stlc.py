"""Simply-typed lambda calculus: the source language of the four base translations."""

from __future__ import annotations

from dataclasses import dataclass, field


class SType:
    __slots__ = ()

    def __str__(self) -> str:
        return show_stype(self)


@dataclass(frozen=True, slots=True)
class SConst(SType):
    name: str


@dataclass(frozen=True, slots=True)
class SUnit(SType):
    pass


@dataclass(frozen=True, slots=True)
class SProd(SType):
    left: SType
    right: SType


@dataclass(frozen=True, slots=True)
class SFun(SType):
    dom: SType
    cod: SType


class STerm:
    __slots__ = ()

    def __str__(self) -> str:
        return show_sterm(self)


@dataclass(frozen=True, slots=True)
class SVarT(STerm):
    index: int
    name: str = field(default="x", compare=False)


@dataclass(frozen=True, slots=True)
class SStar(STerm):
    pass


@dataclass(frozen=True, slots=True)
class SPair(STerm):
    left: STerm
    right: STerm


@dataclass(frozen=True, slots=True)
class SFst(STerm):
    arg: STerm


@dataclass(frozen=True, slots=True)
class SSnd(STerm):
    arg: STerm


@dataclass(frozen=True, slots=True)
class SLam(STerm):
    ty: SType
    body: STerm
    name: str = field(default="x", compare=False)


@dataclass(frozen=True, slots=True)
class SApp(STerm):
    fn: STerm
    arg: STerm


class StlcTypeError(Exception):
    pass


def check_stlc(theta: list[SType], m: STerm) -> SType:
    """Type of ``m`` under ``theta`` (index 0 is the innermost variable)."""
    match m:
        case SVarT(i):
            if i >= len(theta):
                raise StlcTypeError(f"unbound variable #{i}")
            return theta[i]
        case SStar():
            return SUnit()
        case SPair(l, r):
            return SProd(check_stlc(theta, l), check_stlc(theta, r))
        case SFst(t) | SSnd(t):
            ty = check_stlc(theta, t)
            if not isinstance(ty, SProd):
                raise StlcTypeError(f"projection from non-product {ty}")
            return ty.left if isinstance(m, SFst) else ty.right
        case SLam(ty, body):
            return SFun(ty, check_stlc([ty] + list(theta), body))
        case SApp(f, a):
            fty = check_stlc(theta, f)
            aty = check_stlc(theta, a)
            if not isinstance(fty, SFun):
                raise StlcTypeError(f"application of non-function {fty}")
            if fty.dom != aty:
                raise StlcTypeError(f"argument mismatch: expected {fty.dom}, got {aty}")
            return fty.cod
    raise StlcTypeError(f"not a term: {m!r}")


def stype_size(ty: SType) -> int:
    match ty:
        case SProd(a, b) | SFun(a, b):
            return 1 + stype_size(a) + stype_size(b)
    return 1


def all_stypes(size: int, consts=("a",)) -> list[SType]:
    """Every simple type with exactly ``size`` constructors."""
    if size == 1:
        return [SConst(c) for c in consts] + [SUnit()]
    out: list[SType] = []
    for k in range(1, size - 1):
        for a in all_stypes(k, consts):
            for b in all_stypes(size - 1 - k, consts):
                out.append(SProd(a, b))
                out.append(SFun(a, b))
    return out


def sshift(m: STerm, d: int, cut: int = 0) -> STerm:
    match m:
        case SVarT(i, n):
            return SVarT(i + d, n) if i >= cut else m
        case SStar():
            return m
        case SPair(l, r):
            return SPair(sshift(l, d, cut), sshift(r, d, cut))
        case SFst(t):
            return SFst(sshift(t, d, cut))
        case SSnd(t):
            return SSnd(sshift(t, d, cut))
        case SLam(ty, b, n):
            return SLam(ty, sshift(b, d, cut + 1), n)
        case SApp(f, a):
            return SApp(sshift(f, d, cut), sshift(a, d, cut))
    raise TypeError(m)


def ssubst(m: STerm, u: STerm, x: int = 0) -> STerm:
    match m:
        case SVarT(i, n):
            if i == x:
                return u
            return SVarT(i - 1, n) if i > x else m
        case SStar():
            return m
        case SPair(l, r):
            return SPair(ssubst(l, u, x), ssubst(r, u, x))
        case SFst(t):
            return SFst(ssubst(t, u, x))
        case SSnd(t):
            return SSnd(ssubst(t, u, x))
        case SLam(ty, b, n):
            return SLam(ty, ssubst(b, sshift(u, 1), x + 1), n)
        case SApp(f, a):
            return SApp(ssubst(f, u, x), ssubst(a, u, x))
    raise TypeError(m)


def sfree(m: STerm, depth: int = 0) -> set[int]:
    match m:
        case SVarT(i):
            return {i - depth} if i >= depth else set()
        case SStar():
            return set()
        case SPair(l, r) | SApp(l, r):
            return sfree(l, depth) | sfree(r, depth)
        case SFst(t) | SSnd(t):
            return sfree(t, depth)
        case SLam(_, b):
            return sfree(b, depth + 1)
    raise TypeError(m)


def ssize(m: STerm) -> int:
    match m:
        case SPair(l, r) | SApp(l, r):
            return 1 + ssize(l) + ssize(r)
        case SFst(t) | SSnd(t) | SLam(_, t):
            return 1 + ssize(t)
    return 1


def show_stype(ty: SType, prec: int = 0) -> str:
    match ty:
        case SConst(n):
            return n
        case SUnit():
            return "1"
        case SProd(a, b):
            s = f"{show_stype(a, 2)} x {show_stype(b, 2)}"
            return f"({s})" if prec > 1 else s
        case SFun(a, b):
            s = f"{show_stype(a, 1)} -> {show_stype(b, 0)}"
            return f"({s})" if prec > 0 else s
    raise TypeError(ty)


def show_sterm(m: STerm, names: list[str] | None = None, prec: int = 0) -> str:
    names = list(names or [])
    match m:
        case SVarT(i, n):
            return names[i] if i < len(names) else f"{n}#{i}"
        case SStar():
            return "*"
        case SPair(l, r):
            return f"({show_sterm(l, names)}, {show_sterm(r, names)})"
        case SFst(t) | SSnd(t):
            kw = "fst" if isinstance(m, SFst) else "snd"
            s = f"{kw} {show_sterm(t, names, 2)}"
            return f"({s})" if prec > 1 else s
        case SLam(ty, b, n):
            x = _fresh(n, names)
            s = f"fun {x}:{show_stype(ty)} -> {show_sterm(b, [x] + names)}"
            return f"({s})" if prec > 0 else s
        case SApp(f, a):
            s = f"{show_sterm(f, names, 1)} {show_sterm(a, names, 2)}"
            return f"({s})" if prec > 1 else s
    raise TypeError(m)


def _fresh(hint: str, used) -> str:
    if hint not in used:
        return hint
    k = 1
    while f"{hint}{k}" in used:
        k += 1
    return f"{hint}{k}"
