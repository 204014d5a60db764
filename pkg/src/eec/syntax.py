"""Surface syntax: tokenizer, parser and printer for types, terms and judgement files,
plus the JSON node encoding used for tool interop."""

from __future__ import annotations

import json
import re
from dataclasses import fields
from typing import Optional

from . import terms as T
from . import types as Ty
from .types import CompType, Embed, Type, ValueType, as_value


class ParseError(Exception):
    def __init__(self, message: str, pos: int = -1):
        super().__init__(message if pos < 0 else f"{message} (at offset {pos})")
        self.pos = pos


KEYWORDS = {"fun", "cfun", "lfun", "let", "top", "be", "in", "case", "of", "inl", "inr",
            "fst", "snd", "pfst", "psnd", "cstar", "absurd"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<sym>\(\*\)|\(\+\)|\|-|->|=>|-o(?![A-Za-z0-9_'])|[()<>,:|!*&\[\]])
  | (?P<cconst>[\^$][A-Za-z_][A-Za-z0-9_']*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<num>[0-9]+)
""", re.VERBOSE)


def tokenize(src: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", pos))
    return out


def _sort_error(msg, expected=None, actual=None):
    from .typecheck import TypingError
    return TypingError("sort-error", [], msg, expected, actual)


class Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0
        # innermost-first list of (name, 'v' | 's')
        self.scope: list[tuple[str, str]] = []

    # token helpers

    def peek(self, k: int = 0) -> tuple[str, str, int]:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str, k: int = 0) -> bool:
        kind, val, _ = self.peek(k)
        return val == text and kind in ("sym", "ident", "num")

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str):
        kind, val, pos = self.next()
        if val != text:
            raise ParseError(f"expected {text!r}, found {val or 'end of input'!r}", pos)

    def name(self) -> str:
        kind, val, pos = self.next()
        if kind != "ident" or val in KEYWORDS:
            raise ParseError(f"expected a name, found {val or 'end of input'!r}", pos)
        return val

    def done(self):
        kind, val, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {val!r}", pos)

    # types: arrows < (+) < & < x < prefix ! < atoms

    def type_(self) -> Type:
        lhs = self.type_plus()
        if self.at("->"):
            self.next()
            return Ty.Fun(as_value(lhs), as_value(self.type_()))
        if self.at("=>"):
            self.next()
            return Ty.Arrow(as_value(lhs), self._comp(self.type_(), "=>"))
        if self.at("-o"):
            self.next()
            return Ty.Lin(self._comp(lhs, "-o"), self._comp(self.type_(), "-o"))
        return lhs

    def _comp(self, ty: Type, where: str) -> CompType:
        if isinstance(ty, Embed):
            return ty.comp
        if not isinstance(ty, CompType):
            raise _sort_error(f"operand of {where} must be a computation type", "computation type", ty)
        return ty

    def type_plus(self) -> Type:
        lhs = self.type_with()
        if self.at("(+)"):
            self.next()
            return Ty.Plus(self._comp(lhs, "(+)"), self._comp(self.type_plus(), "(+)"))
        return lhs

    def type_with(self) -> Type:
        lhs = self.type_prod()
        if self.at("&"):
            self.next()
            return Ty.With(self._comp(lhs, "&"), self._comp(self.type_with(), "&"))
        return lhs

    def type_prod(self) -> Type:
        lhs = self.type_prefix()
        if self.at("x"):
            self.next()
            return Ty.Prod(as_value(lhs), as_value(self.type_prod()))
        return lhs

    def type_prefix(self) -> Type:
        if self.at("!"):
            self.next()
            arg = as_value(self.type_prefix())
            if self.at("(*)"):
                self.next()
                return Ty.Copower(arg, self._comp(self.type_prefix(), "(*)"))
            return Ty.Bang(arg)
        return self.type_atom()

    def type_atom(self) -> Type:
        kind, val, pos = self.next()
        if val == "(":
            ty = self.type_()
            self.expect(")")
            return ty
        if kind == "num" and val == "1":
            return Ty.UNIT
        if kind == "cconst":
            return Ty.CConst(val[1:])
        if kind == "ident":
            if val == "C1":
                return Ty.ONE
            if val == "C0":
                return Ty.ZERO
            if val == "I":
                return Ty.I
            if val[0].islower() and val != "x" and val not in KEYWORDS:
                return Ty.Const(val)
        raise ParseError(f"expected a type, found {val or 'end of input'!r}", pos)

    # terms

    def lookup(self, name: str) -> T.Term:
        nv = ns = 0
        for n, sort in self.scope:
            if n == name:
                return T.Var(nv, n) if sort == "v" else T.SVar(ns, n)
            if sort == "v":
                nv += 1
            else:
                ns += 1
        # free name: point past every binder so the checker reports it
        return T.Var(nv + 1000, name)

    def bind(self, *entries):
        self.scope[:0] = list(reversed(entries))

    def unbind(self, k: int):
        del self.scope[:k]

    def under(self, entries, parse):
        self.bind(*entries)
        try:
            return parse()
        finally:
            self.unbind(len(entries))

    GREEDY = ("fun", "cfun", "lfun", "let", "case")

    def term(self) -> T.Term:
        kind, val, pos = self.peek()
        if kind == "ident" and val in self.GREEDY:
            return self.greedy()
        return self.app()

    def greedy(self) -> T.Term:
        kind, val, pos = self.next()
        if val in ("fun", "cfun", "lfun"):
            x = self.name()
            self.expect(":")
            ty = self.type_plus()
            self.expect("->")
            if val == "lfun":
                body = self.under([(x, "s")], self.term)
                return T.LFun(self._comp(ty, "lfun"), body, x)
            body = self.under([(x, "v")], self.term)
            cls = T.Lam if val == "fun" else T.CLam
            return cls(as_value(ty), body, x)
        if val == "let":
            if self.at("top"):
                self.next()
                self.expect("be")
                s = self.term()
                self.expect("in")
                return T.ILet(s, self.term())
            self.expect("!")
            x = self.name()
            if self.at("(*)"):
                self.next()
                y = self.name()
                self.expect("be")
                s = self.term()
                self.expect("in")
                body = self.under([(x, "v"), (y, "s")], self.term)
                return T.CopowLet(s, body, x, y)
            self.expect("be")
            s = self.term()
            self.expect("in")
            return T.BangLet(s, self.under([(x, "v")], self.term), x)
        if val == "case":
            s = self.term()
            self.expect("of")
            self.expect("inl")
            x = self.name()
            self.expect("->")
            left = self.under([(x, "s")], self.term)
            self.expect("|")
            self.expect("inr")
            y = self.name()
            self.expect("->")
            right = self.under([(y, "s")], self.term)
            return T.Case(s, left, right, x, y)
        raise ParseError(f"unexpected {val!r}", pos)

    def starts_arg(self) -> bool:
        kind, val, _ = self.peek()
        if kind == "ident":
            return val not in KEYWORDS or val in ("fst", "snd", "pfst", "psnd", "inl", "inr", "absurd",
                                                  "cstar", "top") or val in self.GREEDY
        return val in ("(", "<", "!", "*")

    def app(self) -> T.Term:
        t = self.prefix()
        while self.starts_arg():
            if self.peek()[1] in self.GREEDY:
                return T.App(t, self.greedy())
            t = T.App(t, self.prefix())
        return t

    def _annot(self) -> Optional[CompType]:
        if self.at("["):
            self.next()
            ty = self.type_()
            self.expect("]")
            return self._comp(ty, "an injection or absurd annotation")
        return None

    def prefix(self) -> T.Term:
        kind, val, pos = self.peek()
        if kind == "ident" and val in ("fst", "snd", "pfst", "psnd"):
            self.next()
            cls = {"fst": T.Fst, "snd": T.Snd, "pfst": T.PFst, "psnd": T.PSnd}[val]
            return cls(self.prefix())
        if kind == "ident" and val in ("inl", "inr", "absurd"):
            self.next()
            ann = self._annot()
            cls = {"inl": T.Inl, "inr": T.Inr, "absurd": T.Absurd}[val]
            return cls(ann, self.prefix())
        if val == "!":
            self.next()
            arg = self.prefix()
            if self.at("(*)"):
                self.next()
                return T.CopowIntro(arg, self.prefix())
            return T.BangIntro(arg)
        return self.atom()

    def atom(self) -> T.Term:
        kind, val, pos = self.next()
        if val == "*" and kind == "sym":
            return T.STAR
        if kind == "ident":
            if val == "cstar":
                return T.CSTAR
            if val == "top":
                return T.TOP
            if val in self.GREEDY:
                self.i -= 1
                return self.greedy()
            if val not in KEYWORDS:
                return self.lookup(val)
        if val == "(":
            t = self.term()
            if self.at(","):
                self.next()
                u = self.term()
                self.expect(")")
                return T.Pair(t, u)
            self.expect(")")
            return t
        if val == "<":
            t = self.term()
            self.expect(",")
            u = self.term()
            self.expect(">")
            return T.CPair(t, u)
        raise ParseError(f"expected a term, found {val or 'end of input'!r}", pos)

    # judgements

    def judgement(self):
        from .typecheck import Judgement
        gamma = []
        if not self.at("|") and not self.at("|-"):
            while True:
                x = self.name()
                self.expect(":")
                gamma.append((x, as_value(self.type_())))
                if not self.at(","):
                    break
                self.next()
        stoup = None
        if self.at("|"):
            self.next()
            z = self.name()
            self.expect(":")
            stoup = (z, self._comp(self.type_(), "the stoup"))
        self.expect("|-")
        self.scope = [(n, "v") for n, _ in reversed(gamma)]
        if stoup is not None:
            self.scope.insert(0, (stoup[0], "s"))
        t = self.term()
        ty = None
        if self.at(":"):
            self.next()
            ty = self.type_()
            if isinstance(ty, Embed):
                ty = ty.comp
        self.done()
        return Judgement(tuple(gamma), stoup, t, ty)


def parse_type(src: str) -> Type:
    p = Parser(src)
    ty = p.type_()
    p.done()
    return ty.comp if isinstance(ty, Embed) else ty


def parse_term(src: str, gamma=(), stoup: Optional[str] = None) -> T.Term:
    """Parse a term; ``gamma`` lists value names outermost first."""
    p = Parser(src)
    p.scope = [(n if isinstance(n, str) else n[0], "v") for n in reversed(list(gamma))]
    if stoup is not None:
        p.scope.insert(0, (stoup if isinstance(stoup, str) else stoup[0], "s"))
    t = p.term()
    p.done()
    return t


def parse_judgement(src: str):
    return Parser(src).judgement()


def well_formed_type(raw) -> str:
    """Classify a raw type as 'value' or 'computation'; raises a sort error when ill-formed."""
    ty = type_from_json(raw) if isinstance(raw, dict) else parse_type(raw)
    return "computation" if isinstance(ty, CompType) else "value"


# printing

TY_ARROW, TY_PLUS, TY_WITH, TY_PROD, TY_PREFIX, TY_ATOM = range(6)


def show_type(ty: Type, prec: int = 0) -> str:
    def par(s, level):
        return f"({s})" if prec > level else s

    match ty:
        case Ty.Embed(c):
            return show_type(c, prec)
        case Ty.Const(n):
            return n
        case Ty.CConst(n):
            return "^" + n
        case Ty.Unit():
            return "1"
        case Ty.WithUnit():
            return "C1"
        case Ty.Zero():
            return "C0"
        case Ty.TensorUnit():
            return "I"
        case Ty.Fun(a, b) | Ty.Arrow(a, b) | Ty.Lin(a, b):
            op = {Ty.Fun: "->", Ty.Arrow: "=>", Ty.Lin: "-o"}[type(ty)]
            return par(f"{show_type(a, TY_PLUS)} {op} {show_type(b, TY_ARROW)}", TY_ARROW)
        case Ty.Plus(a, b):
            return par(f"{show_type(a, TY_WITH)} (+) {show_type(b, TY_PLUS)}", TY_PLUS)
        case Ty.With(a, b):
            return par(f"{show_type(a, TY_PROD)} & {show_type(b, TY_WITH)}", TY_WITH)
        case Ty.Prod(a, b):
            return par(f"{show_type(a, TY_PREFIX)} x {show_type(b, TY_PROD)}", TY_PROD)
        case Ty.Bang(a):
            return par(f"!{show_type(a, TY_PREFIX)}", TY_PREFIX)
        case Ty.Copower(a, b):
            left = show_type(a, TY_ATOM if isinstance(Ty.unembed(a), (Ty.Bang, Ty.Copower)) else TY_PREFIX)
            return par(f"!{left} (*) {show_type(b, TY_PREFIX)}", TY_PREFIX)
    raise TypeError(f"not a type: {ty!r}")


P_TERM, P_APP, P_PREFIX, P_ATOM = range(4)


def fresh_name(hint: str, used) -> str:
    if hint in KEYWORDS:
        hint = hint + "_"
    if hint not in used:
        return hint
    base = hint.rstrip("0123456789") or hint
    k = 1
    while f"{base}{k}" in used:
        k += 1
    return f"{base}{k}"


class Printer:
    def __init__(self, vnames: list[str], snames: list[str]):
        self.v = list(vnames)   # innermost first
        self.s = list(snames)

    def used(self):
        return set(self.v) | set(self.s)

    def with_v(self, name, f):
        self.v.insert(0, name)
        try:
            return f()
        finally:
            self.v.pop(0)

    def with_s(self, name, f):
        self.s.insert(0, name)
        try:
            return f()
        finally:
            self.s.pop(0)

    def show(self, t: T.Term, prec: int = P_TERM) -> str:
        def par(s, level):
            return f"({s})" if prec > level else s

        match t:
            case T.Var(i, n):
                return self.v[i] if i < len(self.v) else n
            case T.SVar(i, n):
                return self.s[i] if i < len(self.s) else n
            case T.Star():
                return "*"
            case T.CStar():
                return "cstar"
            case T.Top():
                return "top"
            case T.Pair(a, b):
                return f"({self.show(a)}, {self.show(b)})"
            case T.CPair(a, b):
                return f"<{self.show(a)}, {self.show(b)}>"
            case T.Fst(a) | T.Snd(a) | T.PFst(a) | T.PSnd(a):
                kw = {T.Fst: "fst", T.Snd: "snd", T.PFst: "pfst", T.PSnd: "psnd"}[type(t)]
                return par(f"{kw} {self.show(a, P_PREFIX)}", P_PREFIX)
            case T.Inl(ty, a) | T.Inr(ty, a) | T.Absurd(ty, a):
                kw = {T.Inl: "inl", T.Inr: "inr", T.Absurd: "absurd"}[type(t)]
                ann = "" if ty is None else f"[{show_type(ty)}]"
                return par(f"{kw}{ann} {self.show(a, P_PREFIX)}", P_PREFIX)
            case T.BangIntro(a):
                return par(f"!{self.show(a, P_PREFIX)}", P_PREFIX)
            case T.CopowIntro(a, b):
                lp = P_ATOM if isinstance(a, (T.BangIntro, T.CopowIntro)) else P_PREFIX
                return par(f"!{self.show(a, lp)} (*) {self.show(b, P_PREFIX)}", P_PREFIX)
            case T.App(f, a):
                return par(f"{self.show(f, P_APP)} {self.show(a, P_PREFIX)}", P_APP)
            case T.Lam(ty, body, n) | T.CLam(ty, body, n):
                kw = "fun" if isinstance(t, T.Lam) else "cfun"
                x = fresh_name(n, self.used())
                b = self.with_v(x, lambda: self.show(body))
                return par(f"{kw} {x}:{show_type(ty, TY_PLUS)} -> {b}", P_TERM)
            case T.LFun(ty, body, n):
                x = fresh_name(n, self.used())
                b = self.with_s(x, lambda: self.show(body))
                return par(f"lfun {x}:{show_type(ty, TY_PLUS)} -> {b}", P_TERM)
            case T.ILet(s, u):
                return par(f"let top be {self.show(s)} in {self.show(u)}", P_TERM)
            case T.BangLet(s, u, n):
                x = fresh_name(n, self.used())
                b = self.with_v(x, lambda: self.show(u))
                return par(f"let !{x} be {self.show(s)} in {b}", P_TERM)
            case T.CopowLet(s, u, xn, yn):
                x = fresh_name(xn, self.used())
                y = fresh_name(yn, self.used() | {x})
                b = self.with_v(x, lambda: self.with_s(y, lambda: self.show(u)))
                return par(f"let !{x} (*) {y} be {self.show(s)} in {b}", P_TERM)
            case T.Case(s, l, r, ln, rn):
                x = fresh_name(ln, self.used())
                y = fresh_name(rn, self.used())
                lb = self.with_s(x, lambda: self.show(l, P_APP))
                rb = self.with_s(y, lambda: self.show(r))
                return par(f"case {self.show(s)} of inl {x} -> {lb} | inr {y} -> {rb}", P_TERM)
        raise TypeError(f"not a term: {t!r}")


def show_term(t: T.Term, gamma=(), stoup=None) -> str:
    """Print ``t``; ``gamma`` lists the names of the free value variables, outermost first."""
    vn = [g if isinstance(g, str) else g[0] for g in reversed(list(gamma))]
    sn = [] if stoup is None else [stoup if isinstance(stoup, str) else stoup[0]]
    return Printer(vn, sn).show(t)


def show_judgement(j) -> str:
    ctx = ", ".join(f"{n}:{show_type(ty)}" for n, ty in j.gamma)
    st = "" if j.stoup is None else f" | {j.stoup[0]}:{show_type(j.stoup[1])}"
    head = (ctx + st).strip()
    body = show_term(j.subject, j.gamma, j.stoup)
    ty = "" if j.ty is None else f" : {show_type(j.ty)}"
    return f"{head} |- {body}{ty}" if head else f"|- {body}{ty}"


# JSON

_TYPE_CLASSES = {c.__name__: c for c in (Ty.Const, Ty.Unit, Ty.Prod, Ty.Fun, Ty.Embed, Ty.Lin,
                                         Ty.CConst, Ty.WithUnit, Ty.With, Ty.Arrow, Ty.TensorUnit,
                                         Ty.Bang, Ty.Copower, Ty.Zero, Ty.Plus)}
_TERM_CLASSES = {c.__name__: c for c in T.NODE_CLASSES}


def _to_json(x):
    if x is None or isinstance(x, (int, str)):
        return x
    return {"node": type(x).__name__, "args": [_to_json(getattr(x, f.name)) for f in fields(x)]}


def type_to_json(ty: Type) -> dict:
    return _to_json(ty)


def term_to_json(t: T.Term) -> dict:
    return _to_json(t)


def _from_json(obj, table):
    if obj is None or isinstance(obj, (int, str)):
        return obj
    name = obj.get("node")
    if name in _TYPE_CLASSES:
        cls = _TYPE_CLASSES[name]
    elif name in _TERM_CLASSES and table is _TERM_CLASSES:
        cls = _TERM_CLASSES[name]
    else:
        raise ParseError(f"unknown node {name!r}")
    args = [_from_json(a, table) for a in obj.get("args", [])]
    try:
        return cls(*args)
    except TypeError as e:
        raise ParseError(f"bad arguments for {name}: {e}") from None


def type_from_json(obj) -> Type:
    ty = _from_json(obj, _TYPE_CLASSES)
    _check_sorts(ty)
    return ty


def term_from_json(obj) -> T.Term:
    t = _from_json(obj, _TERM_CLASSES)
    if not isinstance(t, T.Term):
        raise ParseError("not a term node")
    return t


def _check_sorts(ty):
    """JSON input bypasses the parser, so re-validate the two-sorted grammar."""
    for f in fields(ty):
        want = f.type
        val = getattr(ty, f.name)
        if want in ("ValueType", ValueType) and not isinstance(val, ValueType):
            raise _sort_error(f"{type(ty).__name__}.{f.name} must be a value type", "value type", val)
        if want in ("CompType", CompType) and not isinstance(val, CompType):
            raise _sort_error(f"{type(ty).__name__}.{f.name} must be a computation type",
                              "computation type", val)
        if isinstance(val, (ValueType, CompType)):
            _check_sorts(val)


def judgement_to_json(j) -> dict:
    return {
        "gamma": [[n, type_to_json(ty)] for n, ty in j.gamma],
        "stoup": None if j.stoup is None else [j.stoup[0], type_to_json(j.stoup[1])],
        "term": term_to_json(j.subject),
        "type": None if j.ty is None else type_to_json(j.ty),
    }


def judgement_from_json(obj):
    from .typecheck import Judgement
    gamma = tuple((n, type_from_json(ty)) for n, ty in obj.get("gamma", []))
    st = obj.get("stoup")
    stoup = None if st is None else (st[0], type_from_json(st[1]))
    ty = obj.get("type")
    return Judgement(gamma, stoup, term_from_json(obj["term"]), None if ty is None else type_from_json(ty))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
