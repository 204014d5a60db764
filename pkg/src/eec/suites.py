"""Executable theorem suites with deterministic text and JSON reports."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

from . import terms as T
from .equality import check_eq
from .gen import GenConfig, GenFailure, TypeGen, gen_equal_pair, gen_in_ctx, gen_stlc, gen_term
from .rules import RULE_IDS, instantiate
from .stlc import SApp, SFun, SLam, SStar, SUnit, SVarT, all_stypes
from .syntax import parse_judgement, show_term
from .terms import App, SVar, Var
from .translate import (cbn_term, cbn_type, cbv_term, cbv_type, fullness_witness, involution_rhs, iso_comp,
                        iso_value, lincps_cbn_term, lincps_cbn_type, lincps_cbv_term, lincps_cbv_type,
                        result_type, self_cterm, self_ctype, self_term, self_vterm, self_vtype)
from .typecheck import Ctx, Judgement, TypedTerm, TypingError, check_comp, check_judgement, check_value, weaken
from .types import (Arrow, Bang, CompType, Copower, Embed, Fun, I, Lin, ONE, Plus, Prod, UNIT, With, ZERO,
                    as_value, comp_types, unembed, value_types)

SUITES = ("typing", "substitution", "axioms", "soundness-self", "involution", "iso", "recovering",
          "fullness", "lincps-soundness", "counterexample")

RESULTS = ("^r", "I")


@dataclass
class CaseResult:
    index: int
    name: str
    verdict: str             # 'pass', 'fail' or 'unknown'
    detail: str = ""

    def to_json(self) -> dict:
        return {"index": self.index, "name": self.name, "verdict": self.verdict, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    cases: list = field(default_factory=list)
    max_unknown: float = 0          # a count, or a fraction of the cases when below 1
    wall_time: float = 0.0
    notes: list = field(default_factory=list)

    def add(self, name: str, verdict: str, detail: str = "") -> None:
        self.cases.append(CaseResult(len(self.cases), name, verdict, detail))

    @property
    def totals(self) -> dict:
        out = {"pass": 0, "fail": 0, "unknown": 0}
        for c in self.cases:
            out[c.verdict] += 1
        return out

    @property
    def unknown_allowed(self) -> int:
        if 0 < self.max_unknown < 1:
            return int(self.max_unknown * len(self.cases))
        return int(self.max_unknown)

    @property
    def ok(self) -> bool:
        t = self.totals
        return t["fail"] == 0 and t["unknown"] <= self.unknown_allowed

    def to_json(self, timing: bool = False) -> dict:
        d = {"suite": self.suite, "ok": self.ok, "totals": self.totals,
             "unknown_allowed": self.unknown_allowed, "notes": self.notes,
             "cases": [c.to_json() for c in self.cases]}
        if timing:
            d["wall_time"] = round(self.wall_time, 3)
        return d

    def to_text(self, verbose: bool = False, timing: bool = False) -> str:
        t = self.totals
        lines = [f"suite {self.suite}: {'ok' if self.ok else 'FAILED'} "
                 f"({t['pass']} pass, {t['fail']} fail, {t['unknown']} unknown; "
                 f"unknown allowed {self.unknown_allowed})"]
        if timing:
            lines.append(f"  wall time {self.wall_time:.2f}s")
        lines += [f"  note: {n}" for n in self.notes]
        for c in self.cases:
            if verbose or c.verdict != "pass":
                lines.append(f"  [{c.index}] {c.verdict} {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)


def _verdict(v) -> str:
    return {"Proved": "pass", "DistinctNormalForms": "fail", "Unknown": "unknown"}[v.verdict]


def _detail(v) -> str:
    if v.verdict == "Proved":
        return f"{len(v.trace)} steps"
    if v.verdict == "Unknown":
        return v.reason
    return f"normal forms {show_term(v.nf1)}  vs  {show_term(v.nf2)}"


def corpus_dir() -> Path:
    return Path(str(resources.files("eec") / "corpus"))


def load_corpus(sub: str = "") -> list[tuple[str, str]]:
    d = corpus_dir() / sub if sub else corpus_dir()
    return [(p.stem, p.read_text()) for p in sorted(d.glob("*.eec"))]


def _results(options) -> list:
    return [result_type(r) for r in options.get("results", RESULTS)]


# --- typing -------------------------------------------------------------------------

def suite_typing(opts) -> SuiteReport:
    rep = SuiteReport("typing")
    n = opts.get("count", 500)
    seed = opts.get("seed", 0)
    for i in range(n):
        sort = "value" if i % 2 == 0 else "comp"
        tt = gen_term(GenConfig(seed=seed * 100_003 + i, max_size=opts.get("max_size", 8), sort=sort))
        rng = random.Random(seed * 31 + i)
        problems = []
        try:
            check_judgement(Judgement(tt.gamma, tt.stoup, tt.term, tt.ty))
        except TypingError as e:
            problems.append(f"recheck: {e}")
        # weakening at a random position
        pos = rng.randint(0, len(tt.gamma))
        wty = TypeGen(rng, ("a", "b"), ("c", "d")).value(2)
        try:
            weaken(tt, pos, "w_", wty)
        except TypingError as e:
            problems.append(f"weakening: {e}")
        # value substitution for the innermost variable
        if tt.gamma:
            name, a = tt.gamma[-1]
            outer = tt.gamma[:-1]
            u = gen_in_ctx(rng, Ctx(tuple(as_value(t) for _, t in reversed(outer))), unembed(a), 3)
            if u is not None:
                try:
                    check_judgement(Judgement(outer, tt.stoup, T.subst_value(tt.term, u), tt.ty))
                except TypingError as e:
                    problems.append(f"value substitution: {e}")
        # stoup substitution, with a fresh stoup feeding the old one
        if tt.stoup is not None:
            d = TypeGen(rng, ("a", "b"), ("c", "d")).comp(2)
            ctx = Ctx(tuple(as_value(t) for _, t in reversed(tt.gamma)), (d,), True)
            u = gen_in_ctx(rng, ctx, tt.stoup[1], 3)
            if u is not None:
                try:
                    check_judgement(Judgement(tt.gamma, ("y_", d), T.plug_stoup(tt.term, u), tt.ty))
                except TypingError as e:
                    problems.append(f"stoup substitution: {e}")
        rep.add(f"generated {sort} #{i}", "fail" if problems else "pass", "; ".join(problems))
    for name, src in load_corpus("ill"):
        expect = src.splitlines()[0].split("expect:")[1].strip()
        try:
            check_judgement(parse_judgement(src))
            rep.add(f"ill-typed {name}", "fail", "accepted")
        except TypingError as e:
            ok = e.kind == expect
            rep.add(f"ill-typed {name}", "pass" if ok else "fail",
                    "" if ok else f"expected {expect}, got {e.kind}")
    return rep


# --- axiom instances ------------------------------------------------------------------

class AxiomBuilder:
    """Random instances of the equality schemes, built from small generated terms."""

    def __init__(self, rng: random.Random, size: int = 3):
        self.rng = rng
        self.types = TypeGen(rng, ("a", "b"), ("c", "d"))
        self.size = size

    def vty(self):
        return self.types.value(self.rng.randint(1, 2))

    def cty(self):
        return self.types.comp(self.rng.randint(1, 2))

    def term(self, ctx: Ctx, want):
        t = gen_in_ctx(self.rng, ctx, want, self.size, attempts=4)
        if t is None:
            raise GenFailure("no inhabitant")
        return t

    def build(self, rule: str, attempts: int = 200) -> tuple[TypedTerm, TypedTerm]:
        for _ in range(attempts):
            gamma = tuple((f"g{i}", self.vty()) for i in range(self.rng.randint(0, 2)))
            base = Ctx(tuple(as_value(a) for _, a in reversed(gamma)))
            stoup = None
            if self.rng.random() < 0.5 and rule not in _EMPTY_ONLY:
                stoup = ("z", self.cty())
                ctx = base.bind_stoup(stoup[1])
            else:
                ctx = base
            try:
                b, ty = self.bindings(rule, ctx)
            except GenFailure:
                continue
            lhs, rhs = instantiate(rule, b)
            try:
                j1 = check_judgement(Judgement(gamma, stoup, lhs, ty))
                j2 = check_judgement(Judgement(gamma, stoup, rhs, ty))
            except TypingError:
                continue
            return j1, j2
        raise GenFailure(f"could not instantiate {rule}")

    def bindings(self, rule: str, ctx: Ctx):
        g = self.term
        e = ctx.empty()
        match rule:
            case "V-1eta":
                return {"t": g(e, UNIT)}, UNIT
            case "V-xbeta1" | "V-xbeta2":
                a, b = self.vty(), self.vty()
                return {"t": g(e, a), "u": g(e, b)}, unembed(a if rule.endswith("1") else b)
            case "V-xeta":
                a = Prod(self.vty(), self.vty())
                return {"t": g(e, a)}, a
            case "V-funbeta":
                a, b = self.vty(), self.vty()
                return {"A": a, "t": g(e.push(a), b), "u": g(e, a), "x": "x"}, unembed(b)
            case "V-funeta":
                a = Fun(self.vty(), self.vty())
                return {"A": a.dom, "t": g(e, a), "x": "x"}, a
            case "C-1eta":
                return {"t": g(ctx, ONE)}, ONE
            case "C-withbeta1" | "C-withbeta2":
                a, b = self.cty(), self.cty()
                return {"t": g(ctx, a), "u": g(ctx, b)}, (a if rule.endswith("1") else b)
            case "C-witheta":
                a = With(self.cty(), self.cty())
                return {"t": g(ctx, a)}, a
            case "C-arrbeta":
                a, b = self.vty(), self.cty()
                return {"A": a, "t": g(ctx.push(a), b), "u": g(e, a), "x": "x"}, b
            case "C-arreta":
                a = Arrow(self.vty(), self.cty())
                return {"A": a.dom, "t": g(ctx, a), "x": "x"}, a
            case "I-beta":
                c = self.cty()
                return {"t": g(e, c)}, c
            case "I-leteta":
                c = self.cty()
                return {"t": g(ctx, I), "u": g(ctx.bind_stoup(I), c)}, c
            case "bang-beta":
                a, c = self.vty(), self.cty()
                return {"t": g(e, a), "u": g(e.push(a), c), "x": "x"}, c
            case "bang-leteta":
                a, c = self.vty(), self.cty()
                return {"t": g(ctx, Bang(a)), "u": g(ctx.bind_stoup(Bang(a)), c), "x": "x"}, c
            case "tensor-beta":
                a, b, c = self.vty(), self.cty(), self.cty()
                return {"t": g(e, a), "s": g(ctx, b), "u": g(ctx.push(a).bind_stoup(b), c),
                        "x": "x", "y": "y"}, c
            case "tensor-leteta":
                p, c = Copower(self.vty(), self.cty()), self.cty()
                return {"t": g(ctx, p), "u": g(ctx.bind_stoup(p), c), "x": "x", "y": "y"}, c
            case "zero-eta":
                c = self.cty()
                return {"C": c, "t": g(ctx, ZERO), "u": g(ctx.bind_stoup(ZERO), c)}, c
            case "plus-beta1" | "plus-beta2":
                a, b, c = self.cty(), self.cty(), self.cty()
                s = Plus(a, b)
                t = g(ctx, a if rule.endswith("1") else b)
                return {"S": s, "t": t, "u": g(ctx.bind_stoup(a), c), "v": g(ctx.bind_stoup(b), c),
                        "x": "x", "y": "y"}, c
            case "plus-leteta":
                s, c = Plus(self.cty(), self.cty()), self.cty()
                return {"S": s, "t": g(ctx, s), "u": g(ctx.bind_stoup(s), c), "x": "x", "y": "y"}, c
            case "lin-beta":
                a, b = self.cty(), self.cty()
                return {"A": a, "t": g(e.bind_stoup(a), b), "u": g(ctx, a), "z": "z"}, b
            case "lin-eta":
                a = Lin(self.cty(), self.cty())
                return {"A": a.dom, "t": g(e, a), "z": "z"}, a
        raise KeyError(rule)


# schemes whose left-hand side only types with an empty stoup
_EMPTY_ONLY = {"V-1eta", "V-xbeta1", "V-xbeta2", "V-xeta", "V-funbeta", "V-funeta", "I-beta",
               "bang-beta", "lin-eta"}


def axiom_corpus(seed: int = 0, per_rule: int = 10, size: int = 3) -> list[tuple[str, TypedTerm, TypedTerm]]:
    out = []
    for r, rule in enumerate(RULE_IDS):
        builder = AxiomBuilder(random.Random(seed * 1_000_003 + r), size)
        for i in range(per_rule):
            lhs, rhs = builder.build(rule)
            out.append((f"{rule} #{i}", lhs, rhs))
    return out


def suite_axioms(opts) -> SuiteReport:
    rep = SuiteReport("axioms")
    fuel = opts.get("fuel", 50)
    for name, lhs, rhs in axiom_corpus(opts.get("seed", 0), opts.get("per_rule", 10)):
        v = check_eq(lhs, rhs, fuel=fuel)
        rep.add(name, _verdict(v), _detail(v) if v.verdict != "Proved" else "")
    return rep


def suite_soundness(opts) -> SuiteReport:
    rep = SuiteReport("soundness-self", max_unknown=0.02)
    corpus = axiom_corpus(opts.get("seed", 0), opts.get("per_rule", 10))
    for r in _results(opts):
        for name, lhs, rhs in corpus:
            v = check_eq(self_term(lhs, r), self_term(rhs, r), fuel=opts.get("fuel"))
            rep.add(f"{name} R={r}", _verdict(v), _detail(v) if v.verdict != "Proved" else "")
    return rep


# --- substitution ------------------------------------------------------------------------

def _substitution_instance(rng: random.Random, seed: int, stoup_case: bool):
    """A judgement with a variable (value or stoup) to substitute, and something to put there."""
    for k in range(200):
        s = seed * 7 + k
        if not stoup_case:
            sort = "comp" if k % 2 else "value"
            tt = gen_term(GenConfig(seed=s, max_size=8, sort=sort, context_size=3))
            if not tt.gamma:
                continue
            outer = tt.gamma[:-1]
            a = tt.gamma[-1][1]
            u = gen_in_ctx(rng, Ctx(tuple(as_value(t) for _, t in reversed(outer))), unembed(a), 3)
            if u is None:
                continue
            return tt, u, outer
        tt = gen_term(GenConfig(seed=s, max_size=8, sort="comp"))
        if rng.random() < 0.5:
            u = gen_in_ctx(rng, Ctx(tuple(as_value(t) for _, t in reversed(tt.gamma))), tt.stoup[1], 3)
            if u is not None:
                return tt, u, None
        else:
            d = TypeGen(rng, ("a", "b"), ("c", "d")).comp(2)
            u = gen_in_ctx(rng, Ctx(tuple(as_value(t) for _, t in reversed(tt.gamma)), (d,), True),
                           tt.stoup[1], 3)
            if u is not None:
                return tt, u, ("y", d)
    raise GenFailure("no substitution instance")


def suite_substitution(opts) -> SuiteReport:
    rep = SuiteReport("substitution", max_unknown=opts.get("max_unknown", 2))
    seed = opts.get("seed", 0)
    n12 = opts.get("count", 200)
    n34 = opts.get("count_eq", 50)
    rs = _results(opts)
    for i in range(n12):
        r = rs[i % len(rs)]
        rng = random.Random(seed * 17 + i)
        tt, u, outer = _substitution_instance(rng, seed * 1000 + i, False)
        subst = check_judgement(Judgement(outer, tt.stoup, T.subst_value(tt.term, u), tt.ty))
        u_tt = check_value(outer, u, as_value(tt.gamma[-1][1]))
        lhs = self_term(subst, r).term
        rhs = T.subst_value(self_term(tt, r).term, self_vterm(u_tt, r).term)
        stmt = "(1)" if tt.stoup is None else "(2)"
        rep.add(f"statement {stmt} #{i} R={r}", "pass" if lhs == rhs else "fail",
                "" if lhs == rhs else f"{show_term(lhs)}  vs  {show_term(rhs)}")
    for i in range(n34):
        r = rs[i % len(rs)]
        rng = random.Random(seed * 19 + i + 77)
        tt, u, delta = _substitution_instance(rng, seed * 2000 + i, True)
        t_star = self_cterm(tt, r)
        if delta is None:
            # Γ | x:Ā ⊢ t : B̄ and Γ ⊢ u : Ā
            u_tt = check_value(tt.gamma, u, Embed(tt.stoup[1]))
            subst = check_value(tt.gamma, T.plug_stoup(tt.term, u), Embed(tt.ty))
            lhs = self_vterm(subst, r)
            body = App(self_vterm(u_tt, r).term, t_star.term, "l")
            rhs = check_value(lhs.gamma, T.LFun(self_ctype(tt.ty, r), body, "k"), lhs.ty)
            stmt = "(3)"
        else:
            u_tt = check_comp(tt.gamma, delta, u, tt.stoup[1])
            subst = check_comp(tt.gamma, delta, T.plug_stoup(tt.term, u), tt.ty)
            lhs = self_cterm(subst, r)
            rhs = check_comp(lhs.gamma, lhs.stoup, T.plug_stoup(self_cterm(u_tt, r).term, t_star.term), lhs.ty)
            stmt = "(4)"
        v = check_eq(lhs, rhs, fuel=opts.get("fuel"))
        rep.add(f"statement {stmt} #{i} R={r}", _verdict(v), _detail(v) if v.verdict != "Proved" else "")
    return rep


# --- involution, iso, fullness ----------------------------------------------------------

def suite_involution(opts) -> SuiteReport:
    rep = SuiteReport("involution", max_unknown=opts.get("max_unknown", 4))
    corpus = opts.get("corpus")
    if corpus is None:
        corpus = load_corpus()
    for r in _results(opts):
        for name, src in corpus:
            tt = check_judgement(parse_judgement(src))
            v = check_eq(tt, involution_rhs(tt, r), fuel=opts.get("fuel"))
            rep.add(f"{name} R={r}", _verdict(v), _detail(v) if v.verdict != "Proved" else "")
    if not corpus:
        rep.notes.append("empty corpus")
    return rep


def iso_law_judgements(ty, r) -> list[tuple[str, TypedTerm, TypedTerm]]:
    """The two composite-identity equalities for one type (φ laws or ψ laws)."""
    if isinstance(ty, CompType):
        f, g = iso_comp(ty, r)
        cc = f.ty.dom
        k = SVar(0, "z")
        pairs = [("psi-inv.psi", cc, App(g.term, App(f.term, k, "l"), "l")),
                 ("psi.psi-inv", ty, App(f.term, App(g.term, k, "l"), "l"))]
        out = []
        for name, dom, body in pairs:
            lhs = check_value((), T.LFun(dom, body, "z"), Lin(dom, dom))
            rhs = check_value((), T.LFun(dom, k, "z"), Lin(dom, dom))
            out.append((name, lhs, rhs))
        return out
    f, g = iso_value(ty, r)
    vv = as_value(f.ty.dom)
    a = as_value(ty)
    x = Var(0, "x")
    pairs = [("phi-inv.phi", vv, App(g.term, App(f.term, x, "v"), "v")),
             ("phi.phi-inv", a, App(f.term, App(g.term, x, "v"), "v"))]
    out = []
    for name, dom, body in pairs:
        lhs = check_value((), T.Lam(dom, body, "x"), Fun(dom, dom))
        rhs = check_value((), T.Lam(dom, x, "x"), Fun(dom, dom))
        out.append((name, lhs, rhs))
    return out


def all_types_upto(n: int) -> list:
    """Every value type (embedded computation types included) and computation type of size <= n."""
    out = []
    for s in range(1, n + 1):
        out += value_types(s) + [Embed(c) for c in comp_types(s)]
        out += comp_types(s)
    return out


def suite_iso(opts) -> SuiteReport:
    from .syntax import show_type
    rep = SuiteReport("iso")
    n = opts.get("max_type_size", 6)
    tys = all_types_upto(n)
    rep.notes.append(f"{len(tys)} types of size <= {n}")
    for r in _results(opts):
        for ty in tys:
            for name, lhs, rhs in iso_law_judgements(ty, r):
                v = check_eq(lhs, rhs, fuel=opts.get("fuel"))
                rep.add(f"{name} {show_type(ty)} R={r}", _verdict(v),
                        _detail(v) if v.verdict != "Proved" else "")
    return rep


def suite_fullness(opts) -> SuiteReport:
    rep = SuiteReport("fullness")
    n = opts.get("count", 30)
    seed = opts.get("seed", 0)
    rs = _results(opts)
    for i in range(n):
        r = rs[i % len(rs)]
        sort = "value" if i % 2 == 0 else "comp"
        s = gen_term(GenConfig(seed=seed * 50_021 + i + 5, max_size=8, sort=sort))
        t = self_term(s, r)
        if sort == "value":
            u = fullness_witness(t, s.gamma, s.ty, r)
        else:
            u = fullness_witness(t, s.gamma, s.ty, r, stoup=s.stoup)
        v = check_eq(self_term(u, r), t, fuel=opts.get("fuel"))
        rep.add(f"{sort} #{i} R={r}", _verdict(v), _detail(v) if v.verdict != "Proved" else "")
    return rep


# --- translations --------------------------------------------------------------------------

def translation_typing_cases(opts):
    """(name, thunk) pairs; each thunk raises if a translation is not at its stated judgement."""
    seed = opts.get("seed", 0)
    rs = _results(opts)
    cases = []

    def stlc_case(j, r):
        def run():
            th = list(j.theta)
            out = [
                (cbv_term(th, j.term, list(j.names)), Embed(Bang(cbv_type(j.ty))),
                 [cbv_type(s) for s in reversed(th)]),
                (cbn_term(th, j.term, list(j.names)), Embed(cbn_type(j.ty)),
                 [Embed(cbn_type(s)) for s in reversed(th)]),
                (lincps_cbv_term(th, j.term, r, list(j.names)),
                 Lin(Arrow(lincps_cbv_type(j.ty, r), r.ty), r.ty),
                 [lincps_cbv_type(s, r) for s in reversed(th)]),
                (lincps_cbn_term(th, j.term, r, list(j.names)), Lin(lincps_cbn_type(j.ty, r), r.ty),
                 [Lin(lincps_cbn_type(s, r), r.ty) for s in reversed(th)]),
            ]
            for tt, ty, gamma in out:
                _expect_judgement(tt, gamma, None, ty)
        return run

    def eec_case(tt, r):
        def run():
            out = self_term(tt, r)
            gamma = [self_vtype(a, r) for _, a in tt.gamma]
            if tt.stoup is None:
                _expect_judgement(out, gamma, None, self_vtype(as_value(tt.ty), r))
            else:
                _expect_judgement(out, gamma, self_ctype(tt.ty, r), self_ctype(tt.stoup[1], r))
        return run

    stlc = [gen_stlc(GenConfig(seed=seed * 10_007 + i, sort="stlc", max_size=10)) for i in range(opts.get("count", 200))]
    eec = [gen_term(GenConfig(seed=seed * 20_011 + i, max_size=10, sort="value" if i % 2 == 0 else "comp"))
           for i in range(opts.get("count", 200))]
    for r in rs:
        cases += [(f"stlc #{i} R={r}", stlc_case(j, r)) for i, j in enumerate(stlc)]
        cases += [(f"eec #{i} R={r}", eec_case(tt, r)) for i, tt in enumerate(eec)]
    return cases


def _expect_judgement(tt: TypedTerm, gamma, stoup, ty):
    got_g = [unembed(a) for _, a in tt.gamma]
    if got_g != [unembed(a) for a in gamma]:
        raise AssertionError(f"context {got_g} differs from {gamma}")
    if (tt.stoup is None) != (stoup is None) or (stoup is not None and unembed(tt.stoup[1]) != unembed(stoup)):
        raise AssertionError("stoup differs")
    if unembed(tt.ty) != unembed(ty):
        raise AssertionError(f"type {tt.ty} differs from {ty}")
    check_judgement(Judgement(tt.gamma, tt.stoup, tt.term, tt.ty))


def suite_translation_typing(opts) -> SuiteReport:
    rep = SuiteReport("translation-typing")
    for name, run in translation_typing_cases(opts):
        try:
            run()
            rep.add(name, "pass")
        except (AssertionError, TypingError) as e:
            rep.add(name, "fail", str(e))
    return rep


def suite_recovering(opts) -> SuiteReport:
    from .stlc import show_stype
    rep = SuiteReport("recovering")
    n = opts.get("max_type_size", 7)
    for r in _results(opts):
        for size in range(1, n + 1):
            for s in all_stypes(size):
                ok = lincps_cbv_type(s, r) == self_vtype(cbv_type(s), r)
                rep.add(f"cbv type {show_stype(s)} R={r}", "pass" if ok else "fail")
                ok = lincps_cbn_type(s, r) == self_ctype(cbn_type(s), r)
                rep.add(f"cbn type {show_stype(s)} R={r}", "pass" if ok else "fail")
    seed = opts.get("seed", 0)
    terms = [gen_stlc(GenConfig(seed=seed * 3_001 + i, sort="stlc", max_size=8)) for i in range(opts.get("count", 25))]
    for r in _results(opts):
        for i, j in enumerate(terms):
            th, names = list(j.theta), list(j.names)
            v = check_eq(lincps_cbv_term(th, j.term, r, names), self_vterm(cbv_term(th, j.term, names), r),
                         fuel=opts.get("fuel"))
            rep.add(f"cbv term #{i} R={r}", _verdict(v), _detail(v) if v.verdict != "Proved" else "")
            v = check_eq(lincps_cbn_term(th, j.term, r, names), self_vterm(cbn_term(th, j.term, names), r),
                         fuel=opts.get("fuel"))
            rep.add(f"cbn term #{i} R={r}", _verdict(v), _detail(v) if v.verdict != "Proved" else "")
    return rep


def suite_lincps_soundness(opts) -> SuiteReport:
    """Equal simply-typed pairs stay equal after each linear-use CPS translation.

    The cbv side only uses pairs from beta steps with value arguments.
    """
    rep = SuiteReport("lincps-soundness")
    seed = opts.get("seed", 0)
    rs = _results(opts)
    for i in range(opts.get("count", 40)):
        r = rs[i % len(rs)]
        a, b, tag = gen_equal_pair(GenConfig(seed=seed * 4_001 + i, sort="stlc", max_size=8))
        th, names = list(a.theta), list(a.names)
        v = check_eq(lincps_cbn_term(th, a.term, r, names), lincps_cbn_term(th, b.term, r, names),
                     fuel=opts.get("fuel"))
        rep.add(f"cbn {tag} #{i} R={r}", _verdict(v), _detail(v) if v.verdict != "Proved" else "")
        if tag == "beta-v":
            # composition route: cbv into EEC, then the self-translation
            v = check_eq(self_vterm(cbv_term(th, a.term, names), r), self_vterm(cbv_term(th, b.term, names), r),
                         fuel=opts.get("fuel"))
            rep.add(f"cbv via self {tag} #{i} R={r}", _verdict(v), _detail(v) if v.verdict != "Proved" else "")
            v = check_eq(lincps_cbv_term(th, a.term, r, names), lincps_cbv_term(th, b.term, r, names),
                         fuel=opts.get("fuel"))
            rep.add(f"cbv {tag} #{i} R={r}", _verdict(v), _detail(v) if v.verdict != "Proved" else "")
    return rep


# --- the counterexample ------------------------------------------------------------------

def counterexample_terms():
    """The two orders of evaluating ``f *`` and ``g *`` under a constant binary function."""
    one = SUnit()
    k = SLam(one, SLam(one, SStar(), "y"), "x")
    f, g = SVarT(1, "f"), SVarT(0, "g")
    m1 = SApp(SApp(k, SApp(f, SStar())), SApp(g, SStar()))
    m2 = SApp(SApp(k, SApp(g, SStar())), SApp(f, SStar()))
    theta = [SFun(one, one), SFun(one, one)]
    return theta, ["g", "f"], m1, m2


def transport_to_unit(tt: TypedTerm, r) -> TypedTerm:
    """Move a cbv-translated judgement over f, g : 1 → 1 to one over f, g : I with result I.

    Each context entry is replaced through ``λx. λ°k. let top be k * in f`` and the
    answer is read off by applying it to ``cfun x:1 -> top``.
    """
    u_ty = Arrow(UNIT, r.ty)
    n = len(tt.gamma)
    sigma = {}
    for i in range(n):
        emb = T.Lam(UNIT, T.LFun(u_ty, T.ILet(App(SVar(0, "k"), T.STAR, "c"), Var(i + 1, tt.gamma[n - 1 - i][0])), "k"))
        sigma[i] = emb
    body = App(T.subst_many(tt.term, sigma), T.CLam(UNIT, T.TOP), "l")
    gamma = tuple((name, Embed(I)) for name, _ in tt.gamma)
    return check_value(gamma, body, Embed(r.ty))


def suite_counterexample(opts) -> SuiteReport:
    rep = SuiteReport("counterexample")
    r = result_type("I")
    theta, names, m1, m2 = counterexample_terms()
    j1 = lincps_cbv_term(theta, m1, r, names)
    j2 = lincps_cbv_term(theta, m2, r, names)
    v = check_eq(j1, j2, fuel=opts.get("fuel"))
    rep.add("translated pair is not Proved", "fail" if v.verdict == "Proved" else "pass", v.verdict)
    rep.add("translated pair has distinct normal forms",
            "pass" if v.verdict == "DistinctNormalForms" else ("unknown" if v.verdict == "Unknown" else "fail"),
            _detail(v))
    gamma = (("f", Embed(I)), ("g", Embed(I)))
    fg = check_value(gamma, parse_judgement("f:I, g:I |- let top be f in let top be g in top : I").subject, Embed(I))
    gf = check_value(gamma, parse_judgement("f:I, g:I |- let top be g in let top be f in top : I").subject, Embed(I))
    v = check_eq(fg, gf, fuel=opts.get("fuel"))
    rep.add("f-first and g-first sequencing are distinct",
            "pass" if v.verdict == "DistinctNormalForms" else "fail", _detail(v))
    # the transport runs the continuation before the context entry, so the order flips
    for label, j, target in (("f-first", j1, gf), ("g-first", j2, fg)):
        v = check_eq(transport_to_unit(j, r), target, fuel=opts.get("fuel"))
        rep.add(f"{label} term transports to the opposite sequencing", _verdict(v),
                _detail(v) if v.verdict != "Proved" else "")
    return rep


_RUNNERS: dict[str, Callable] = {
    "typing": suite_typing,
    "substitution": suite_substitution,
    "axioms": suite_axioms,
    "soundness-self": suite_soundness,
    "involution": suite_involution,
    "iso": suite_iso,
    "recovering": suite_recovering,
    "fullness": suite_fullness,
    "lincps-soundness": suite_lincps_soundness,
    "counterexample": suite_counterexample,
    "translation-typing": suite_translation_typing,
}


class UnknownSuite(KeyError):
    pass


def run_suite(name: str, **options) -> SuiteReport:
    if name not in _RUNNERS:
        raise UnknownSuite(name)
    t0 = time.perf_counter()
    rep = _RUNNERS[name](options)
    rep.wall_time = time.perf_counter() - t0
    return rep
