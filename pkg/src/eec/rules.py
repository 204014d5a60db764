"""The 24 equality schemes as explicit instantiation functions.

Every scheme is given as a function from a binding map to the pair (lhs, rhs).
A binding map holds the metavariables of the scheme as nameless terms living
in the context of the rewritten position.  For the generalised let-eta laws the
context ``u`` is a term with one extra stoup binder (index 0) standing for the
hole, which is how the higher-order patterns ``u[!x/y]`` are represented.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import terms as T
from .terms import Term, plug_stoup, shift, subst_stoup, subst_value
from .types import ZERO, Zero

# display names and the ASCII identifiers used in traces and on the command line
RULES = [
    ("V-1eta", "V-1η"), ("V-xbeta1", "V-×β1"), ("V-xbeta2", "V-×β2"), ("V-xeta", "V-×η"),
    ("V-funbeta", "V-→β"), ("V-funeta", "V-→η"),
    ("C-1eta", "C-1̲η"), ("C-withbeta1", "C-&β1"), ("C-withbeta2", "C-&β2"), ("C-witheta", "C-&η"),
    ("C-arrbeta", "C-⇒β"), ("C-arreta", "C-⇒η"),
    ("I-beta", "I-β"), ("I-leteta", "I-let-η"), ("bang-beta", "!-β"), ("bang-leteta", "!-let-η"),
    ("tensor-beta", "⊗-β"), ("tensor-leteta", "⊗-let-η"), ("zero-eta", "0̲-η"),
    ("plus-beta1", "⊕-β1"), ("plus-beta2", "⊕-β2"), ("plus-leteta", "⊕-let-η"),
    ("lin-beta", "⊸-β"), ("lin-eta", "⊸-η"),
]
RULE_IDS = [r for r, _ in RULES]
DISPLAY = dict(RULES)
_BY_DISPLAY = {d: r for r, d in RULES}


def rule_id(name: str) -> str:
    if name in DISPLAY:
        return name
    if name in _BY_DISPLAY:
        return _BY_DISPLAY[name]
    raise KeyError(f"unknown rule {name!r}")


@dataclass(frozen=True)
class Step:
    path: tuple
    rule: str
    direction: str          # 'fwd' rewrites lhs to rhs, 'bwd' the reverse
    bindings: dict = field(compare=False, hash=False, default_factory=dict)

    def flipped(self) -> "Step":
        return Step(self.path, self.rule, "bwd" if self.direction == "fwd" else "fwd", self.bindings)

    def at(self, prefix) -> "Step":
        return Step(tuple(prefix) + tuple(self.path), self.rule, self.direction, self.bindings)

    def text(self) -> str:
        p = ".".join(str(i) for i in self.path) or "."
        return f"STEP {p} {self.rule} {self.direction}"

    def to_json(self) -> dict:
        from .syntax import term_to_json, type_to_json
        from .types import CompType, ValueType
        b = {}
        for k, v in self.bindings.items():
            if isinstance(v, Term):
                b[k] = {"term": term_to_json(v)}
            elif isinstance(v, (ValueType, CompType)):
                b[k] = {"type": type_to_json(v)}
            else:
                b[k] = {"name": v}
        return {"path": list(self.path), "rule": self.rule, "direction": self.direction, "bindings": b}

    @staticmethod
    def from_json(obj) -> "Step":
        from .syntax import term_from_json, type_from_json
        b = {}
        for k, v in obj.get("bindings", {}).items():
            if "term" in v:
                b[k] = term_from_json(v["term"])
            elif "type" in v:
                b[k] = type_from_json(v["type"])
            else:
                b[k] = v["name"]
        return Step(tuple(obj["path"]), rule_id(obj["rule"]), obj["direction"], b)


def open_hole(u: Term, pattern: Term, dv: int = 0, ds: int = 0) -> Term:
    """``u[pattern/y]`` where y is stoup variable 0 of ``u``.

    The result lives under ``dv`` new value binders and ``ds`` new stoup
    binders (innermost), which ``pattern`` may refer to.
    """
    u = shift(u, dv, 0)
    u = shift(u, 0, ds, 0, 1)
    return subst_stoup(u, pattern)


def _app(f, a, kind):
    return T.App(f, a, kind)


def instantiate(rule: str, b: dict) -> tuple[Term, Term]:
    g = b.get
    match rule:
        case "V-1eta":
            return g("t"), T.STAR
        case "V-xbeta1":
            return T.Fst(T.Pair(g("t"), g("u"))), g("t")
        case "V-xbeta2":
            return T.Snd(T.Pair(g("t"), g("u"))), g("u")
        case "V-xeta":
            return T.Pair(T.Fst(g("t")), T.Snd(g("t"))), g("t")
        case "V-funbeta":
            return _app(T.Lam(g("A"), g("t"), g("x", "x")), g("u"), "v"), subst_value(g("t"), g("u"))
        case "V-funeta":
            return T.Lam(g("A"), _app(shift(g("t"), 1), T.Var(0, g("x", "x")), "v"), g("x", "x")), g("t")
        case "C-1eta":
            return g("t"), T.CSTAR
        case "C-withbeta1":
            return T.PFst(T.CPair(g("t"), g("u"))), g("t")
        case "C-withbeta2":
            return T.PSnd(T.CPair(g("t"), g("u"))), g("u")
        case "C-witheta":
            return T.CPair(T.PFst(g("t")), T.PSnd(g("t"))), g("t")
        case "C-arrbeta":
            return _app(T.CLam(g("A"), g("t"), g("x", "x")), g("u"), "c"), subst_value(g("t"), g("u"))
        case "C-arreta":
            return T.CLam(g("A"), _app(shift(g("t"), 1), T.Var(0, g("x", "x")), "c"), g("x", "x")), g("t")
        case "I-beta":
            return T.ILet(T.TOP, g("t")), g("t")
        case "I-leteta":
            return T.ILet(g("t"), open_hole(g("u"), T.TOP)), plug_stoup(g("u"), g("t"))
        case "bang-beta":
            return T.BangLet(T.BangIntro(g("t")), g("u"), g("x", "x")), subst_value(g("u"), g("t"))
        case "bang-leteta":
            x = g("x", "x")
            body = open_hole(g("u"), T.BangIntro(T.Var(0, x)), dv=1)
            return T.BangLet(g("t"), body, x), plug_stoup(g("u"), g("t"))
        case "tensor-beta":
            u, t, s = g("u"), g("t"), g("s")
            rhs = subst_value(subst_stoup(u, shift(s, 1, 0)), t)
            return T.CopowLet(T.CopowIntro(t, s), u, g("x", "x"), g("y", "y")), rhs
        case "tensor-leteta":
            x, y = g("x", "x"), g("y", "y")
            body = open_hole(g("u"), T.CopowIntro(T.Var(0, x), T.SVar(0, y)), dv=1, ds=1)
            return T.CopowLet(g("t"), body, x, y), plug_stoup(g("u"), g("t"))
        case "zero-eta":
            return T.Absurd(g("C"), g("t")), plug_stoup(g("u"), g("t"))
        case "plus-beta1":
            return (T.Case(T.Inl(g("S"), g("t")), g("u"), g("v"), g("x", "x"), g("y", "y")),
                    plug_stoup(g("u"), g("t")))
        case "plus-beta2":
            return (T.Case(T.Inr(g("S"), g("t")), g("u"), g("v"), g("x", "x"), g("y", "y")),
                    plug_stoup(g("v"), g("t")))
        case "plus-leteta":
            x, y, s = g("x", "x"), g("y", "y"), g("S")
            left = open_hole(g("u"), T.Inl(s, T.SVar(0, x)), ds=1)
            right = open_hole(g("u"), T.Inr(s, T.SVar(0, y)), ds=1)
            return T.Case(g("t"), left, right, x, y), plug_stoup(g("u"), g("t"))
        case "lin-beta":
            return _app(T.LFun(g("A"), g("t"), g("z", "z")), g("u"), "l"), plug_stoup(g("t"), g("u"))
        case "lin-eta":
            z = g("z", "z")
            return T.LFun(g("A"), _app(shift(g("t"), 0, 1), T.SVar(0, z), "l"), z), g("t")
    raise KeyError(f"unknown rule {rule!r}")


def apply_step(term: Term, step: Step) -> Term:
    """Rewrite ``term`` by ``step``; raises ValueError when the source side does not match."""
    lhs, rhs = instantiate(step.rule, step.bindings)
    src, dst = (lhs, rhs) if step.direction == "fwd" else (rhs, lhs)
    here = T.subterm(term, step.path)
    if here != src:
        raise ValueError(f"{step.text()}: subterm does not match the rule's source side")
    return T.replace_at(term, step.path, dst)


# forward matchers for the beta rules and the pure eta contractions

def beta_step(t: Term) -> tuple[str, dict] | None:
    """If ``t`` is a beta redex (including the let-beta rules), the rule and bindings."""
    match t:
        case T.Fst(T.Pair(a, b)):
            return "V-xbeta1", {"t": a, "u": b}
        case T.Snd(T.Pair(a, b)):
            return "V-xbeta2", {"t": a, "u": b}
        case T.App(T.Lam(ty, body, n), u):
            return "V-funbeta", {"A": ty, "t": body, "u": u, "x": n}
        case T.PFst(T.CPair(a, b)):
            return "C-withbeta1", {"t": a, "u": b}
        case T.PSnd(T.CPair(a, b)):
            return "C-withbeta2", {"t": a, "u": b}
        case T.App(T.CLam(ty, body, n), u):
            return "C-arrbeta", {"A": ty, "t": body, "u": u, "x": n}
        case T.ILet(T.Top(), u):
            return "I-beta", {"t": u}
        case T.BangLet(T.BangIntro(a), u, n):
            return "bang-beta", {"t": a, "u": u, "x": n}
        case T.CopowLet(T.CopowIntro(a, s), u, xn, yn):
            return "tensor-beta", {"t": a, "s": s, "u": u, "x": xn, "y": yn}
        case T.Case(T.Inl(ty, a), l, r, xn, yn):
            return "plus-beta1", {"S": ty, "t": a, "u": l, "v": r, "x": xn, "y": yn}
        case T.Case(T.Inr(ty, a), l, r, xn, yn):
            return "plus-beta2", {"S": ty, "t": a, "u": l, "v": r, "x": xn, "y": yn}
        case T.App(T.LFun(ty, body, n), u):
            return "lin-beta", {"A": ty, "t": body, "u": u, "z": n}
    return None


def eta_step(t: Term) -> tuple[str, dict] | None:
    """If ``t`` is a pure eta redex, the contracting (forward) rule and bindings."""
    match t:
        case T.Pair(T.Fst(a), T.Snd(b)) if a == b:
            return "V-xeta", {"t": a}
        case T.CPair(T.PFst(a), T.PSnd(b)) if a == b:
            return "C-witheta", {"t": a}
        case T.Lam(ty, T.App(f, T.Var(0)), n) if 0 not in T.free_values(f):
            return "V-funeta", {"A": ty, "t": shift(f, -1), "x": n}
        case T.CLam(ty, T.App(f, T.Var(0)), n) if 0 not in T.free_values(f):
            return "C-arreta", {"A": ty, "t": shift(f, -1), "x": n}
        case T.LFun(ty, T.App(f, T.SVar(0)), n) if 0 not in T.free_stoups(f):
            return "lin-eta", {"A": ty, "t": shift(f, 0, -1), "z": n}
    return None


def pure_let_eta(t: Term) -> tuple[str, dict] | None:
    """``let p be t in p`` contracts to ``t``: a let-eta law with the identity context.

    The let form is the lhs of that instance, so the contraction is a forward step.
    """
    hole = T.SVar(0, "y")
    match t:
        case T.ILet(s, T.Top()):
            return "I-leteta", {"t": s, "u": hole}
        case T.BangLet(s, T.BangIntro(T.Var(0)), n):
            return "bang-leteta", {"t": s, "u": hole, "x": n}
        case T.CopowLet(s, T.CopowIntro(T.Var(0), T.SVar(0)), xn, yn):
            return "tensor-leteta", {"t": s, "u": hole, "x": xn, "y": yn}
        case T.Case(s, T.Inl(ty, T.SVar(0)), T.Inr(ty2, T.SVar(0)), xn, yn) if ty == ty2 and ty is not None:
            return "plus-leteta", {"t": s, "u": hole, "S": ty, "x": xn, "y": yn}
        case T.Absurd(Zero(), s):
            return "zero-eta", {"C": ZERO, "t": s, "u": hole}
    return None
