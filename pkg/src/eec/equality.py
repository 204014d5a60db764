"""Deciding (soundly, not completely) provable equality of two judgements."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Union

from .normalize import DEFAULT_NORMALIZE_FUEL, canonical_form
from .rules import apply_step
from .search import DEFAULT_SEARCH_FUEL, bidirectional_search, empty_stoup_route
from .terms import Term
from .typecheck import Judgement, TypedTerm, check_judgement, ctx_of
from .types import unembed


@dataclass
class Proved:
    trace: list
    fuel_used: int = 0

    verdict = "Proved"

    def trace_text(self) -> str:
        return "\n".join(s.text() for s in self.trace)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "fuel_used": self.fuel_used,
                "trace": [s.to_json() for s in self.trace]}


@dataclass
class DistinctNormalForms:
    nf1: Term
    nf2: Term
    fuel_used: int = 0

    verdict = "DistinctNormalForms"

    def to_json(self) -> dict:
        from .syntax import term_to_json
        return {"verdict": self.verdict, "fuel_used": self.fuel_used,
                "nf1": term_to_json(self.nf1), "nf2": term_to_json(self.nf2)}


@dataclass
class Unknown:
    fuel_used: int
    reason: str = "fuel exhausted"

    verdict = "Unknown"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "fuel_used": self.fuel_used, "reason": self.reason}


EqVerdict = Union[Proved, DistinctNormalForms, Unknown]


def env_fuel(default: int) -> int:
    v = os.environ.get("EEC_FUEL")
    if v:
        try:
            return int(v)
        except ValueError:
            pass
    return default


class JudgementMismatch(ValueError):
    pass


def _same_judgement(j1: TypedTerm, j2: TypedTerm) -> bool:
    g1 = [unembed(t) for _, t in j1.gamma]
    g2 = [unembed(t) for _, t in j2.gamma]
    s1 = None if j1.stoup is None else unembed(j1.stoup[1])
    s2 = None if j2.stoup is None else unembed(j2.stoup[1])
    return g1 == g2 and s1 == s2 and unembed(j1.ty) == unembed(j2.ty)


def check_eq(j1: TypedTerm, j2: TypedTerm, fuel: Optional[int] = None,
             search_fuel: Optional[int] = None) -> EqVerdict:
    """Normalise both sides, compare eta-long forms, then fall back on a bounded search.

    ``fuel`` bounds each phase (normalising, canonicalising, searching) separately.
    """
    if not _same_judgement(j1, j2):
        raise JudgementMismatch("the two sides are not at the same context and type")
    nfuel = fuel if fuel is not None else env_fuel(DEFAULT_NORMALIZE_FUEL)
    sfuel = search_fuel if search_fuel is not None else (fuel if fuel is not None
                                                         else env_fuel(DEFAULT_SEARCH_FUEL))
    r1 = canonical_form(j1, nfuel)
    if r1.exhausted:
        return Unknown(r1.fuel_used)
    r2 = canonical_form(j2, nfuel)
    used = r1.fuel_used + r2.fuel_used
    if r2.exhausted:
        return Unknown(used)
    back = [s.flipped() for s in reversed(r2.steps)]
    if r1.term == r2.term:
        return _finish(j1, j2, r1.steps + back, used)
    ctx = ctx_of(j1.gamma, j1.stoup)
    middle, generated = bidirectional_search(r1.term, r2.term, ctx, j1.ty, sfuel)
    used += generated
    if middle is None:
        middle = empty_stoup_route(r1.term, r2.term, ctx)
    if middle is None:
        return DistinctNormalForms(r1.term, r2.term, used)
    return _finish(j1, j2, r1.steps + middle + back, used)


def _finish(j1, j2, trace, used) -> EqVerdict:
    try:
        end = replay_term(j1.elaboration, trace)
    except ValueError as e:
        return Unknown(used, f"trace did not replay: {e}")
    if end != j2.elaboration:
        return Unknown(used, "trace did not reach the target")
    return Proved(trace, used)


def replay_term(t: Term, trace) -> Term:
    for step in trace:
        t = apply_step(t, step)
    return t


def replay(j: TypedTerm, trace, check_each: bool = True) -> TypedTerm:
    """Apply ``trace`` to ``j``, re-checking the judgement after every step."""
    t = j.elaboration
    for step in trace:
        t = apply_step(t, step)
        if check_each:
            t = check_judgement(Judgement(j.gamma, j.stoup, t, j.ty)).elaboration
    return check_judgement(Judgement(j.gamma, j.stoup, t, j.ty))


def parse_trace(text: str) -> list[tuple[tuple, str, str]]:
    """Read the ``STEP <path> <rule> <fwd|bwd>`` lines of a text trace."""
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line.startswith("STEP "):
            continue
        _, p, rule, d = line.split()
        path = () if p == "." else tuple(int(i) for i in p.split("."))
        out.append((path, rule, d))
    return out
