"""Seeded, type-directed generation of well-typed EEC and simply-typed terms.

Generation is a bounded backtracking search over the typing rules.  A stoup
is always consumed exactly once by construction: either a rule passes it to
the one premise that receives it, or the generator eliminates it directly
and continues with whatever the elimination produces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from . import terms as T
from .stlc import SApp, SConst, SFst, SFun, SLam, SPair, SProd, SSnd, SStar, SType, SUnit, SVarT, STerm, ssubst, sshift, check_stlc
from .terms import App, SVar, Term, Var
from .typecheck import Ctx, Judgement, TypedTerm, check_judgement
from .types import (Arrow, Bang, CConst, CompType, Const, Copower, Embed, Fun, I, Lin, ONE, Plus, Prod,
                    TensorUnit, UNIT, Unit, ValueType, With, WithUnit, ZERO, Zero, as_value, unembed)


class GenFailure(Exception):
    pass


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_size: int = 12
    sort: str = "value"            # 'value', 'comp' or 'stlc'
    vconsts: tuple = ("a", "b")
    cconsts: tuple = ("c", "d")
    result: str = "^r"
    max_type_size: int = 3
    context_size: int = 2

    @property
    def min_size(self) -> int:
        # fallbacks to leaves make tiny terms common; retry those
        return max(1, self.max_size // 3)

    def derived(self, k: int) -> "GenConfig":
        return GenConfig(self.seed * 7919 + k + 1, self.max_size, self.sort, self.vconsts,
                         self.cconsts, self.result, self.max_type_size, self.context_size)


class TypeGen:
    def __init__(self, rng: random.Random, vconsts, cconsts):
        self.rng = rng
        self.vconsts = vconsts
        self.cconsts = cconsts

    def value(self, size: int) -> ValueType:
        r = self.rng
        if size <= 1:
            return r.choice([Const(n) for n in self.vconsts] + [UNIT])
        k = r.randrange(6)
        if k == 0:
            return r.choice([Const(n) for n in self.vconsts] + [UNIT])
        if k == 1:
            return Embed(self.comp(size))
        a = r.randint(1, size - 1)
        if k == 2:
            return Prod(self.value(a), self.value(size - a))
        if k == 3:
            return Fun(self.value(a), self.value(size - a))
        return Lin(self.comp(a), self.comp(size - a))

    def comp(self, size: int) -> CompType:
        r = self.rng
        atoms = [CConst(n) for n in self.cconsts] + [ONE, I, ZERO]
        if size <= 1:
            return r.choice(atoms)
        k = r.randrange(7)
        if k == 0:
            return r.choice(atoms)
        if k == 1:
            return Bang(self.value(size - 1))
        a = r.randint(1, size - 1)
        return [With, Plus, Arrow, Copower, With, Plus][k - 1](
            *((self.value(a) if k in (3, 4) else self.comp(a)), self.comp(size - a)))


class TermGen:
    """Backtracking generator; ``steps`` bounds the total work of one attempt."""

    def __init__(self, rng: random.Random, vconsts=("a", "b"), cconsts=("c", "d"), steps: int = 4000):
        self.rng = rng
        self.types = TypeGen(rng, vconsts, cconsts)
        self.budget = steps

    def tick(self):
        self.budget -= 1
        if self.budget <= 0:
            raise GenFailure("step budget exhausted")

    @staticmethod
    def leaf_bias(size: int) -> float:
        # stop early rarely while there is budget left, so terms come out near the requested size
        return 1.0 / size

    def cut(self) -> ValueType:
        return self.types.value(self.rng.randint(1, 2))

    def ccut(self) -> CompType:
        return self.types.comp(self.rng.randint(1, 2))

    def order(self, intro: list, elim: list) -> list:
        """Mostly introductions before eliminations: elims guess cut types that may be empty."""
        self.rng.shuffle(intro)
        self.rng.shuffle(elim)
        if self.rng.random() < 0.75:
            return intro + elim
        both = intro + elim
        self.rng.shuffle(both)
        return both

    def first(self, options: list[Callable[[], Term]]) -> Term:
        self.rng.shuffle(options)
        for opt in options:
            try:
                return opt()
            except GenFailure:
                if self.budget <= 0:
                    raise
        raise GenFailure("no rule applies")

    def gen(self, ctx: Ctx, want, size: int) -> Term:
        self.tick()
        if ctx.live:
            return self.comp(ctx, unembed(want), size)
        return self.value(ctx, as_value(want) if not isinstance(want, CompType) else want, size)

    # -- empty stoup ------------------------------------------------------------

    def value(self, ctx: Ctx, want, size: int) -> Term:
        w = unembed(want)
        leaves = [i for i, a in enumerate(ctx.gamma) if unembed(a) == w]
        opts: list[Callable[[], Term]] = []
        if leaves:
            i = self.rng.choice(leaves)
            opts.append(lambda: Var(i, f"x{i}"))
        match w:
            case Unit():
                opts.append(lambda: T.STAR)
            case TensorUnit():
                opts.append(lambda: T.TOP)
            case WithUnit():
                opts.append(lambda: T.CSTAR)
        if opts and (size <= 1 or self.rng.random() < self.leaf_bias(size)):
            return self.first(opts)
        if size <= 1:
            raise GenFailure("out of size")
        n = size - 1
        g = self.gen
        half = lambda: self.rng.randint(1, max(1, n - 1))
        intro: list[Callable[[], Term]] = []
        match w:
            case Prod(a, b):
                intro.append(lambda: (lambda k: T.Pair(g(ctx, a, k), g(ctx, b, n - k)))(half()))
            case Fun(a, b):
                intro.append(lambda: T.Lam(a, g(ctx.push(a), b, n)))
            case Lin(a, b):
                intro.append(lambda: T.LFun(a, g(ctx.bind_stoup(a), b, n), "z"))
            case With(a, b):
                intro.append(lambda: (lambda k: T.CPair(g(ctx, a, k), g(ctx, b, n - k)))(half()))
            case Arrow(a, b):
                intro.append(lambda: T.CLam(a, g(ctx.push(a), b, n)))
            case Bang(a):
                intro.append(lambda: T.BangIntro(g(ctx, a, n)))
            case Copower(a, b):
                intro.append(lambda: (lambda k: T.CopowIntro(g(ctx, a, k), g(ctx, b, n - k)))(half()))
            case Plus(a, b):
                intro.append(lambda: T.Inl(w, g(ctx, a, n)))
                intro.append(lambda: T.Inr(w, g(ctx, b, n)))
        elim = self.value_elims(ctx, want, w, n, half) if n >= 2 else []
        return self.first(self.order(intro, elim) + opts)

    def value_elims(self, ctx, want, w, n, half):
        g = self.gen
        out = [
            lambda: T.Fst(g(ctx, Prod(as_value(w), self.cut()), n)),
            lambda: T.Snd(g(ctx, Prod(self.cut(), as_value(w)), n)),
            lambda: (lambda x, k: App(g(ctx, Fun(x, as_value(w)), k), g(ctx, x, n - k), "v"))(self.cut(), half()),
        ]
        if isinstance(w, CompType):
            out += self.comp_elims(ctx.empty(), ctx.empty(), w, n, half)
        return out

    def comp_elims(self, ctx: Ctx, body_ctx: Ctx, w: CompType, n: int, half):
        """Eliminations producing ``w``; ``ctx`` carries the stoup (if any) to the principal premise."""
        g = self.gen
        return [
            lambda: T.PFst(g(ctx, With(w, self.ccut()), n)),
            lambda: T.PSnd(g(ctx, With(self.ccut(), w), n)),
            lambda: (lambda x, k: App(g(ctx, Arrow(x, w), k), g(ctx.empty(), x, n - k), "c"))(self.cut(), half()),
            lambda: (lambda k: T.ILet(g(ctx, I, k), g(body_ctx, w, n - k)))(half()),
            lambda: (lambda x, k: T.BangLet(g(ctx, Bang(x), k), g(body_ctx.push(x), w, n - k)))(self.cut(), half()),
            lambda: (lambda x, y, k: T.CopowLet(g(ctx, Copower(x, y), k),
                                                g(ctx.push(x).bind_stoup(y), w, n - k)))(self.cut(), self.ccut(), half()),
            lambda: T.Absurd(w, g(ctx, ZERO, n)),
            lambda: self.case(ctx, w, n),
            lambda: (lambda x, k: App(g(ctx.empty(), Lin(x, w), k), g(ctx, x, n - k), "l"))(self.ccut(), half()),
        ]

    def case(self, ctx, w, n):
        x, y = self.ccut(), self.ccut()
        k = self.rng.randint(1, max(1, n - 2))
        rest = max(2, n - k)
        j = self.rng.randint(1, rest - 1)
        s = self.gen(ctx, Plus(x, y), k)
        return T.Case(s, self.gen(ctx.bind_stoup(x), w, j), self.gen(ctx.bind_stoup(y), w, rest - j))

    # -- with a stoup ---------------------------------------------------------

    def comp(self, ctx: Ctx, w: CompType, size: int) -> Term:
        d = ctx.stoup
        opts: list[Callable[[], Term]] = []
        if d == w:
            opts.append(lambda: SVar(0, "z"))
        if isinstance(w, WithUnit):
            opts.append(lambda: T.CSTAR)
        if opts and (size <= 1 or self.rng.random() < self.leaf_bias(size)):
            return self.first(opts)
        if size <= 1:
            raise GenFailure("out of size")
        n = size - 1
        g = self.gen
        half = lambda: self.rng.randint(1, max(1, n - 1))
        moves: list[Callable[[], Term]] = []
        match w:
            case With(a, b):
                moves.append(lambda: (lambda k: T.CPair(g(ctx, a, k), g(ctx, b, max(1, n - k))))(half()))
            case Arrow(a, b):
                moves.append(lambda: T.CLam(a, g(ctx.push(a), b, n)))
            case Copower(a, b):
                moves.append(lambda: (lambda k: T.CopowIntro(g(ctx.empty(), a, k), g(ctx, b, n - k)))(half()))
            case Plus(a, b):
                moves.append(lambda: T.Inl(w, g(ctx, a, n)))
                moves.append(lambda: T.Inr(w, g(ctx, b, n)))
        # consume the stoup right away, then carry on with what the elimination yields
        moves += self.use_stoup(ctx, d, w, n)
        elims = []
        if n >= 2 and self.rng.random() < 0.5:
            elims = self.rng.sample(self.comp_elims(ctx, ctx.empty(), w, n, half), 2)
        return self.first(self.order(moves, elims) + opts)

    def use_stoup(self, ctx: Ctx, d: CompType, w: CompType, n: int):
        g = self.gen
        z = SVar(0, "z")
        e = ctx.empty()

        def then(elim: Term, new: CompType):
            return lambda: T.plug_stoup(g(Ctx(ctx.gamma, (new,) + ctx.stoups[1:], True), w, n), elim)

        out = []
        match d:
            case With(a, b):
                out += [then(T.PFst(z), a), then(T.PSnd(z), b)]
            case Arrow(a, b):
                out.append(lambda: T.plug_stoup(g(Ctx(ctx.gamma, (b,) + ctx.stoups[1:], True), w, max(1, n - 1)),
                                                App(z, g(e, a, 1 + n // 3), "c")))
            case TensorUnit():
                out.append(lambda: T.ILet(z, g(e, w, n)))
            case Bang(a):
                out.append(lambda: T.BangLet(z, g(e.push(a), w, n)))
            case Copower(a, b):
                out.append(lambda: T.CopowLet(z, g(ctx.push(a).bind_stoup(b), w, n)))
            case Zero():
                out.append(lambda: T.Absurd(w, z))
            case Plus(a, b):
                out.append(lambda: T.Case(z, g(ctx.bind_stoup(a), w, max(1, n // 2)),
                                          g(ctx.bind_stoup(b), w, max(1, n - n // 2))))
        for i, h in enumerate(ctx.gamma):
            h = unembed(h)
            if isinstance(h, Lin) and h.dom == d:
                out.append(then(App(Var(i, f"f{i}"), z, "l"), h.cod))
        return out


def _context(rng: random.Random, types: TypeGen, cfg: GenConfig) -> tuple:
    n = rng.randint(0, cfg.context_size)
    return tuple((f"x{i}", types.value(rng.randint(1, cfg.max_type_size))) for i in range(n))


def gen_term(cfg: GenConfig, attempts: int = 200) -> TypedTerm:
    """A checked judgement of the requested sort with at most ``max_size`` nodes."""
    if cfg.max_size < 1:
        raise ValueError("max_size must be at least 1")
    if cfg.sort == "stlc":
        raise ValueError("use gen_stlc for simply-typed terms")
    for k in range(attempts):
        c = cfg if k == 0 else cfg.derived(k)
        rng = random.Random(c.seed)
        tg = TermGen(rng, c.vconsts, c.cconsts)
        gamma = _context(rng, tg.types, c)
        try:
            if c.sort == "comp":
                stoup = ("z", tg.types.comp(rng.randint(1, c.max_type_size)))
                want = tg.types.comp(rng.randint(1, c.max_type_size))
                ctx = Ctx(tuple(as_value(a) for _, a in reversed(gamma)), (stoup[1],), True)
            else:
                stoup = None
                want = tg.types.value(rng.randint(1, c.max_type_size))
                ctx = Ctx(tuple(as_value(a) for _, a in reversed(gamma)))
            t = tg.gen(ctx, want, rng.randint(max(1, c.max_size // 2), c.max_size))
        except GenFailure:
            continue
        if not cfg.min_size <= T.size(t) <= cfg.max_size:
            continue
        return check_judgement(Judgement(gamma, stoup, t, unembed(want)))
    raise GenFailure(f"no term found for {cfg}")


def gen_at(rng: random.Random, gamma: tuple, stoup, want, size: int, attempts: int = 50,
           vconsts=("a", "b"), cconsts=("c", "d")) -> Optional[Term]:
    """A term at a fixed judgement, or None; ``gamma`` outermost-first."""
    for _ in range(attempts):
        tg = TermGen(rng, vconsts, cconsts, steps=1500)
        ctx = Ctx(tuple(as_value(a) for _, a in reversed(gamma)),
                  () if stoup is None else (unembed(stoup[1]),), stoup is not None)
        try:
            t = tg.gen(ctx, want, size)
        except GenFailure:
            continue
        if T.size(t) <= 3 * size:
            return t
    return None


def gen_in_ctx(rng: random.Random, ctx: Ctx, want, size: int, attempts: int = 50,
               vconsts=("a", "b"), cconsts=("c", "d")) -> Optional[Term]:
    """Like ``gen_at`` but for a raw checker context (which may have inner stoup binders)."""
    for _ in range(attempts):
        tg = TermGen(rng, vconsts, cconsts, steps=1500)
        try:
            t = tg.gen(ctx, want, size)
        except GenFailure:
            continue
        if T.size(t) <= 3 * size:
            return t
    return None


# --- simply-typed terms --------------------------------------------------------------

def _stype(rng: random.Random, size: int, consts) -> SType:
    if size <= 1:
        return rng.choice([SConst(c) for c in consts] + [SUnit()])
    a = rng.randint(1, size - 1)
    return rng.choice([SProd, SFun, SFun])(_stype(rng, a, consts), _stype(rng, size - a, consts))


class StlcGen:
    def __init__(self, rng: random.Random, consts=("a",), steps: int = 3000):
        self.rng = rng
        self.consts = consts
        self.budget = steps

    def gen(self, theta: list, want: SType, size: int) -> STerm:
        self.budget -= 1
        if self.budget <= 0:
            raise GenFailure("step budget exhausted")
        r = self.rng
        leaves = [i for i, s in enumerate(theta) if s == want]
        opts: list[Callable[[], STerm]] = []
        if leaves:
            i = r.choice(leaves)
            opts.append(lambda: SVarT(i, f"x{i}"))
        if isinstance(want, SUnit):
            opts.append(lambda: SStar())
        if opts and (size <= 1 or r.random() < 1.0 / size):
            return r.choice(opts)()
        if size <= 1:
            raise GenFailure("out of size")
        n = size - 1
        k = r.randint(1, max(1, n - 1))
        moves: list[Callable[[], STerm]] = []
        match want:
            case SProd(a, b):
                moves.append(lambda: SPair(self.gen(theta, a, k), self.gen(theta, b, max(1, n - k))))
            case SFun(a, b):
                moves.append(lambda: SLam(a, self.gen([a] + theta, b, n)))
        cut = lambda: _stype(r, r.randint(1, 2), self.consts)
        if n >= 2:
            moves += [
                lambda: SFst(self.gen(theta, SProd(want, cut()), n)),
                lambda: SSnd(self.gen(theta, SProd(cut(), want), n)),
                lambda: (lambda x: SApp(self.gen(theta, SFun(x, want), k), self.gen(theta, x, max(1, n - k))))(cut()),
            ]
        r.shuffle(moves)
        for m in moves + opts:
            try:
                return m()
            except GenFailure:
                if self.budget <= 0:
                    raise
        raise GenFailure("no rule applies")


@dataclass(frozen=True)
class StlcJudgement:
    theta: tuple        # innermost first
    names: tuple
    term: STerm
    ty: SType

    def __str__(self) -> str:
        from .stlc import show_sterm
        ctx = ", ".join(f"{n}:{s}" for n, s in zip(reversed(self.names), reversed(self.theta)))
        return f"{ctx} |- {show_sterm(self.term, list(self.names))} : {self.ty}"


def gen_stlc(cfg: GenConfig, attempts: int = 200) -> StlcJudgement:
    for k in range(attempts):
        c = cfg if k == 0 else cfg.derived(k)
        rng = random.Random(c.seed)
        consts = c.vconsts[:1]
        n = rng.randint(0, c.context_size)
        theta = [_stype(rng, rng.randint(1, c.max_type_size), consts) for _ in range(n)]
        want = _stype(rng, rng.randint(1, c.max_type_size), consts)
        try:
            m = StlcGen(rng, consts).gen(theta, want, rng.randint(max(1, c.max_size // 2), c.max_size))
        except GenFailure:
            continue
        if not cfg.min_size <= _ssize(m) <= cfg.max_size:
            continue
        check_stlc(theta, m)
        return StlcJudgement(tuple(theta), tuple(f"x{i}" for i in range(n)), m, want)
    raise GenFailure(f"no simply-typed term found for {cfg}")


def _ssize(m: STerm) -> int:
    from .stlc import ssize
    return ssize(m)


def _is_value(m: STerm) -> bool:
    match m:
        case SVarT() | SStar() | SLam():
            return True
        case SPair(a, b):
            return _is_value(a) and _is_value(b)
        case SFst(a) | SSnd(a):
            return False
    return False


def gen_equal_pair(cfg: GenConfig, attempts: int = 200) -> tuple[StlcJudgement, StlcJudgement, str]:
    """Two simply-typed terms equal by one recorded step, tagged 'beta-v' or 'beta-eta'.

    'beta-v' pairs are beta steps whose argument is a value, which hold in the
    call-by-value theory; 'beta-eta' pairs hold in the full beta-eta theory.
    """
    for k in range(attempts):
        c = cfg if k == 0 else cfg.derived(k)
        rng = random.Random(c.seed)
        consts = c.vconsts[:1]
        n = rng.randint(0, c.context_size)
        theta = [_stype(rng, rng.randint(1, c.max_type_size), consts) for _ in range(n)]
        names = tuple(f"x{i}" for i in range(n))
        gen = StlcGen(rng, consts)
        size = max(2, rng.randint(1, c.max_size) // 2)
        kind = rng.choice(["beta-v", "beta-v", "beta", "fst", "snd", "fun-eta", "pair-eta", "unit-eta"])
        try:
            tau = _stype(rng, rng.randint(1, c.max_type_size), consts)
            if kind in ("beta-v", "beta"):
                sigma = _stype(rng, rng.randint(1, 2), consts)
                body = gen.gen([sigma] + theta, tau, size)
                if kind == "beta-v":
                    arg = _gen_value(gen, theta, sigma, size)
                else:
                    arg = gen.gen(theta, sigma, size)
                lhs = SApp(SLam(sigma, body, "y"), arg)
                rhs = ssubst(body, arg)
                tag = "beta-v" if kind == "beta-v" else "beta-eta"
            elif kind in ("fst", "snd"):
                other = _stype(rng, rng.randint(1, 2), consts)
                m = gen.gen(theta, tau, size)
                o = gen.gen(theta, other, size)
                lhs = SFst(SPair(m, o)) if kind == "fst" else SSnd(SPair(o, m))
                rhs, tag = m, "beta-eta"
            elif kind == "fun-eta":
                sigma = _stype(rng, rng.randint(1, 2), consts)
                f = gen.gen(theta, SFun(sigma, tau), size)
                lhs = SLam(sigma, SApp(sshift(f, 1), SVarT(0, "y")), "y")
                rhs, tag = f, "beta-eta"
            elif kind == "pair-eta":
                other = _stype(rng, rng.randint(1, 2), consts)
                m = gen.gen(theta, SProd(tau, other), size)
                lhs, rhs, tag = SPair(SFst(m), SSnd(m)), m, "beta-eta"
            else:
                m = gen.gen(theta, SUnit(), size)
                lhs, rhs, tag = m, SStar(), "beta-eta"
        except GenFailure:
            continue
        ty = check_stlc(theta, lhs)
        assert check_stlc(theta, rhs) == ty
        if lhs == rhs:
            continue
        return (StlcJudgement(tuple(theta), names, lhs, ty), StlcJudgement(tuple(theta), names, rhs, ty), tag)
    raise GenFailure(f"no equal pair found for {cfg}")


def _gen_value(gen: StlcGen, theta: list, sigma: SType, size: int) -> STerm:
    for _ in range(40):
        v = gen.gen(theta, sigma, size)
        if _is_value(v):
            return v
    match sigma:
        case SUnit():
            return SStar()
        case SFun(a, b):
            return SLam(a, gen.gen([a] + theta, b, size))
        case SProd(a, b):
            return SPair(_gen_value(gen, theta, a, size), _gen_value(gen, theta, b, size))
    raise GenFailure("no value of that type")
