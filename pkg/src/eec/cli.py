"""The ``eec`` command line.

Exit codes: 0 success or Proved, 1 negative verdict (type error, distinct normal
forms, failed suite), 2 Unknown (fuel ran out), 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import stlc as S
from . import terms as T
from . import types as Ty
from .equality import JudgementMismatch, check_eq
from .suites import SUITES, UnknownSuite, run_suite
from .syntax import (ParseError, dumps, judgement_from_json, judgement_to_json, parse_judgement, parse_type,
                     show_judgement, show_type)
from .translate import (UnsupportedConfiguration, cbn_term, cbv_term, fullness_witness, iso_comp, iso_value,
                        lincps_cbn_term, lincps_cbv_term, result_type, self_cterm, self_term, self_vterm)
from .typecheck import Judgement, TypedTerm, TypingError, check_judgement

MODES = ("cbv", "cbn", "lincps-cbv", "lincps-cbn", "self-v", "self-c", "iso-v", "iso-c", "witness")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _judgement(path: str) -> TypedTerm:
    return check_judgement(parse_judgement(_read(path)))


def _emit(out, args, text: str, obj) -> None:
    if args.json:
        out.write(dumps(obj) + "\n")
    else:
        out.write(text + "\n")


def _typed_json(tt: TypedTerm) -> dict:
    return judgement_to_json(Judgement(tt.gamma, tt.stoup, tt.term, tt.ty))


def _typed_text(tt: TypedTerm) -> str:
    return show_judgement(Judgement(tt.gamma, tt.stoup, tt.term, tt.ty))


# simply-typed input is written in the value fragment of the surface grammar

def _to_stype(ty) -> S.SType:
    match ty:
        case Ty.Const(n):
            return S.SConst(n)
        case Ty.Unit():
            return S.SUnit()
        case Ty.Prod(a, b):
            return S.SProd(_to_stype(a), _to_stype(b))
        case Ty.Fun(a, b):
            return S.SFun(_to_stype(a), _to_stype(b))
    raise UsageError(f"type {show_type(ty)} is not simply typed")


def _to_sterm(t: T.Term) -> S.STerm:
    match t:
        case T.Var(i, n):
            return S.SVarT(i, n)
        case T.Star():
            return S.SStar()
        case T.Pair(a, b):
            return S.SPair(_to_sterm(a), _to_sterm(b))
        case T.Fst(a):
            return S.SFst(_to_sterm(a))
        case T.Snd(a):
            return S.SSnd(_to_sterm(a))
        case T.Lam(a, b, n):
            return S.SLam(_to_stype(a), _to_sterm(b), n)
        case T.App(f, a):
            return S.SApp(_to_sterm(f), _to_sterm(a))
    raise UsageError(f"{type(t).__name__} is not a simply-typed term former")


def _stlc_input(path: str):
    j = parse_judgement(_read(path))
    if j.stoup is not None:
        raise UsageError("simply-typed input cannot have a stoup")
    theta = [_to_stype(a) for _, a in reversed(j.gamma)]
    names = [n for n, _ in reversed(j.gamma)]
    m = _to_sterm(j.subject)
    try:
        ty = S.check_stlc(theta, m)
    except S.StlcTypeError as e:
        raise TypingError("mismatch", [], str(e)) from None
    if j.ty is not None and _to_stype(j.ty) != ty:
        raise TypingError("mismatch", [], f"term has type {S.show_stype(ty)}", j.ty, ty)
    return theta, m, names


def cmd_check(args, out) -> int:
    tt = _judgement(args.file)
    _emit(out, args, _typed_text(tt), {"ok": True, "judgement": _typed_json(tt)})
    return 0


def cmd_translate(args, out) -> int:
    mode = args.mode
    r = result_type(args.result_type)
    if mode in ("cbv", "cbn", "lincps-cbv", "lincps-cbn"):
        theta, m, names = _stlc_input(args.file)
        fn = {"cbv": lambda: cbv_term(theta, m, names), "cbn": lambda: cbn_term(theta, m, names),
              "lincps-cbv": lambda: lincps_cbv_term(theta, m, r, names),
              "lincps-cbn": lambda: lincps_cbn_term(theta, m, r, names)}[mode]
        res = fn()
        _emit(out, args, _typed_text(res), {"mode": mode, "judgement": _typed_json(res)})
        return 0
    if mode in ("iso-v", "iso-c"):
        ty = parse_type(_read(args.file).strip())
        if mode == "iso-c":
            if not isinstance(ty, Ty.CompType):
                raise UsageError("iso-c needs a computation type")
            fwd, inv = iso_comp(ty, r)
        else:
            fwd, inv = iso_value(Ty.as_value(ty), r)
        text = _typed_text(fwd) + "\n" + _typed_text(inv)
        _emit(out, args, text, {"mode": mode, "iso": _typed_json(fwd), "inverse": _typed_json(inv)})
        return 0
    if mode == "witness":
        return _witness(args, out, r)
    tt = _judgement(args.file)
    if mode == "self-v" and tt.stoup is not None:
        raise UsageError("self-v needs a judgement without a stoup; use self-c")
    if mode == "self-c" and tt.stoup is None:
        raise UsageError("self-c needs a judgement with a stoup; use self-v")
    res = self_vterm(tt, r) if mode == "self-v" else self_cterm(tt, r)
    _emit(out, args, _typed_text(res), {"mode": mode, "judgement": _typed_json(res)})
    return 0


def _witness(args, out, r) -> int:
    """The source judgement comes from FILE; ``--target`` optionally supplies the translated term."""
    src = _judgement(args.file)
    if args.target:
        t = _judgement(args.target)
    else:
        t = self_term(src, r)
    u = fullness_witness(t, src.gamma, src.ty, r, stoup=src.stoup)
    v = check_eq(self_term(u, r), t, fuel=args.fuel)
    text = _typed_text(u) + f"\n{v.verdict}"
    _emit(out, args, text, {"mode": "witness", "judgement": _typed_json(u), "check": v.to_json()})
    return _code(v)


def _code(v) -> int:
    return {"Proved": 0, "DistinctNormalForms": 1, "Unknown": 2}[v.verdict]


def cmd_eq(args, out) -> int:
    a, b = _judgement(args.left), _judgement(args.right)
    try:
        v = check_eq(a, b, fuel=args.fuel)
    except JudgementMismatch as e:
        _emit(out, args, f"error: {e}", {"error": "judgement-mismatch", "message": str(e)})
        return 1
    if v.verdict == "Proved":
        text = "Proved\n" + v.trace_text() if v.trace else "Proved"
    elif v.verdict == "Unknown":
        text = f"Unknown ({v.reason}, fuel used {v.fuel_used})"
    else:
        from .syntax import show_term
        text = (f"DistinctNormalForms\n  {show_term(v.nf1, a.gamma, a.stoup)}\n"
                f"  {show_term(v.nf2, b.gamma, b.stoup)}")
    _emit(out, args, text.rstrip("\n"), v.to_json())
    return _code(v)


def cmd_parse(args, out) -> int:
    if args.from_json:
        j = judgement_from_json(json.loads(_read(args.file)))
    else:
        j = parse_judgement(_read(args.file))
    if args.emit_json:
        out.write(dumps(judgement_to_json(j)) + "\n")
    else:
        out.write(show_judgement(j) + "\n")
    return 0


def _option(s: str):
    if "=" not in s:
        raise UsageError(f"suite option {s!r} is not key=value")
    k, v = s.split("=", 1)
    try:
        return k.replace("-", "_"), int(v)
    except ValueError:
        return k.replace("-", "_"), v


def cmd_suite(args, out) -> int:
    if args.list:
        out.write("\n".join(SUITES) + "\n")
        return 0
    if not args.name:
        raise UsageError("suite needs a name (or --list)")
    opts = dict(_option(o) for o in args.option)
    opts["seed"] = args.seed
    if args.fuel is not None:
        opts["fuel"] = args.fuel
    if args.result_type:
        opts["results"] = tuple(args.result_type)
    try:
        rep = run_suite(args.name, **opts)
    except UnknownSuite:
        raise UsageError(f"unknown suite {args.name!r}; choose from {', '.join(SUITES)}") from None
    if args.json:
        out.write(json.dumps(rep.to_json(timing=args.timing), sort_keys=True, indent=1) + "\n")
    else:
        out.write(rep.to_text(verbose=args.verbose, timing=args.timing) + "\n")
    if rep.ok:
        return 0
    return 1 if rep.totals["fail"] else 2


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eec", description="Typecheck, translate and compare enriched effect calculus terms.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(q, result=True):
        q.add_argument("--json", action="store_true", help="machine-readable output")
        q.add_argument("--fuel", type=int, default=None, help="rewrite budget per phase (default: EEC_FUEL or built in)")
        if result:
            q.add_argument("--result-type", default="^r", help="answer type R (default ^r)")

    q = sub.add_parser("check", help="typecheck a judgement file")
    q.add_argument("file")
    common(q, result=False)
    q.set_defaults(run=cmd_check)

    q = sub.add_parser("translate", help="run a translation")
    q.add_argument("file")
    q.add_argument("--mode", required=True, choices=MODES)
    q.add_argument("--target", help="witness mode: the translated judgement to invert")
    common(q)
    q.set_defaults(run=cmd_translate)

    q = sub.add_parser("eq", help="decide equality of two judgements")
    q.add_argument("left")
    q.add_argument("right")
    common(q, result=False)
    q.set_defaults(run=cmd_eq)

    q = sub.add_parser("parse", help="parse and print, or convert to and from JSON")
    q.add_argument("file")
    q.add_argument("--emit-json", action="store_true")
    q.add_argument("--from-json", action="store_true")
    q.set_defaults(run=cmd_parse, json=False)

    q = sub.add_parser("suite", help="run a theorem suite")
    q.add_argument("name", nargs="?")
    q.add_argument("--list", action="store_true")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--json", action="store_true")
    q.add_argument("--fuel", type=int, default=None)
    q.add_argument("--result-type", action="append", help="R choice; repeat for several (default ^r and I)")
    q.add_argument("--option", action="append", default=[], metavar="KEY=VALUE", help="suite parameter")
    q.add_argument("--verbose", action="store_true", help="list passing cases too")
    q.add_argument("--timing", action="store_true", help="include wall time (not deterministic)")
    q.set_defaults(run=cmd_suite)
    return p


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = None
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing command (check, translate, eq, parse, suite)")
        return args.run(args, out)
    except UsageError as e:
        err.write(f"eec: usage error: {e}\n")
        return 3
    except UnsupportedConfiguration as e:
        err.write(f"eec: unsupported configuration: {e}\n")
        return 3
    except json.JSONDecodeError as e:
        err.write(f"eec: parse-error: invalid JSON: {e}\n")
        return 1
    except (ParseError, TypingError) as e:
        kind = getattr(e, "kind", "parse-error")
        err.write(f"eec: {kind}: {e}\n")
        if getattr(args, "json", False):
            out.write(dumps({"ok": False, "error": kind, "message": str(e)}) + "\n")
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
