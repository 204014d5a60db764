"""The ten acceptance criteria, each run at full size against its stated tolerance.

Every test prints one PASS/FAIL line (also collected into the pytest summary).
Run alone with ``pytest tests/test_acceptance.py -v -s``; the iso sweep dominates
the runtime.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from eec.suites import load_corpus, run_suite


def verdict(number: int, title: str, rep, ok: bool, extra: str = "") -> None:
    t = rep.totals
    line = (f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: "
            f"{t['pass']} pass, {t['fail']} fail, {t['unknown']} unknown, {rep.wall_time:.1f}s"
            + (f"; {extra}" if extra else ""))
    print(line)
    ACCEPTANCE_LINES.append(line)
    if not ok:
        failing = [c for c in rep.cases if c.verdict != "pass"][:10]
        pytest.fail(line + "\n" + "\n".join(f"  {c.name}: {c.verdict} {c.detail}" for c in failing))


def test_typing_suite():
    rep = run_suite("typing")
    ill = sum(1 for c in rep.cases if c.name.startswith("ill-typed "))
    ok = rep.ok and ill >= 15 and len(rep.cases) - ill >= 500 and rep.wall_time < 10
    verdict(1, "typing (500 generated + ill-typed corpus, < 10 s)", rep, ok, f"{ill} ill-typed cases")


def test_axiom_suite():
    rep = run_suite("axioms", per_rule=10, fuel=50)
    ok = rep.ok and rep.totals["unknown"] == 0 and len(rep.cases) == 240 and rep.wall_time < 30
    verdict(2, "axioms (24 rules x 10, fuel 50, 0 Unknown, < 30 s)", rep, ok)


def test_translation_typing_suite():
    rep = run_suite("translation-typing", count=200)
    ok = rep.ok and len(rep.cases) == 800 and rep.wall_time < 30
    verdict(3, "translation typing (200 STLC + 200 EEC, both R, < 30 s)", rep, ok)


def test_recovering_suite():
    rep = run_suite("recovering", max_type_size=7, count=25)
    terms = sum(1 for c in rep.cases if " term " in c.name)
    ok = rep.ok and rep.totals["unknown"] == 0 and terms == 100 and rep.wall_time < 60
    verdict(4, "recovering (types up to size 7, 25 terms, < 60 s)", rep, ok)


def test_substitution_suite():
    rep = run_suite("substitution")
    syntactic = [c for c in rep.cases if c.name.startswith(("statement (1)", "statement (2)"))]
    ok = rep.ok and all(c.verdict == "pass" for c in syntactic) and rep.totals["unknown"] <= 2
    verdict(5, "self-translation substitution (0 failures, <= 2 Unknown)", rep, ok)


def test_soundness_suite():
    rep = run_suite("soundness-self")
    t = rep.totals
    ok = t["fail"] == 0 and t["unknown"] <= 0.02 * len(rep.cases)
    verdict(6, "soundness of the self-translation (<= 2% Unknown, both R)", rep, ok)


def test_involution_suite():
    assert len(load_corpus()) >= 40
    rep = run_suite("involution")
    ok = rep.ok and rep.totals["unknown"] <= 4 and rep.wall_time < 300
    verdict(7, "involution (corpus, both R, <= 4 Unknown, < 5 min)", rep, ok)


def test_iso_suite():
    rep = run_suite("iso", max_type_size=6)
    ok = rep.ok and rep.totals["unknown"] == 0
    verdict(8, "iso laws (all types up to size 6, both R, 0 Unknown)", rep, ok, rep.notes[0])


def test_fullness_suite():
    rep = run_suite("fullness", count=30)
    ok = rep.ok and rep.totals["fail"] == 0 and rep.totals["pass"] >= 30
    verdict(9, "fullness witnesses (30 terms)", rep, ok)


def test_counterexample():
    rep = run_suite("counterexample")
    distinct = next(c for c in rep.cases if c.name == "translated pair has distinct normal forms")
    ok = rep.ok and distinct.verdict == "pass"
    verdict(10, "counterexample (translated pair is DistinctNormalForms)", rep, ok)
