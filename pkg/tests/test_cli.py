import io
import json
import subprocess
import sys

import pytest

from eec.cli import run
from eec.suites import SUITES


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def w(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return w


def test_check_top(write):
    code, out, _ = call("check", write("top.eec", "|- top : I\n"))
    assert code == 0 and "top" in out


def test_check_rejects_ill_typed(write):
    code, _, err = call("check", write("bad.eec", "| z:I |- !z : !I\n"))
    assert code == 1 and err


def test_check_json(write):
    code, out, _ = call("check", "--json", write("t.eec", "x:a |- (x, *) : a x 1\n"))
    assert code == 0 and json.loads(out)["ok"] is True


def test_self_translation_of_top(write):
    code, out, _ = call("translate", "--mode", "self-v", "--result-type", "^r", write("top.eec", "|- top : I\n"))
    assert code == 0
    assert out.strip() == "|- lfun k:^r -> k : ^r -o ^r"


def test_alpha_variants_are_equal(write):
    a = write("a.eec", "|- fun x:a -> x : a -> a\n")
    b = write("b.eec", "|- fun y:a -> y : a -> a\n")
    assert call("eq", a, b, "--fuel", "500")[0] == 0


def test_distinct_terms(write):
    a = write("a.eec", "x:a, y:a |- x : a\n")
    b = write("b.eec", "x:a, y:a |- y : a\n")
    code, out, _ = call("eq", a, b)
    assert code == 1 and out.startswith("DistinctNormalForms")


def test_out_of_fuel_is_exit_2(write):
    a = write("a.eec", "|- (fun x:1 -> x) * : 1\n")
    b = write("b.eec", "|- * : 1\n")
    assert call("eq", a, b, "--fuel", "500")[0] == 0
    code, out, _ = call("eq", a, b, "--fuel", "0", "--json")
    assert code == 2 and json.loads(out)["verdict"] == "Unknown"


def test_fuel_from_environment(write, monkeypatch):
    a = write("a.eec", "|- (fun x:1 -> x) * : 1\n")
    b = write("b.eec", "|- * : 1\n")
    monkeypatch.setenv("EEC_FUEL", "0")
    assert call("eq", a, b)[0] == 2
    monkeypatch.setenv("EEC_FUEL", "100")
    assert call("eq", a, b)[0] == 0


def test_mismatched_judgements(write):
    a = write("a.eec", "|- * : 1\n")
    b = write("b.eec", "|- top : I\n")
    assert call("eq", a, b)[0] == 1


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["translate", "x.eec"], ["check", "/no/such/file.eec"],
                                  ["suite"], ["suite", "bogus"], ["suite", "typing", "--option", "nokey"]])
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == 3 and err.startswith("eec: usage error")


def test_parse_error_is_negative(write):
    assert call("check", write("p.eec", "|- fun x -> : a\n"))[0] == 1


def test_json_round_trip(write):
    src = write("f.eec", "x:a | z:^c |- let !y (*) w be !x (*) z in !y (*) w : !a (*) ^c\n")
    code, js, _ = call("parse", "--emit-json", src)
    assert code == 0
    code2, js2, _ = call("parse", "--from-json", "--emit-json", write("f.json", js))
    assert code2 == 0 and js2 == js
    _, text, _ = call("parse", "--from-json", write("g.json", js))
    assert text.strip() == "x:a | z:^c |- let !y (*) w be !x (*) z in !y (*) w : !a (*) ^c"


def test_parse_bad_json(write):
    assert call("parse", "--from-json", write("b.json", "{not json"))[0] == 1


def test_pipeline_through_stdin(write):
    src = write("f.eec", "|- fun x:a -> (x, x) : a -> a x a\n")
    first = subprocess.run([sys.executable, "-m", "eec.cli", "parse", "--emit-json", src],
                           capture_output=True, text=True, check=True)
    second = subprocess.run([sys.executable, "-m", "eec.cli", "parse", "--from-json", "--emit-json", "-"],
                            input=first.stdout, capture_output=True, text=True, check=True)
    assert second.stdout == first.stdout


@pytest.mark.parametrize("mode", ["cbv", "cbn", "lincps-cbv", "lincps-cbn"])
def test_stlc_modes(write, mode):
    code, out, _ = call("translate", "--mode", mode, write("s.eec", "y:a |- (fun x:a -> x) y : a\n"))
    assert code == 0 and "|-" in out


def test_stlc_modes_reject_computations(write):
    assert call("translate", "--mode", "cbv", write("s.eec", "|- top : I\n"))[0] == 3


def test_self_mode_must_match_stoup(write):
    f = write("s.eec", "| z:^c |- z : ^c\n")
    assert call("translate", "--mode", "self-v", f)[0] == 3
    code, out, _ = call("translate", "--mode", "self-c", f)
    assert code == 0


def test_iso_modes(write):
    code, out, _ = call("translate", "--mode", "iso-v", write("t.txt", "a x 1\n"))
    assert code == 0 and len(out.strip().splitlines()) == 2
    assert call("translate", "--mode", "iso-c", write("c.txt", "^c & I\n"))[0] == 0
    assert call("translate", "--mode", "iso-c", write("v.txt", "a\n"))[0] == 3


def test_witness(write):
    code, out, _ = call("translate", "--mode", "witness", write("w.eec", "x:a |- x : a\n"))
    assert code == 0 and out.strip().endswith("Proved")


def test_unsupported_result_type(write):
    code, _, err = call("translate", "--mode", "lincps-cbn", "--result-type", "a", write("s.eec", "y:a |- y : a\n"))
    assert code == 3 and "unsupported configuration" in err


def test_suite_list():
    code, out, _ = call("suite", "--list")
    assert code == 0 and out.split() == list(SUITES)


def test_suite_run_is_deterministic():
    a = call("suite", "axioms", "--option", "per_rule=1", "--json")
    b = call("suite", "axioms", "--option", "per_rule=1", "--json")
    assert a[0] == 0 and a[1] == b[1]
    assert json.loads(a[1])["suite"] == "axioms"


def test_suite_text_and_timing():
    code, out, _ = call("suite", "iso", "--option", "max_type_size=1", "--result-type", "I", "--timing")
    assert code == 0 and out.startswith("suite iso: ok") and "wall time" in out
