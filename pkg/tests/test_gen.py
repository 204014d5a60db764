from collections import Counter

import pytest
from hypothesis import given

from eec import terms as T
from eec.gen import GenConfig, GenFailure, gen_equal_pair, gen_stlc, gen_term
from eec.stlc import SApp, SFst, SLam, SPair, SVarT, check_stlc
from eec.typecheck import Judgement, check_judgement
from strategies import equal_pairs, seeds


@given(seeds)
def test_output_rechecks(seed):
    for sort in ("value", "comp"):
        tt = gen_term(GenConfig(seed=seed, max_size=10, sort=sort))
        check_judgement(Judgement(tt.gamma, tt.stoup, tt.term, tt.ty))
        assert (tt.stoup is None) == (sort == "value")
        assert T.size(tt.term) <= 10


@given(seeds)
def test_same_config_same_term(seed):
    cfg = GenConfig(seed=seed, max_size=9, sort="comp")
    a, b = gen_term(cfg), gen_term(cfg)
    assert a.term == b.term and repr(a.term) == repr(b.term)
    assert a.gamma == b.gamma and a.stoup == b.stoup and a.ty == b.ty


def test_constructor_coverage():
    seen = Counter()
    for i in range(1000):
        tt = gen_term(GenConfig(seed=i, max_size=12, sort="value" if i % 2 else "comp"))
        seen.update(type(n).__name__ for _, n in T.iter_nodes(tt.term))
    assert set(seen) == {c.__name__ for c in T.NODE_CLASSES}


def test_max_size_must_be_positive():
    with pytest.raises(ValueError):
        gen_term(GenConfig(max_size=0))


def test_tiny_terms_are_possible():
    tt = gen_term(GenConfig(seed=3, max_size=1))
    assert T.size(tt.term) == 1


def test_exhausted_attempts_raise():
    with pytest.raises(GenFailure):
        gen_term(GenConfig(seed=0, max_size=5), attempts=0)


@given(seeds)
def test_stlc_terms_check(seed):
    j = gen_stlc(GenConfig(seed=seed, sort="stlc", max_size=9))
    assert check_stlc(list(j.theta), j.term) == j.ty


@given(equal_pairs())
def test_equal_pairs_share_a_judgement(pair):
    a, b, tag = pair
    assert tag in ("beta-v", "beta-eta")
    assert a.theta == b.theta and a.ty == b.ty
    assert check_stlc(list(b.theta), b.term) == b.ty


def test_equal_pair_shapes():
    tags = Counter()
    shapes = set()
    for i in range(200):
        a, b, tag = gen_equal_pair(GenConfig(seed=i, sort="stlc", max_size=8))
        tags[tag] += 1
        m = a.term
        if isinstance(m, SApp) and isinstance(m.fn, SLam):
            shapes.add("beta")
        if isinstance(m, SLam) and isinstance(m.body, SApp) and m.body.arg == SVarT(0):
            shapes.add("fun-eta")
        if isinstance(m, SFst) and isinstance(m.arg, SPair):
            shapes.add("fst")
    assert tags["beta-v"] and tags["beta-eta"]
    assert {"beta", "fun-eta", "fst"} <= shapes
