"""Hypothesis strategies built on the seeded generators."""

from hypothesis import settings, strategies as st

from eec.gen import GenConfig, gen_equal_pair, gen_stlc, gen_term

settings.register_profile("eec", deadline=None, max_examples=40)
settings.load_profile("eec")

seeds = st.integers(min_value=0, max_value=10**6)


def judgements(sort=None, max_size=8):
    sorts = st.sampled_from(["value", "comp"]) if sort is None else st.just(sort)
    return st.builds(lambda s, k: gen_term(GenConfig(seed=s, max_size=max_size, sort=k)), seeds, sorts)


def stlc_judgements(max_size=8):
    return seeds.map(lambda s: gen_stlc(GenConfig(seed=s, sort="stlc", max_size=max_size)))


def equal_pairs(max_size=8):
    return seeds.map(lambda s: gen_equal_pair(GenConfig(seed=s, sort="stlc", max_size=max_size)))


results = st.sampled_from(["^r", "I"])
