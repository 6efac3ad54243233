import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cbneed.checks import Workbench
from cbneed.corpus import generate, random_program
from cbneed.syntax import Abs, App, Var

settings.register_profile(
    "default", deadline=None, max_examples=120,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

NAMES = ("x", "y", "z", "w", "a", "b")

# raw terms, binders may shadow and clash
terms = st.recursive(
    st.sampled_from(NAMES).map(Var),
    lambda inner: st.one_of(
        st.builds(Abs, st.sampled_from(NAMES), inner),
        st.builds(App, inner, inner)),
    max_leaves=12)

# well-formed programs from the corpus generator, shrinking on the seed
programs = st.builds(lambda seed, bound: random_program(random.Random(seed), bound),
                     st.integers(0, 2 ** 32 - 1), st.integers(4, 40))


@pytest.fixture(scope="session")
def corpus():
    return generate(500, 40, seed=7)


@pytest.fixture(scope="session")
def workbench(corpus):
    return Workbench(corpus)
