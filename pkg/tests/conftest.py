import random

import pytest
from hypothesis import settings, strategies as st

from evencliff.exactalg import GF, QQ, HomogeneousPoly, monomials
from evencliff.quadform import SplitTwist, random_form

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

F = GF(10007)
FIELDS = st.sampled_from([QQ, F])


@st.composite
def polys(draw, field, nvars, degree, coeff=st.integers(-20, 20)):
    mons = monomials(nvars, degree)
    picked = draw(st.lists(st.sampled_from(mons), max_size=len(mons), unique=True))
    return HomogeneousPoly(field, nvars, {e: draw(coeff) for e in picked})


@st.composite
def twists(draw, base_dims=(0, 1, 2)):
    n = draw(st.sampled_from(base_dims))
    a = tuple(draw(st.integers(0, 1)) for _ in range(3))
    l = draw(st.integers(-1, 2 * max(a)))
    return SplitTwist(n, a, l)


@st.composite
def forms(draw, field=None, base_dims=(0, 1, 2)):
    field = field or draw(FIELDS)
    tw = draw(twists(base_dims))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_form(tw, field, random.Random(seed))


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.LINES, key=lambda s: int(s.split("]")[1].split(".")[0])):
            terminalreporter.write_line(line)
