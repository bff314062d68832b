import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from genrauzy.genperm import parse, random_permutation
from genrauzy.reduce import find_reduction

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

Q2_SEED = "1 1 2 2 / 3 4 3 4"
Q7_SEED = "1 2 2 3 3 4 1 / 5 6 7 7 5 6 4"
EXAMPLE = "A B C B D / D E A C E"


@st.composite
def perms(draw, dmin=2, dmax=6):
    d = draw(st.integers(dmin, dmax))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_permutation(d, random.Random(seed))


@st.composite
def irreducible_perms(draw, dmin=2, dmax=6):
    d = draw(st.integers(dmin, dmax))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    while True:
        p = random_permutation(d, rng)
        if find_reduction(p) is None:
            return p


@pytest.fixture
def example():
    return parse(EXAMPLE)


# reference members of the Q(2, -1, -1) class (two blocks, 22 + 21 nodes)
Q2_NODES = """
1 1 2 2 / 3 4 3 4
1 1 2 / 3 2 4 3 4
1 1 / 2 3 3 4 2 4
1 2 2 / 3 4 4 1 3
1 2 3 3 / 2 4 4 1
1 2 3 2 / 3 4 4 1
1 2 2 3 / 3 4 4 1
1 1 2 3 3 / 4 2 4
1 1 2 3 / 3 4 2 4
1 1 2 / 3 3 4 2 4
1 1 / 2 2 3 4 3 4
1 2 2 / 3 3 4 1 4
1 2 3 3 / 4 4 2 1
1 2 1 3 3 / 4 4 2
1 2 1 2 3 3 / 4 4
1 2 1 2 3 / 3 4 4
1 1 2 3 / 3 4 4 2
1 1 2 / 3 2 4 4 3
1 1 / 2 3 2 4 4 3
1 2 2 / 3 1 3 4 4
1 2 3 3 / 4 1 4 2
1 2 2 3 3 / 4 1 4
1 2 1 2 / 3 3 4 4
1 2 3 1 3 / 4 4 2
1 2 2 3 1 3 / 4 4
1 2 2 3 1 / 3 4 4
1 2 2 3 / 3 1 4 4
1 2 2 3 / 3 4 1 4
1 2 1 / 3 3 2 4 4
1 2 3 2 / 4 4 3 1
1 1 2 3 2 / 4 4 3
1 1 2 3 2 3 / 4 4
1 1 2 3 2 / 3 4 4
1 1 2 3 / 3 2 4 4
1 1 2 / 3 2 3 4 4
1 1 / 2 3 2 3 4 4
1 2 2 / 3 4 3 4 1
1 2 2 3 / 4 4 3 1
1 2 3 3 1 / 4 4 2
1 2 1 3 3 2 / 4 4
1 2 1 3 3 / 2 4 4
1 2 1 3 / 2 3 4 4
1 2 1 / 2 3 3 4 4
""".strip().splitlines()

Q2_ATTACHED = ["1 1 2 2 3 / 4 3 4", "1 2 1 / 3 3 4 4 2"]

EXCEPTIONAL = [
    ("Q(9, -1)", "1 1 2 3 2 3 4 / 5 4 5 6 7 6 7", 95944),
    ("Q(9, -1)", "1 1 2 3 4 5 6 / 3 2 7 5 7 6 4", 12366),
    ("Q(6, 3, -1)", "1 1 2 3 2 3 4 5 / 4 6 5 6 7 8 7 8", 531674),
    ("Q(6, 3, -1)", "1 2 3 4 5 6 2 3 / 7 1 7 6 5 4 8 8", 72172),
    ("Q(3, 3, 3, -1)", "1 1 2 3 4 5 6 7 6 / 7 8 5 8 2 4 9 3 9", 612838),
    ("Q(3, 3, 3, -1)", "1 1 2 3 2 3 4 5 6 / 4 7 8 9 7 8 6 5 9", 88374),
    ("Q(12)", "1 2 1 2 3 4 5 3 / 6 7 6 7 5 8 4 8", 881599),
    ("Q(12)", "1 2 3 4 5 6 7 6 / 8 7 5 8 4 3 2 1", 146049),
]
