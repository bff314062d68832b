import random

import pytest
from hypothesis import given

from genrauzy.genperm import canonical, enumerate_all, parse, random_permutation
from genrauzy.rauzy import predecessors, r0, rauzy
from genrauzy.reduce import find_reduction

from conftest import EXAMPLE, perms


def classical(top, bottom, eps):
    """Rauzy moves on a true permutation given by its two rows of names."""
    top, bottom = list(top), list(bottom)
    a, b = top[-1], bottom[-1]
    if a == b:
        return None
    if eps == 0:
        bottom.pop()
        bottom.insert(bottom.index(a) + 1, b)
    else:
        top.pop()
        top.insert(top.index(b) + 1, a)
    return top, bottom


@pytest.mark.parametrize("src, eps, dst", [
    (EXAMPLE, 0, "A B C B D / D E E A C"),
    ("A B A / B D C C D", 0, "D A B A / B D C C"),
    (EXAMPLE, 1, "A B C B / D D E A C E"),
    ("A B C D / D C B A", 1, "A D B C / D C B A"),
])
def test_moves(src, eps, dst):
    q = rauzy(parse(src), eps, raw=True)
    assert str(q) == dst


@pytest.mark.parametrize("src, eps", [("A B A / B C C", 0), ("A B A / B C C", 1),
                                      ("A B A / B D C C D", 1)])
def test_undefined(src, eps):
    assert rauzy(parse(src), eps) is None


def test_type_change():
    assert rauzy(parse(EXAMPLE), 1, raw=True).type == (4, 6)


def test_canonical_output():
    q = r0(parse(EXAMPLE))
    assert canonical(q) == q


def test_predecessor_example():
    target = parse("A B C B D / D E E A C")
    assert parse(EXAMPLE) in predecessors(target, 0)


def test_true_permutations_have_two_predecessors():
    # one true permutation predecessor for each move type
    for d in range(2, 5):
        for p in enumerate_all(d):
            if p.is_true_permutation() and find_reduction(p) is None:
                for eps in (0, 1):
                    assert len([q for q in predecessors(p, eps) if q.is_true_permutation()]) == 1


def test_sources_exist():
    assert any(not predecessors(p, 0) and not predecessors(p, 1)
               for p in enumerate_all(4, require_convention=True))


def test_classical_agreement_exhaustive():
    rng = random.Random(0)
    for d in range(2, 6):
        for _ in range(200):
            p = random_permutation(d, rng, l=d)
            if not p.is_true_permutation():
                continue
            for eps in (0, 1):
                q = rauzy(p, eps, raw=True)
                exp = classical(p.top(), p.bottom(), eps)
                if exp is None:
                    assert q is None
                else:
                    assert (q.top(), q.bottom()) == tuple(map(tuple, exp))


@given(perms())
def test_predecessors_invert(p):
    for eps in (0, 1):
        q = rauzy(p, eps, raw=True)
        if q is not None:
            assert p in predecessors(q, eps)
            assert sorted(q.word) == sorted(p.word)
        for pre in predecessors(p, eps):
            assert rauzy(pre, eps, raw=True) == p
