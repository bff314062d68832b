import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from genrauzy.errors import ConnectionError, NoSuspensionError, NotSuitableError
from genrauzy.genperm import enumerate_all, parse
from genrauzy.reduce import find_reduction, is_strongly_irreducible, random_balanced_lengths
from genrauzy.suspend import (PseudoSuspension, SuspensionData, check_suspension, find_suspension,
                              geodesic_flow, heights, make_suitable, masur_veech_pseudo,
                              masur_veech_suspension, polygon, strict_pseudo, suspension_step)

from conftest import EXAMPLE, irreducible_perms, perms

F = Fraction


def data_of(**kw):
    return SuspensionData({a: (F(re), F(im)) for a, (re, im) in kw.items()})


def test_mv_true_permutation():
    tau = masur_veech_pseudo(parse("A B C D / D C B A")).tau
    assert tau == {"A": 3, "B": 1, "C": -1, "D": -3}


def test_mv_flip():
    p = parse("A A / B B")
    ps = masur_veech_pseudo(p)
    assert ps.is_valid(p)
    top, bot = ps.prefix_sums(p)
    assert top[-1] == bot[-1] == 0


@given(perms(dmax=7))
def test_mv_always_valid(p):
    assert masur_veech_pseudo(p).is_valid(p)


def test_strict_pseudo_examples():
    p = parse("A B / B A")
    ps = strict_pseudo(p)
    assert ps is not None and ps.is_strict(p)
    assert strict_pseudo(parse("1 2 1 / 2 3 3 4 4")) is None


def test_find_suspension_examples():
    p = parse("1 1 2 3 2 3 4 / 5 4 5 6 7 6 7")
    data = find_suspension(p)
    assert data is not None and not check_suspension(p, data.zeta)
    assert find_suspension(parse("1 1 2 2 3 / 4 3 4")) is None


def test_small_equivalences():
    for d in range(1, 4):
        for p in enumerate_all(d, require_convention=True):
            assert (find_suspension(p) is not None) == (find_reduction(p) is None)
            assert (strict_pseudo(p) is not None) == is_strongly_irreducible(p)


def test_polygon_two_letters():
    p = parse("A B / B A")
    data = data_of(A=(1, 1), B=(2, -1))
    poly = polygon(p, data)
    assert list(poly.top) == [(0, 0), (1, 1), (3, 0)]
    assert list(poly.bottom) == [(0, 0), (2, -1), (3, 0)]
    assert poly.suitable and poly.area() == 3
    assert heights(p, data) == {"A": 1, "B": 1}
    js = poly.to_json()
    assert js["L0"][1] == ["1", "1"]


def test_degenerate_rejected():
    p = parse("A B / B A")
    assert check_suspension(p, {"A": (F(1), F(0)), "B": (F(2), F(0))})
    with pytest.raises(NoSuspensionError):
        make_suitable(p, data_of(A=(1, 0), B=(2, 0)))


def crossing_instance():
    p = parse(EXAMPLE)
    data = data_of(A=(1, 3), B=(1, -1), C=(1, 1), D=(10, -4), E=(1, -1))
    return p, data


def test_make_suitable_crossing():
    p, data = crossing_instance()
    assert not check_suspension(p, data.zeta)
    assert not polygon(p, data).suitable
    out = make_suitable(p, data)
    assert polygon(p, out).suitable
    assert out.im() == data.im()
    assert not check_suspension(p, out.zeta)


def test_make_suitable_idempotent():
    p = parse("A B / B A")
    data = data_of(A=(1, 1), B=(2, -1))
    assert make_suitable(p, data) == data


def test_heights_need_suitable():
    p, data = crossing_instance()
    with pytest.raises(NotSuitableError):
        heights(p, data)


def test_step_with_flip_pair():
    p = parse("A B C D / D C B A")
    data = data_of(A=(1, 3), B=(2, 1), C=(1, -1), D=(3, -3))
    q, out = suspension_step(p, data)
    assert str(q) == "A B C D / D A C B"
    assert out.zeta["D"] == (F(2), F(-6)) and out.zeta["A"] == data.zeta["A"]


def test_step_connection():
    p = parse("A B / B A")
    with pytest.raises(ConnectionError):
        suspension_step(p, data_of(A=(1, 1), B=(1, -1)))


def test_flow():
    p = parse("A B / B A")
    data = data_of(A=(1, 1), B=(2, -1))
    assert geodesic_flow(data, 1) == data
    assert polygon(p, geodesic_flow(data, 2)).area() == 3
    with pytest.raises(ValueError):
        geodesic_flow(data, 0)


def classical_heights(p, zeta):
    names = p.names()
    top, bot = names[:p.l], names[p.l:]
    return {a: sum(zeta[b][1] for b in top[:top.index(a)]) - sum(zeta[b][1] for b in bot[:bot.index(a)])
            for a in p.letters}


def test_mv_heights_true_permutation():
    p = parse("A B C D / D C B A")
    lam = {"A": F(1), "B": F(2), "C": F(3), "D": F(4)}
    data = make_suitable(p, masur_veech_suspension(p, lam))
    h = heights(p, data)
    assert h == classical_heights(p, data.zeta)
    assert all(v > 0 for v in h.values())


@given(irreducible_perms(dmax=6), st.integers(0, 2**32))
def test_area_identities(p, seed):
    lam = random_balanced_lengths(p, random.Random(seed), bits=12)
    data = make_suitable(p, find_suspension(p, lam))
    poly = polygon(p, data)
    h = heights(p, data)
    area = poly.area()
    assert area > 0
    assert sum(data.zeta[a][0] * h[a] for a in p.letters) == area
    assert all(v > 0 for v in h.values())
    try:
        q, nxt = suspension_step(p, data)
    except ConnectionError:
        return
    assert not check_suspension(q, nxt.zeta)
    assert polygon(q, nxt).area() == area
    assert polygon(p, geodesic_flow(data, F(3, 2))).area() == area
