import random

import pytest
from hypothesis import given

from genrauzy.classes import first_irreducible_descendant, rauzy_class
from genrauzy.errors import ReducibleError
from genrauzy.genperm import mirror_s, parse
from genrauzy.reduce import find_reduction
from genrauzy.strata import cone_angles, float_check, is_abelian, signature
from genrauzy.suspend import find_suspension

from conftest import EXAMPLE, Q2_SEED, Q7_SEED, irreducible_perms


@pytest.mark.parametrize("text, orders, g, n, dim", [
    ("1 1 2 3 2 3 4 / 5 4 5 6 7 6 7", (9, -1), 3, 2, 6),
    (Q2_SEED, (2, -1, -1), 1, 3, 3),
])
def test_quadratic(text, orders, g, n, dim):
    sig = signature(parse(text), check=True)
    assert sig.kind == "Quadratic"
    assert (sig.orders, sig.genus, sig.n, sig.dim) == (orders, g, n, dim)


def test_q7_stratum():
    seed = parse(Q7_SEED)
    with pytest.raises(ReducibleError):
        signature(seed)
    q = first_irreducible_descendant(seed)
    assert sorted(signature(q).orders) == [-1, -1, -1, 7]
    assert str(signature(q)) == "Q(7, -1, -1, -1)"


@pytest.mark.parametrize("text, orders, g", [
    ("A B C D / D C B A", (2,), 2),
    ("A B / B A", (0,), 1),
    ("A B C / C B A", (0, 0), 1),
    ("A B C D E / E D C B A", (1, 1), 2),
])
def test_abelian(text, orders, g):
    p = parse(text)
    assert is_abelian(p)
    sig = signature(p, check=True)
    assert sig.kind == "Abelian" and sig.orders == orders and sig.genus == g
    assert sig.dim == p.d


def test_not_abelian():
    assert not is_abelian(parse(EXAMPLE))
    assert not is_abelian(parse("A A / B B"))


def test_pillowcase_vertex_cycles():
    p = parse("A A / B B")
    with pytest.raises(ReducibleError):
        signature(p)
    # no suspension exists: both row sums of Im would need opposite signs
    assert find_suspension(p) is None
    # the formal side pairing has a vertex class of total angle 0, so no flat metric
    assert sorted(k for k, _ in cone_angles(p)) == [0, 1, 1]


def test_constant_on_q2_class():
    g = rauzy_class(parse(Q2_SEED))
    sigs = {str(signature(q)) for q in g.perms()}
    assert sigs == {"Q(2, -1, -1)"}


def test_json():
    js = signature(parse(Q2_SEED)).to_json()
    assert js == {"kind": "Quadratic", "orders": [2, -1, -1], "genus": 1, "n": 3, "dim": 3}


@given(irreducible_perms(dmax=8))
def test_identities(p):
    sig = signature(p)
    if sig.kind == "Quadratic":
        assert sum(k + 2 for k in sig.orders) == 2 * (2 * sig.genus + sig.n - 2)
        assert sig.dim == p.d - 1
        assert sum(sig.orders) == 4 * sig.genus - 4
    else:
        assert sum(sig.orders) == 2 * sig.genus - 2
        assert sig.dim == p.d
    assert all(k >= -1 for k in sig.orders)


@given(irreducible_perms(dmax=6))
def test_geometric_cross_check(p):
    assert float_check(p)


@given(irreducible_perms(dmax=7))
def test_mirror_invariance(p):
    q = mirror_s(p)
    if find_reduction(q) is None:
        assert signature(q) == signature(p)
