import json
import random

import pytest
from hypothesis import given

from genrauzy.classes import (attractor_report, canon_bytes, decode, encode, export, extended_class,
                              first_irreducible_descendant, forward_closure, key_str, load_json,
                              rauzy_class, sort_key)
from genrauzy.errors import NodeBudgetExceeded, ReducibleSeedError
from genrauzy.genperm import canonical, canonical_word, enumerate_all, mirror_s, parse
from genrauzy.rauzy import rauzy
from genrauzy.reduce import find_reduction

from conftest import Q2_ATTACHED, Q2_NODES, Q2_SEED, Q7_SEED, perms

# size of the Q(2, -1, -1) class, frozen after the first enumeration (it equals the
# number of tabulated nodes)
Q2_CLASS_SIZE = 43


@pytest.fixture(scope="module")
def q2():
    return rauzy_class(parse(Q2_SEED), keep_edges=True)


def test_q2_membership(q2):
    nodes = q2.node_set()
    assert len(Q2_NODES) == len(set(Q2_NODES)) == Q2_CLASS_SIZE
    for text in Q2_NODES:
        assert encode(parse(text)) in nodes, text
    assert len(q2) == Q2_CLASS_SIZE and q2.closed


def test_q2_attachments():
    rep = attractor_report(parse(Q2_SEED), mode="undirected")
    js = rep.to_json(with_nodes=True)
    assert js["attractor"] == Q2_CLASS_SIZE and js["transient"] == 2
    got = js["reducible_dyn_nodes"] + js["reducible_nondyn_nodes"]
    assert sorted(got) == sorted(str(canonical(parse(t))) for t in Q2_ATTACHED)
    for t in Q2_ATTACHED:
        assert find_reduction(parse(t)) is not None


def test_edges_verify(q2):
    nodes = q2.node_set()
    for a, b, lab in q2.edges:
        q = rauzy(decode(a), int(lab))
        assert encode(q) == b and b in nodes
        assert find_reduction(decode(b)) is None


def test_mutual_reachability(q2):
    for a, b, _ in q2.edges:
        back = set(forward_closure(decode(b)))
        assert a in back


def test_three_letter_classes():
    classes = set()
    for p in enumerate_all(3, require_convention=True):
        if find_reduction(p) is None and not p.is_true_permutation():
            g = rauzy_class(p)
            assert len(g) == 4
            classes.add(frozenset(g.nodes))
    assert len(classes) == 1


def test_reducible_seed():
    with pytest.raises(ReducibleSeedError):
        rauzy_class(parse(Q7_SEED))
    with pytest.raises(ReducibleSeedError):
        extended_class(parse(Q7_SEED))


def test_budget():
    with pytest.raises(NodeBudgetExceeded) as ei:
        rauzy_class(parse(Q2_SEED), max_nodes=5)
    assert ei.value.graph is not None and not ei.value.graph.closed
    g = rauzy_class(parse(Q2_SEED), max_nodes=5, strict=False)
    assert not g.closed


def test_weak_equals_full_small():
    for seed in [Q2_SEED, "1 1 2 / 2 3 3", "1 1 2 3 2 3 4 / 5 4 5 6 7 6 7"]:
        w = extended_class(parse(seed))
        f = extended_class(parse(seed), variant="full")
        assert w.node_set() == f.node_set()


def test_extended_class_closed_under_mirror():
    g = extended_class(parse(Q2_SEED))
    nodes = g.node_set()
    for p in g.perms():
        q = mirror_s(p)
        if find_reduction(q) is None:
            assert encode(q) in nodes
    assert rauzy_class(parse(Q2_SEED)).node_set() <= nodes


def test_export_dot():
    g = rauzy_class(parse("1 1 2 / 2 3 3"), keep_edges=True)
    dot = export(g, "dot").decode()
    assert dot.startswith("digraph")
    assert dot.count("[label=\"") - dot.count("->") == 4
    assert all(f'label="{s}"' in dot for s in ("0", "1"))


def test_export_json_roundtrip(q2):
    data = export(q2, "json")
    doc, nodes = load_json(data)
    assert set(nodes) == q2.node_set()
    assert doc["nodes"] == [key_str(k) for k in sorted(q2.nodes, key=sort_key)]
    assert export(q2, "json") == data
    assert json.loads(data)["closed"] is True


def test_deterministic_parallel():
    a = rauzy_class(parse(Q2_SEED), keep_edges=True, parallel=1)
    b = rauzy_class(parse(Q2_SEED), keep_edges=True, parallel=2)
    assert export(a, "json") == export(b, "json")
    assert export(a, "dot") == export(b, "dot")


def test_flags(q2):
    k = q2.nodes[0]
    fl = q2.flags(k)
    assert fl["irreducible"] and fl["in_attractor"] and fl["dynamically_irreducible"]


def test_first_irreducible_descendant():
    q = first_irreducible_descendant(parse(Q7_SEED))
    assert q is not None and find_reduction(q) is None


@given(perms(dmax=8))
def test_canon_bytes(p):
    assert tuple(canon_bytes(bytes(p.word))) == canonical_word(p.word)
    assert decode(encode(p)) == canonical(p)
    assert key_str(encode(p)) == str(canonical(p))


def test_signature_constant_on_random_nodes():
    from genrauzy.strata import signature
    g = extended_class(parse("1 1 2 3 4 5 6 / 3 2 7 5 7 6 4"))
    rng = random.Random(4)
    for k in rng.sample(sorted(g.nodes), 100):
        assert str(signature(decode(k))) == "Q(9, -1)"
