"""Stratum of the flat surface built from an irreducible generalized permutation.

The polygon bounded by L0 (top row) and L1 (bottom row) has vertices O (the
common origin), E (the common end), the interior top vertices T1..T(l-1) and
the interior bottom vertices B1..B(m-1).  Sides with the same letter are glued
by a translation (one on each row) or by a half-turn (both on one row); the
singularities are the classes of vertices under these gluings.

For a suitable polygon each corner angle is ``k*pi`` plus a signed sum of edge
arguments theta (all in (-pi/2, pi/2)), so cone angles are obtained exactly
from the integer part once the arguments cancel inside each class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AngleResidueError, InvariantError, ReducibleError
from .reduce import is_reducible_kernel


@dataclass(frozen=True)
class StratumSignature:
    kind: str            # "Abelian" or "Quadratic"
    orders: tuple        # non-increasing
    genus: int
    n: int
    dim: int

    def __str__(self):
        head = "H" if self.kind == "Abelian" else "Q"
        return f"{head}({', '.join(str(k) for k in self.orders)})"

    def to_json(self):
        return {"kind": self.kind, "orders": list(self.orders), "genus": self.genus,
                "n": self.n, "dim": self.dim}


def is_abelian(p):
    """True iff every letter occurs once on each row."""
    return p.is_true_permutation()


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _vertex_ids(l, m):
    """Vertex numbering: top vertex k (0..l) and bottom vertex k (0..m)."""
    O, E = 0, 1

    def top(k):
        if k == 0:
            return O
        if k == l:
            return E
        return 1 + k

    def bot(k):
        if k == 0:
            return O
        if k == m:
            return E
        return l + k

    return top, bot, l + m


def vertex_classes(p):
    """Union-find classes of polygon vertices; returns (classes, top, bot)."""
    l, m = p.l, p.m
    top, bot, nv = _vertex_ids(l, m)
    uf = _UnionFind(nv)
    sig = p.sigma
    for i in range(l + m):
        j = sig[i]
        if j < i:
            continue
        if i < l and j >= l:
            # translation: start to start, end to end
            uf.union(top(i), bot(j - l))
            uf.union(top(i + 1), bot(j - l + 1))
        elif j < l:
            # half-turn: start of one side to the end of the other
            uf.union(top(i), top(j + 1))
            uf.union(top(i + 1), top(j))
        else:
            uf.union(bot(i - l), bot(j - l + 1))
            uf.union(bot(i - l + 1), bot(j - l))
    classes = {}
    for v in range(nv):
        classes.setdefault(uf.find(v), []).append(v)
    return list(classes.values()), top, bot


def _corner_terms(p):
    """For each vertex: (number of half-turns, Counter of theta coefficients)."""
    l, m = p.l, p.m
    w = p.word
    top, bot, nv = _vertex_ids(l, m)
    terms = {}
    # theta of side i is the argument of zeta at letter w[i]
    for k in range(1, l):
        terms[top(k)] = (1, _lin((w[k], 1), (w[k - 1], -1)))
    for k in range(1, m):
        terms[bot(k)] = (1, _lin((w[l + k - 1], 1), (w[l + k], -1)))
    terms[top(0)] = (0, _lin((w[0], 1), (w[l], -1)))
    terms[top(l)] = (0, _lin((w[-1], 1), (w[l - 1], -1)))
    return terms


def _lin(*pairs):
    out = {}
    for a, c in pairs:
        out[a] = out.get(a, 0) + c
    return {a: c for a, c in out.items() if c}


def cone_angles(p):
    """Cone angle of each vertex class in units of pi (exact integers)."""
    classes, _, _ = vertex_classes(p)
    terms = _corner_terms(p)
    out = []
    for cls in classes:
        k = 0
        acc = {}
        for v in cls:
            kv, lin = terms[v]
            k += kv
            for a, c in lin.items():
                acc[a] = acc.get(a, 0) + c
        residue = {a: c for a, c in acc.items() if c}
        if residue:
            raise AngleResidueError(f"argument terms do not cancel in class {cls}: {residue}")
        out.append((k, cls))
    return out


def signature(p, check=False):
    """StratumSignature of an irreducible p; ``check`` adds a float cross-check
    on an actual suitable polygon."""
    if is_reducible_kernel(p.word, p.l):
        raise ReducibleError(str(p))
    angles = cone_angles(p)
    d = p.d
    if is_abelian(p):
        orders = []
        for k, _ in angles:
            if k % 2:
                raise InvariantError("odd cone angle for a translation surface")
            orders.append(k // 2 - 1)
        s = sum(orders)
        if s % 2:
            raise InvariantError("sum of orders must be even")
        g = (s + 2) // 2
        n = len(orders)
        dim = 2 * g + n - 1
        if dim != d:
            raise InvariantError(f"dimension {dim} != d = {d}")
        kind = "Abelian"
    else:
        orders = [k - 2 for k, _ in angles]
        s = sum(orders)
        if s % 4:
            raise InvariantError("sum of orders must be divisible by 4")
        g = (s + 4) // 4
        n = len(orders)
        dim = 2 * g + n - 2
        if 2 * dim != sum(k + 2 for k in orders) or dim != d - 1:
            raise InvariantError(f"dimension identities fail for {p}")
        kind = "Quadratic"
    sig = StratumSignature(kind, tuple(sorted(orders, reverse=True)), g, n, dim)
    if check:
        float_check(p, angles)
    return sig


def float_check(p, angles=None, tol=1e-6):
    """Compare the exact cone angles with angles measured on a suitable polygon."""
    from .suspend import find_suspension, make_suitable, polygon
    angles = angles if angles is not None else cone_angles(p)
    data = find_suspension(p)
    data = make_suitable(p, data)
    poly = polygon(p, data)
    l, m = p.l, p.m
    top, bot, _ = _vertex_ids(l, m)
    measured = {}

    def ang(u, v):
        # counter-clockwise angle from direction u to direction v, in (0, 2pi)
        a = math.atan2(v[1], v[0]) - math.atan2(u[1], u[0])
        while a <= 0:
            a += 2 * math.pi
        while a > 2 * math.pi:
            a -= 2 * math.pi
        return a

    def vec(a, b):
        return (float(b[0] - a[0]), float(b[1] - a[1]))

    T, B = poly.top, poly.bottom
    for k in range(1, l):
        # the interior lies below the top chain and above the bottom chain
        measured[top(k)] = ang(vec(T[k], T[k - 1]), vec(T[k], T[k + 1]))
    for k in range(1, m):
        measured[bot(k)] = ang(vec(B[k], B[k + 1]), vec(B[k], B[k - 1]))
    measured[top(0)] = ang(vec(B[0], B[1]), vec(T[0], T[1]))
    measured[top(l)] = ang(vec(T[l], T[l - 1]), vec(B[m], B[m - 1]))
    for k, cls in angles:
        tot = sum(measured[v] for v in cls)
        if abs(tot - k * math.pi) > tol * math.pi:
            raise AngleResidueError(f"float cone angle {tot} != {k}*pi")
    return True
