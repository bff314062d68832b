"""Rauzy classes, extended Rauzy classes and attractor reports.

Nodes are canonical permutations encoded as ``bytes([l]) + word``; the
encoding keeps million-node visited sets compact and hashing cheap.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import NodeBudgetExceeded, ReducibleSeedError
from .genperm import GeneralizedPermutation, convention_ok
from .rauzy import predecessors_kernel, r0_kernel, r1_kernel
from .reduce import is_dynamically_irreducible, is_reducible_kernel, is_strongly_irreducible_kernel

DEFAULT_MAX_NODES = 2_000_000

_IDENT = bytes(range(256))


def canon_bytes(w):
    """First-occurrence relabeling of a bytes word."""
    table = bytearray(_IDENT)
    for i, c in enumerate(dict.fromkeys(w)):
        table[c] = i
    return w.translate(table)


def encode(p):
    return bytes([p.l]) + canon_bytes(bytes(p.word))


def decode(key):
    return GeneralizedPermutation(tuple(key[1:]), key[0])


def _key(w, l):
    return bytes([l]) + canon_bytes(w)


def _r_images(key):
    l = key[0]
    w = key[1:]
    out = []
    res = r0_kernel(w, l)
    if res is not None:
        out.append(("0", _key(*res)))
    res = r1_kernel(w, l)
    if res is not None:
        out.append(("1", _key(*res)))
    return out


def _s_image(key):
    l = key[0]
    w = key[1:]
    return _key(w[::-1], len(w) - l)


def is_irreducible_key(key):
    return not is_reducible_kernel(key[1:], key[0])


@dataclass
class ClassGraph:
    seed: bytes
    nodes: list
    variant: str = "rauzy"
    closed: bool = True
    edges: Optional[list] = None          # (src_key, dst_key, label)
    irreducible_only: bool = True
    _order: Optional[list] = field(default=None, repr=False)

    def __len__(self):
        return len(self.nodes)

    @property
    def node_count(self):
        return len(self.nodes)

    def node_set(self):
        return set(self.nodes)

    def sorted_nodes(self):
        if self._order is None:
            self._order = sorted(self.nodes, key=sort_key)
        return self._order

    def perms(self):
        for k in self.sorted_nodes():
            yield decode(k)

    def flags(self, key):
        w, l = key[1:], key[0]
        irr = not is_reducible_kernel(w, l)
        return {
            "irreducible": irr,
            "strongly_irreducible": is_strongly_irreducible_kernel(w, l),
            "dynamically_irreducible": irr or is_dynamically_irreducible(decode(key))[0],
            "in_attractor": irr,
        }


def sort_key(key):
    """Lexicographic order on the canonical text form (top row, then bottom row)."""
    l = key[0]
    return (tuple(key[1:l + 1]), tuple(key[l + 1:]))


def key_str(key):
    return str(decode(key))


def _expand_batch(args):
    """Worker: neighbor lists for a batch of keys (used with --parallel)."""
    mode, keys = args
    return [(k, _neighbors(mode, k)) for k in keys]


def _neighbors(mode, key):
    out = _r_images(key)
    if mode in ("weak", "full"):
        sk = _s_image(key)
        if mode == "full" or is_irreducible_key(sk):
            out.append(("s", sk))
    elif mode == "undirected":
        w, l = key[1:], key[0]
        for eps in (0, 1):
            for pw, pl in predecessors_kernel(w, l, eps):
                if convention_ok(pw, pl):
                    out.append((f"{eps}^", _key(pw, pl)))
    return out


def _bfs(seed, mode, max_nodes, keep_edges, parallel=1):
    """Generic closure; returns (visited list, edges or None, closed flag)."""
    seen = {seed}
    order = [seed]
    edges = [] if keep_edges else None
    closed = True
    if parallel and parallel > 1:
        return _bfs_parallel(seed, mode, max_nodes, keep_edges, parallel)
    queue = deque([seed])
    r0k, r1k = r0_kernel, r1_kernel
    while queue:
        key = queue.popleft()
        l = key[0]
        w = key[1:]
        if mode == "rauzy" or mode == "weak" or mode == "full":
            # inline hot path
            res = r0k(w, l)
            nb = []
            if res is not None:
                nb.append(("0", bytes([res[1]]) + canon_bytes(res[0])))
            res = r1k(w, l)
            if res is not None:
                nb.append(("1", bytes([res[1]]) + canon_bytes(res[0])))
            if mode != "rauzy":
                sk = bytes([len(w) - l]) + canon_bytes(w[::-1])
                if sk in seen:
                    nb.append(("s", sk))
                elif mode == "full" or not is_reducible_kernel(sk[1:], sk[0]):
                    nb.append(("s", sk))
        else:
            nb = _neighbors(mode, key)
        for lab, k in nb:
            if edges is not None:
                edges.append((key, k, lab))
            if k not in seen:
                seen.add(k)
                order.append(k)
                queue.append(k)
        if max_nodes is not None and len(seen) > max_nodes:
            closed = False
            break
    return order, edges, closed


def _bfs_parallel(seed, mode, max_nodes, keep_edges, parallel):
    from concurrent.futures import ProcessPoolExecutor
    seen = {seed}
    order = [seed]
    edges = [] if keep_edges else None
    frontier = [seed]
    closed = True
    with ProcessPoolExecutor(max_workers=parallel) as ex:
        while frontier:
            chunk = max(1, len(frontier) // (4 * parallel))
            batches = [(mode, frontier[i:i + chunk]) for i in range(0, len(frontier), chunk)]
            nxt = []
            for result in ex.map(_expand_batch, batches):
                for key, nb in result:
                    for lab, k in nb:
                        if edges is not None:
                            edges.append((key, k, lab))
                        if k not in seen:
                            seen.add(k)
                            order.append(k)
                            nxt.append(k)
            frontier = nxt
            if max_nodes is not None and len(seen) > max_nodes:
                closed = False
                break
    return order, edges, closed


def _seed_key(p):
    return encode(p)


def _parallel_default(parallel):
    if parallel is None:
        env = os.environ.get("GENRAUZY_THREADS")
        parallel = int(env) if env else 1
    return parallel


def rauzy_class(p, max_nodes=DEFAULT_MAX_NODES, keep_edges=False, parallel=None, strict=True):
    """Forward closure under R0/R1 of an irreducible seed."""
    seed = _seed_key(p)
    if not is_irreducible_key(seed):
        raise ReducibleSeedError(f"seed {p} is reducible")
    nodes, edges, closed = _bfs(seed, "rauzy", max_nodes, keep_edges, _parallel_default(parallel))
    g = ClassGraph(seed, nodes, "rauzy", closed, edges)
    if not closed and strict:
        raise NodeBudgetExceeded(f"more than {max_nodes} nodes", g)
    return g


def extended_class(p, variant="weak", max_nodes=DEFAULT_MAX_NODES, keep_edges=False,
                   parallel=None, strict=True):
    """Irreducible permutations reachable with R0, R1 and s.

    ``weak`` never leaves the irreducible set (an s-move is taken only when its
    image is irreducible); ``full`` closes over all intermediates and then keeps
    the irreducible ones.
    """
    if variant not in ("weak", "full"):
        raise ValueError(f"unknown variant {variant!r}")
    seed = _seed_key(p)
    if not is_irreducible_key(seed):
        raise ReducibleSeedError(f"seed {p} is reducible")
    nodes, edges, closed = _bfs(seed, variant, max_nodes, keep_edges, _parallel_default(parallel))
    if variant == "full":
        irr = [k for k in nodes if is_irreducible_key(k)]
        if edges is not None:
            keep = set(irr)
            edges = [e for e in edges if e[0] in keep and e[1] in keep]
        g = ClassGraph(seed, irr, variant, closed, edges)
        g.total_visited = len(nodes)
    else:
        g = ClassGraph(seed, nodes, variant, closed, edges)
    if not closed and strict:
        raise NodeBudgetExceeded(f"more than {max_nodes} nodes", g)
    return g


def forward_closure(p, max_nodes=DEFAULT_MAX_NODES):
    """All permutations reachable from ``p`` by R0/R1 (reducible ones included)."""
    seed = _seed_key(p)
    nodes, _, closed = _bfs(seed, "rauzy", max_nodes, False)
    if not closed:
        raise NodeBudgetExceeded(f"more than {max_nodes} nodes")
    return nodes


def first_irreducible_descendant(p, max_nodes=DEFAULT_MAX_NODES):
    """An irreducible permutation reachable from ``p`` (BFS order), or None."""
    seed = _seed_key(p)
    seen = {seed}
    queue = deque([seed])
    while queue:
        key = queue.popleft()
        if is_irreducible_key(key):
            return decode(key)
        for _, k in _r_images(key):
            if k not in seen:
                seen.add(k)
                queue.append(k)
        if len(seen) > max_nodes:
            raise NodeBudgetExceeded(f"more than {max_nodes} nodes")
    return None


@dataclass
class AttractorReport:
    """Partition of a component of the full Rauzy diagram.

    ``attractor`` holds the irreducible nodes.  Transient (reducible) nodes are
    split twice: by dynamical irreducibility, and into ``trapped`` nodes (terminal
    cycles of reducible permutations, never leaving them) and ``unstable`` ones.
    """
    seed: bytes
    mode: str
    attractor: list
    reducible_dyn: list
    reducible_nondyn: list
    trapped: list
    unstable: list
    closed: bool = True

    @property
    def total(self):
        return len(self.attractor) + len(self.reducible_dyn) + len(self.reducible_nondyn)

    def to_json(self, with_nodes=False):
        out = {"seed": key_str(self.seed), "mode": self.mode, "total": self.total,
               "attractor": len(self.attractor),
               "transient": len(self.reducible_dyn) + len(self.reducible_nondyn),
               "reducible_dyn": len(self.reducible_dyn),
               "reducible_nondyn": len(self.reducible_nondyn),
               "trapped": len(self.trapped), "unstable": len(self.unstable),
               "closed": self.closed}
        if with_nodes:
            for name in ("reducible_dyn", "reducible_nondyn", "trapped", "unstable"):
                out[name + "_nodes"] = [key_str(k) for k in sorted(getattr(self, name), key=sort_key)]
        return out


def _terminal_cycles(transient):
    """Transient nodes lying in a terminal strongly connected component of the
    R0/R1 graph restricted to reducible nodes, i.e. recurrent reducible nodes
    that never reach the irreducible set."""
    tset = set(transient)
    succ = {}
    for k in transient:
        succ[k] = [y for _, y in _r_images(k)]
    # iterative Tarjan
    index, low, onstack, stack, comp = {}, {}, set(), [], {}
    counter = 0
    ncomp = 0
    for root in transient:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                onstack.add(v)
            nxt = succ[v]
            while i < len(nxt) and (nxt[i] not in tset or nxt[i] in index):
                w = nxt[i]
                if w in onstack:
                    low[v] = min(low[v], index[w])
                i += 1
            if i < len(nxt):
                work.append((v, i + 1))
                work.append((nxt[i], 0))
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    # a component is terminal when every edge stays inside it
    terminal = set(range(ncomp))
    for k in transient:
        for y in succ[k]:
            if y not in tset or comp[y] != comp[k]:
                terminal.discard(comp[k])
    return {k for k in transient if comp[k] in terminal}


def attractor_report(p, mode="forward", max_nodes=DEFAULT_MAX_NODES, parallel=None):
    """Partition the component of ``p`` in the full Rauzy diagram.

    ``forward`` explores everything reachable from ``p`` by R0/R1; ``undirected``
    also follows edges backwards (through predecessors satisfying the
    convention), which picks up reducible permutations flowing into the class.
    """
    if mode not in ("forward", "undirected"):
        raise ValueError(f"unknown mode {mode!r}")
    seed = _seed_key(p)
    bfs_mode = "rauzy" if mode == "forward" else "undirected"
    nodes, _, closed = _bfs(seed, bfs_mode, max_nodes, False, _parallel_default(parallel))
    if not closed:
        raise NodeBudgetExceeded(f"more than {max_nodes} nodes")
    att, dyn, nondyn = [], [], []
    for k in nodes:
        if is_irreducible_key(k):
            att.append(k)
        elif is_dynamically_irreducible(decode(k))[0]:
            dyn.append(k)
        else:
            nondyn.append(k)
    transient = dyn + nondyn
    closed_part = _terminal_cycles(transient)
    trapped = [k for k in transient if k in closed_part]
    unstable = [k for k in transient if k not in closed_part]
    return AttractorReport(seed, mode, att, dyn, nondyn, trapped, unstable, closed)


# ----------------------------------------------------------------------- export

def export(graph, fmt="json"):
    """DOT or JSON bytes; node order is lexicographic in the canonical form."""
    nodes = graph.sorted_nodes()
    index = {k: i for i, k in enumerate(nodes)}
    edges = graph.edges or []
    edges = sorted({(index[a], index[b], lab) for a, b, lab in edges if a in index and b in index})
    if fmt == "json":
        doc = {"seed": key_str(graph.seed), "variant": graph.variant, "closed": graph.closed,
               "nodes": [key_str(k) for k in nodes],
               "edges": [[a, b, lab] for a, b, lab in edges]}
        return (json.dumps(doc, indent=1) + "\n").encode()
    if fmt == "dot":
        lines = ["digraph rauzy {"]
        for i, k in enumerate(nodes):
            style = "" if is_irreducible_key(k) else ", style=dashed"
            lines.append(f'  n{i} [label="{key_str(k)}"{style}];')
        for a, b, lab in edges:
            lines.append(f'  n{a} -> n{b} [label="{lab}"];')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def load_json(data):
    """Inverse of the JSON export: (seed, node keys, edges)."""
    from .genperm import parse
    doc = json.loads(data)
    nodes = [encode(parse(s)) for s in doc["nodes"]]
    return doc, nodes
