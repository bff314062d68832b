"""Linear involutions with exact rational lengths and Rauzy-Veech induction."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import BalanceError, BudgetExceeded, InvariantError, OutOfRange, Singular
from .genperm import GeneralizedPermutation, canonical
from .rauzy import rauzy
from .reduce import is_reducible_kernel


class Termination(str, enum.Enum):
    STEPS_EXHAUSTED = "StepsExhausted"
    CONNECTION = "ConnectionLength0"
    UNDEFINED = "BothUndefined"
    MIN_LENGTH = "MinLengthReached"


class LinearInvolution:
    """A generalized permutation with positive balanced lengths (name -> Fraction)."""

    __slots__ = ("perm", "lam", "L")

    def __init__(self, perm, lam):
        self.perm = perm
        self.lam = {a: Fraction(lam[a]) for a in perm.letters}
        self.L = _row_sums(perm, self.lam)[0]

    def length(self, pos):
        return self.lam[self.perm.letters[self.perm.word[pos]]]

    def intervals(self, row):
        """Left endpoints and lengths of the subintervals of one row."""
        p = self.perm
        rng = range(p.l) if row == 0 else range(p.l, len(p.word))
        out = []
        x = Fraction(0)
        for i in rng:
            lam = self.length(i)
            out.append((i, x, x + lam))
            x += lam
        return out

    def __repr__(self):
        lam = ", ".join(f"{a}:{self.lam[a]}" for a in self.perm.letters)
        return f"LinearInvolution('{self.perm}', {{{lam}}})"


def _row_sums(p, lam):
    names = p.names()
    return sum(lam[a] for a in names[:p.l]), sum(lam[a] for a in names[p.l:])


def make(perm, lam):
    """Validate positivity and the balance of the two rows."""
    lam = {a: Fraction(lam[a]) for a in perm.letters}
    if any(v <= 0 for v in lam.values()):
        raise ValueError("lengths must be positive")
    top, bot = _row_sums(perm, lam)
    if top != bot:
        raise BalanceError(top, bot)
    return LinearInvolution(perm, lam)


def lengths_from_list(perm, values):
    """Lengths given in first-occurrence letter order (that is ``perm.letters``)."""
    if len(values) != perm.d:
        raise ValueError(f"expected {perm.d} lengths, got {len(values)}")
    return {a: Fraction(v) for a, v in zip(perm.letters, values)}


def _locate(T, x, row):
    for i, a, b in T.intervals(row):
        if a < x < b:
            return i, a, b
        if x == b and x != T.L:
            raise Singular(x, row, i)
    raise OutOfRange(f"x={x} not in (0, {T.L})")


def eval_point(T, x, eps):
    """T(x, eps): translation to the twin on the other row keeps the row label;
    an orientation-reversing jump to the twin on the same row flips it."""
    x = Fraction(x)
    if not 0 < x < T.L:
        raise OutOfRange(f"x={x} not in (0, {T.L})")
    i, left, _ = _locate(T, x, eps)
    j = T.perm.sigma[i]
    l = T.perm.l
    jrow = 0 if j < l else 1
    for k, a, b in T.intervals(jrow):
        if k == j:
            break
    if jrow == eps:
        return b - (x - left), 1 - eps
    return a + (x - left), eps


# public name matching the interface; ``eval`` shadows a builtin only inside this module
eval = eval_point  # noqa: A001


class Step(NamedTuple):
    inv: Optional[LinearInvolution]
    eps: Optional[int]
    winner: Optional[str]
    loser: Optional[str]
    reason: Optional[Termination]


def step(T, renormalize=False):
    """One Rauzy-Veech step; ``inv`` is None with a ``reason`` when undefined."""
    p = T.perm
    n = len(p.word)
    top_last = p.letters[p.word[p.l - 1]]
    bot_last = p.letters[p.word[n - 1]]
    lt, lb = T.lam[top_last], T.lam[bot_last]
    if lt == lb:
        return Step(None, None, None, None, Termination.CONNECTION)
    eps = 0 if lt > lb else 1
    winner, loser = (top_last, bot_last) if eps == 0 else (bot_last, top_last)
    q = rauzy(p, eps, raw=True)
    if q is None:
        return Step(None, eps, winner, loser, Termination.UNDEFINED)
    lam = dict(T.lam)
    lam[winner] -= lam[loser]
    if renormalize:
        tot = _row_sums(q, lam)[0]
        lam = {a: v / tot for a, v in lam.items()}
    return Step(LinearInvolution(q, lam), eps, winner, loser, None)


@dataclass
class InductionTrace:
    steps: list = field(default_factory=list)
    termination: Termination = Termination.STEPS_EXHAUSTED
    first_irreducible_index: Optional[int] = None
    final: Optional[LinearInvolution] = None

    def to_jsonl(self):
        return "".join(json.dumps(r) + "\n" for r in self.steps)


def iterate(T, max_steps=10000, min_length=None, check_irreducible=True):
    """Run the induction; records steps and asserts irreducibility persists."""
    trace = InductionTrace()
    cur = T
    L = T.L

    def irreducible(p):
        return not is_reducible_kernel(p.word, p.l)

    if check_irreducible and irreducible(cur.perm):
        trace.first_irreducible_index = 0
    for n in range(1, max_steps + 1):
        if min_length is not None and L <= min_length:
            trace.termination = Termination.MIN_LENGTH
            break
        st = step(cur)
        if st.inv is None:
            trace.termination = st.reason
            break
        L -= cur.lam[st.loser]
        cur = st.inv
        if cur.L != L:
            raise InvariantError("total length bookkeeping failed")
        trace.steps.append({
            "n": n, "pi": str(canonical(cur.perm)), "type": st.eps,
            "winner": st.winner, "loser": st.loser,
            "length_num": L.numerator, "length_den": L.denominator})
        if check_irreducible:
            irr = irreducible(cur.perm)
            if trace.first_irreducible_index is None:
                if irr:
                    trace.first_irreducible_index = n
            elif not irr:
                raise InvariantError(f"irreducibility lost at step {n}: {cur.perm}")
    trace.final = cur
    return trace


def first_return_iem(T, row=0, max_iter=10000):
    """Induced interval exchange on one row, by following pieces of the orbit.

    Returns ``(top, bottom, lengths)``: labels of the domain pieces in order,
    the same labels in the order of their images, and the lengths.
    """
    if max_iter <= 0:
        raise BudgetExceeded("no evaluations allowed")
    # pieces: (domain_left, domain_right, cur_left, cur_right, orientation, cur_row)
    pieces = []
    for i, a, b in T.intervals(row):
        pieces.append((a, b))
    done = []
    work = [(a, b, a, b, 1, row, 0) for a, b in pieces]
    budget = max_iter
    while work:
        da, db, ca, cb, sgn, r, steps = work.pop()
        budget -= 1
        if budget < 0:
            raise BudgetExceeded("first return not found within budget")
        # split the current piece at subdivision points of its row
        cuts = [x for _, x, _ in T.intervals(r)][1:]
        inner = [x for x in cuts if ca < x < cb]
        if inner:
            bounds = [ca] + inner + [cb]
            for u, v in zip(bounds, bounds[1:]):
                # map current sub-piece back to the domain coordinates
                if sgn == 1:
                    work.append((da + (u - ca), da + (v - ca), u, v, sgn, r, steps))
                else:
                    work.append((db - (v - ca), db - (u - ca), u, v, sgn, r, steps))
            continue
        mid = (ca + cb) / 2
        y, r2 = eval_point(T, mid, r)
        # image of the piece under the affine branch through ``mid``
        if r2 == r:
            na, nb, nsgn = y - (mid - ca), y + (cb - mid), sgn
        else:
            na, nb, nsgn = y - (cb - mid), y + (mid - ca), -sgn
        if r2 == row:
            if nsgn != 1:
                raise InvariantError("first return map is not a translation")
            done.append((da, db, na, nb))
        else:
            work.append((da, db, na, nb, nsgn, r2, steps + 1))
    done.sort()
    # merge pieces contiguous both in the domain and in the image
    merged = []
    for da, db, ia, ib in done:
        if merged and merged[-1][1] == da and merged[-1][3] == ia:
            pa, _, pia, _ = merged[-1]
            merged[-1] = (pa, db, pia, ib)
        else:
            merged.append((da, db, ia, ib))
    labels = list(range(len(merged)))
    top = labels
    bottom = sorted(labels, key=lambda k: merged[k][2])
    lengths = [merged[k][1] - merged[k][0] for k in labels]
    return top, bottom, lengths
