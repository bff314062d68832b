"""Corner decompositions: reducibility, strong irreducibility and admissibility.

A cut ``(i1, i2, i3, i4)`` splits the top row into corners ``word[:i1]`` and
``word[i2:l]`` and the bottom row into ``word[l:i3]`` and ``word[i4:]``.  Every
letter of a corner must have its twin in one of the two adjacent corners (left
corners pair with each other, top corners with each other, and so on).  With
letters encoded as bits this means: a top cut is consistent iff both top
corners hold the same letters of the top-only alphabet, and a top cut matches
a bottom cut iff the letters seen on both rows agree corner by corner.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import lp
from .errors import BalanceError, ConventionError
from .genperm import GeneralizedPermutation

TL, TR, BL, BR = 8, 4, 2, 1


def _pattern_kind(empty):
    """Classify a corner emptiness bitmask (TL|TR|BL|BR set when empty)."""
    if empty == 0:
        return "i"
    if empty in (TL, BL):
        return "ii"
    if empty in (TL | BL, TR | BR):
        return "iii"
    return None


_KIND = [_pattern_kind(e) for e in range(16)]


@dataclass(frozen=True)
class DecompositionWitness:
    case: str
    i1: int
    i2: int
    i3: int
    i4: int
    A: frozenset
    B: frozenset
    C: frozenset
    D: frozenset
    alpha0: object = None

    def to_json(self):
        out = {"case": self.case, "i1": self.i1, "i2": self.i2, "i3": self.i3, "i4": self.i4}
        for k in "ABCD":
            out[k] = sorted(getattr(self, k), key=_sort_key)
        if self.alpha0 is not None:
            out["alpha0"] = self.alpha0
        return out


def _sort_key(name):
    return (0, int(name), "") if name.isdigit() else (1, 0, name)


# ----------------------------------------------------------------- bit kernels

def _masks(w, l):
    """Prefix/suffix letter masks of both rows and the top/bottom-only masks."""
    n = len(w)
    seen = 0
    a0 = 0
    pre_t = [0] * (l + 1)
    for i in range(l):
        b = 1 << w[i]
        if seen & b:
            a0 |= b
        seen |= b
        pre_t[i + 1] = seen
    top_all = seen
    seen = 0
    a1 = 0
    m = n - l
    pre_b = [0] * (m + 1)
    for i in range(m):
        b = 1 << w[l + i]
        if seen & b:
            a1 |= b
        seen |= b
        pre_b[i + 1] = seen
    suf_t = [0] * (l + 1)
    acc = 0
    for i in range(l - 1, -1, -1):
        acc |= 1 << w[i]
        suf_t[i] = acc
    suf_b = [0] * (m + 1)
    acc = 0
    for i in range(m - 1, -1, -1):
        acc |= 1 << w[l + i]
        suf_b[i] = acc
    a01 = top_all & ~a0
    return pre_t, suf_t, pre_b, suf_b, a0, a1, a01


def _side_cuts(pre, suf, only, a01, size):
    """Consistent cuts of one row: {(left&a01, right&a01): {emptiness: (i, j)}}."""
    table = {}
    # a corner never fills a whole row (i == size or j == 0)
    for i in range(size):
        left = pre[i]
        lo = left & only
        el = 2 if i == 0 else 0
        for j in range(max(i, 1), size + 1):
            right = suf[j]
            if right & only != lo:
                continue
            key = (left & a01, right & a01)
            e = el | (1 if j == size else 0)
            slot = table.get(key)
            if slot is None:
                table[key] = {e: (i, j)}
            elif e not in slot:
                slot[e] = (i, j)
    return table


def decompositions(w, l):
    """Yield ``(kind, (i1, i2, i3, i4), empty_mask)`` for every corner pattern found.

    ``kind`` is None for decompositions that are not reductions; the
    all-empty cut is skipped.  Indices follow the row-relative convention used
    internally (bottom indices are offsets into the bottom row).
    """
    n = len(w)
    m = n - l
    pre_t, suf_t, pre_b, suf_b, a0, a1, a01 = _masks(w, l)
    top = _side_cuts(pre_t, suf_t, a0, a01, l)
    bot = _side_cuts(pre_b, suf_b, a1, a01, m)
    if len(top) > len(bot):
        pairs = ((k, top[k], bot[k]) for k in bot if k in top)
    else:
        pairs = ((k, top[k], bot[k]) for k in top if k in bot)
    for _, tslots, bslots in pairs:
        for et, (i1, i2) in tslots.items():
            for eb, (i3, i4) in bslots.items():
                empty = (et << 2) | eb
                if empty == 15:
                    continue
                yield _KIND[empty], (i1, i2, i3, i4), empty


def is_reducible_kernel(w, l):
    for kind, _, _ in decompositions(w, l):
        if kind is not None:
            return True
    return False


def is_strongly_irreducible_kernel(w, l):
    for _ in decompositions(w, l):
        return False
    return True


def _witness(p, kind, cut):
    i1, i2, i3, i4 = cut
    w, l = p.word, p.l
    names = p.letters
    f1 = {names[c] for c in w[:i1]}
    f2 = {names[c] for c in w[i2:l]}
    f3 = {names[c] for c in w[l:l + i3]}
    f4 = {names[c] for c in w[l + i4:]}
    return DecompositionWitness(
        kind, i1, i2, l + i3, l + i4,
        frozenset(f1 & f3), frozenset(f1 & f2), frozenset(f3 & f4), frozenset(f2 & f4))


# ------------------------------------------------------------------ public API

def find_reduction(p: GeneralizedPermutation, check_convention=True):
    """Return a DecompositionWitness when ``p`` is reducible, else None.

    Witness indices are 1-based: top-left is positions 1..i1, top-right
    i2+1..l, bottom-left l+1..i3 and bottom-right i4+1..2d.
    """
    if check_convention and not p.convention_ok:
        raise ConventionError(str(p))
    for kind, cut, _ in decompositions(p.word, p.l):
        if kind is not None:
            wit = _witness(p, kind, cut)
            assert replay(p, wit)
            return wit
    return None


def is_irreducible(p):
    return find_reduction(p) is None


def is_strongly_irreducible(p):
    return is_strongly_irreducible_kernel(p.word, p.l)


def replay(p, wit):
    """Re-check a witness against the word (corner contents and emptiness)."""
    names = p.names()
    l, n = p.l, len(names)
    if not (0 <= wit.i1 <= wit.i2 <= l <= wit.i3 <= wit.i4 <= n):
        return False
    corners = [names[:wit.i1], names[wit.i2:l], names[l:wit.i3], names[wit.i4:]]
    want = [wit.A | wit.B, wit.D | wit.B, wit.A | wit.C, wit.D | wit.C]
    for got, exp in zip(corners, want):
        if len(set(got)) != len(got) or set(got) != set(exp):
            return False
    sets = [wit.A, wit.B, wit.C, wit.D]
    for i in range(4):
        for j in range(i + 1, 4):
            if sets[i] & sets[j]:
                return False
    if not any(sets):
        return False
    if wit.case in ("i", "ii", "iii"):
        empty = sum(bit for bit, c in zip((TL, TR, BL, BR), corners) if not c)
        return _KIND[empty] == wit.case
    return True


# ------------------------------------------------------- dynamical reducibility

@dataclass(frozen=True)
class BandWitness:
    """Case (2): lengths in the closed band C <= B <= alpha0 + C block admissibility."""

    B: frozenset
    C: frozenset
    alpha0: str
    switched: bool
    cut: tuple = field(compare=False, default=())

    def holds(self, lam):
        lb = sum(lam[a] for a in self.B)
        lc = sum(lam[a] for a in self.C)
        return lc <= lb <= lam[self.alpha0] + lc

    def to_json(self):
        i1, i2, i3, i4 = self.cut
        return {"case": "dyn2", "i1": i1, "i2": i2, "i3": i3, "i4": i4,
                "A": [], "B": sorted(self.B, key=_sort_key), "C": sorted(self.C, key=_sort_key),
                "D": [], "alpha0": self.alpha0, "switched": self.switched}


def _bits_to_names(mask, names):
    out = []
    c = 0
    while mask:
        if mask & 1:
            out.append(names[c])
        mask >>= 1
        c += 1
    return frozenset(out)


def dyn1_witness(p):
    """Case (1) decompositions (no admissible lengths at all); None if absent."""
    w, l = p.word, p.l
    n = len(w)
    m = n - l
    pre_t, suf_t, pre_b, suf_b, a0, a1, a01 = _masks(w, l)
    names = p.letters
    for i in range(1, min(l, m) + 1):
        if pre_t[i] == pre_b[i] and not (i == l and i == m):
            A = _bits_to_names(pre_t[i], names)
            return DecompositionWitness("dyn1", i, l, l + i, n, A, frozenset(), frozenset(), frozenset())
    for i in range(1, min(l, m) + 1):
        if suf_t[l - i] == suf_b[m - i] and not (i == l and i == m):
            D = _bits_to_names(suf_t[l - i], names)
            return DecompositionWitness("dyn1", 0, l - i, l, n - i, frozenset(), frozenset(), frozenset(), D)
    for i1 in range(l + 1):
        tl, tr = pre_t[i1], suf_t[i1]
        if tl & a0 != a0 or tr & a0 != a0:
            continue
        for i3 in range(m + 1):
            bl, br = pre_b[i3], suf_b[i3]
            if bl & a1 != a1 or br & a1 != a1:
                continue
            if tl & a01 != bl & a01:
                continue
            if (i1 == 0 and i3 == 0) or (i1 == l and i3 == m):
                continue
            return DecompositionWitness(
                "dyn1", i1, i1, l + i3, l + i3,
                _bits_to_names(tl & a01, names), _bits_to_names(a0, names),
                _bits_to_names(a1, names), _bits_to_names(tr & a01, names))
    return None


def _band_witnesses_oriented(w, l, names, switched):
    n = len(w)
    m = n - l
    pre_t, suf_t, pre_b, suf_b, a0, a1, a01 = _masks(w, l)
    found = {}
    if not a0:
        return found
    bot = w[l:]
    for alpha in set(bot):
        if not (a1 >> alpha) & 1:
            continue
        p = bot.index(alpha)
        q = bot.index(alpha, p + 1)
        bl, br = pre_b[p], suf_b[q + 1]
        if bl & a1 != br & a1:
            continue
        cmask = bl & a1
        amask = bl & a01
        dmask = br & a01
        for i1 in range(1, l + 1):
            tl = pre_t[i1]
            if tl & a01 != amask:
                continue
            b = tl & a0
            if not b:
                continue
            for i2 in range(i1, l):
                tr = suf_t[i2]
                if tr & a0 == b and tr & a01 == dmask:
                    key = (b, cmask, alpha)
                    if key not in found:
                        # 1-based cut in the (possibly switched) orientation
                        cut = (i1, i2, l + p, l + q + 1)
                        found[key] = BandWitness(
                            _bits_to_names(b, names), _bits_to_names(cmask, names),
                            names[alpha], switched, cut)
    return found


def band_witnesses(p):
    """All case (2) decompositions, also with the rows exchanged."""
    w, l = p.word, p.l
    out = list(_band_witnesses_oriented(w, l, p.letters, False).values())
    sw = w[l:] + w[:l]
    out += _band_witnesses_oriented(sw, len(w) - l, p.letters, True).values()
    return out


def _check_balance(p, lam):
    names = p.names()
    top = sum(lam[a] for a in names[:p.l])
    bot = sum(lam[a] for a in names[p.l:])
    if top != bot:
        raise BalanceError(top, bot)
    if any(lam[a] <= 0 for a in p.letters):
        raise ValueError("lengths must be positive")


def is_admissible(p, lam):
    """Return ``(True, None)`` or ``(False, witness)`` for lengths ``lam`` (name -> rational)."""
    _check_balance(p, lam)
    wit = dyn1_witness(p)
    if wit is not None:
        return False, wit
    for bw in band_witnesses(p):
        if bw.holds(lam):
            return False, bw
    return True, None


def random_balanced_lengths(p, rng, bits=64):
    """Random positive balanced lengths (exact rationals) for ``p``."""
    from .genperm import split
    sp = split(p)
    lam = {}
    for a in sp.a01 | sp.a0:
        lam[a] = Fraction(rng.getrandbits(bits) | 1)
    raw = {a: Fraction(rng.getrandbits(bits) | 1) for a in sp.a1}
    if sp.a1:
        s0 = sum(lam[a] for a in sp.a0)
        s1 = sum(raw.values())
        for a, v in raw.items():
            lam[a] = v * s0 / s1
    return lam


def _lp_admissible_point(p, bands, choice):
    """Maximize the slack s of a balanced length vector violating the chosen sides."""
    letters = p.letters
    d = len(letters)
    idx = {a: i for i, a in enumerate(letters)}
    names = p.names()
    rows, rhs = [], []

    def row():
        return [Fraction(0)] * (d + 1)

    for i in range(d):
        r = row()
        r[i] = Fraction(-1)
        r[d] = Fraction(1)
        rows.append(r)
        rhs.append(Fraction(0))
    bal = row()
    for a in names[:p.l]:
        bal[idx[a]] += 1
    for a in names[p.l:]:
        bal[idx[a]] -= 1
    rows.append(bal)
    rhs.append(Fraction(0))
    rows.append([-x for x in bal])
    rhs.append(Fraction(0))
    tot = row()
    for i in range(d):
        tot[i] = Fraction(1)
    rows.append(tot)
    rhs.append(Fraction(1))
    for bw, side in zip(bands, choice):
        r = row()
        for a in bw.B:
            r[idx[a]] += 1
        for a in bw.C:
            r[idx[a]] -= 1
        if side == 0:
            # strictly below the band: lambda(B) - lambda(C) + s <= 0
            pass
        else:
            # strictly above: alpha0 + lambda(C) - lambda(B) + s <= 0
            r = [-x for x in r]
            r[idx[bw.alpha0]] += 1
        r[d] += 1
        rows.append(r)
        rhs.append(Fraction(0))
    c = [Fraction(0)] * d + [Fraction(1)]
    res = lp.maximize(c, rows, rhs)
    if res is None:
        return None
    val, x = res
    if val <= 0:
        return None
    return {a: x[idx[a]] for a in letters}


def is_dynamically_irreducible(p, rng=None, tries=32):
    """Return ``(flag, lam)`` with an admissible exact length vector when flag is True."""
    if dyn1_witness(p) is not None:
        return False, None
    bands = band_witnesses(p)
    rng = rng or random.Random(0)
    # randomized fast path
    for _ in range(tries):
        lam = random_balanced_lengths(p, rng, bits=32)
        if not any(bw.holds(lam) for bw in bands):
            return True, lam
    uniq = list({(bw.B, bw.C, bw.alpha0): bw for bw in bands}.values())
    for choice in product((0, 1), repeat=len(uniq)):
        lam = _lp_admissible_point(p, uniq, choice)
        if lam is not None:
            return True, lam
    return False, None


def random_admissible_lengths(p, rng, bits=64, tries=64):
    """Random admissible lengths (``bits``-bit numerators); falls back to the LP
    witness when sampling keeps hitting a band.  Raises ValueError when ``p`` is
    not dynamically irreducible."""
    ok, lam = is_dynamically_irreducible(p, rng=random.Random(rng.getrandbits(32)))
    if not ok:
        raise ValueError(f"{p} admits no admissible lengths")
    for _ in range(tries):
        cand = random_balanced_lengths(p, rng, bits=bits)
        if is_admissible(p, cand)[0]:
            return cand
    return lam
