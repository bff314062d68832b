"""Pseudo-suspensions, suspension data, polygons and heights.

Complex numbers are kept as pairs of Fractions ``(re, im)`` so that every
identity (balance, area, heights) is checked exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .errors import ConnectionError, NoSuspensionError, NotSuitableError
from .genperm import GeneralizedPermutation, split
from .rauzy import rauzy
from .reduce import random_balanced_lengths


# ----------------------------------------------------------- pseudo-suspensions

@dataclass(frozen=True)
class PseudoSuspension:
    tau: dict

    def prefix_sums(self, p):
        names = p.names()
        top, bot = [], []
        s = Fraction(0)
        for a in names[:p.l]:
            s += self.tau[a]
            top.append(s)
        s = Fraction(0)
        for a in names[p.l:]:
            s += self.tau[a]
            bot.append(s)
        return top, bot

    def is_valid(self, p):
        top, bot = self.prefix_sums(p)
        return all(v >= 0 for v in top) and all(v <= 0 for v in bot) and top[-1] == 0 and bot[-1] == 0

    def is_strict(self, p):
        top, bot = self.prefix_sums(p)
        return (self.is_valid(p) and all(v > 0 for v in top[:-1])
                and all(v < 0 for v in bot[:-1]))

    def vanishing(self, p):
        top, bot = self.prefix_sums(p)
        return ([k + 1 for k, v in enumerate(top[:-1]) if v == 0],
                [k + 1 for k, v in enumerate(bot[:-1]) if v == 0])


def _mv_true(top, bottom):
    """Masur-Veech values tau = (bottom rank) - (top rank) of a true permutation."""
    r0 = {a: i for i, a in enumerate(top)}
    r1 = {a: i for i, a in enumerate(bottom)}
    return {a: r1[a] - r0[a] for a in top}


def _mv_one_row(row):
    """Values for a row in which every letter occurs twice.

    The row and its reversal, each cut down to first occurrences, form a true
    permutation whose Masur-Veech values are used for every letter.
    """
    first = list(dict.fromkeys(row))
    mirrored = list(dict.fromkeys(reversed(row)))
    return _mv_true(first, mirrored)


def masur_veech_pseudo(p):
    names = p.names()
    sp = split(p)
    top, bot = names[:p.l], names[p.l:]
    tau = {}
    tau.update(_mv_true([a for a in top if a in sp.a01], [a for a in bot if a in sp.a01]))
    tau.update(_mv_one_row([a for a in top if a in sp.a0]))
    tau.update({a: -v for a, v in _mv_one_row([a for a in bot if a in sp.a1]).items()})
    return PseudoSuspension({a: Fraction(tau[a]) for a in p.letters})


def _prefix_lp(p, strict_rows_equal_zero):
    """max t s.t. proper top prefixes >= t, proper bottom prefixes <= -t.

    With ``strict_rows_equal_zero`` both row sums are forced to zero
    (pseudo-suspension); otherwise the two row sums are only required to agree.
    Variables: tau = u - v (u, v >= 0) and t <= 1.
    """
    letters = p.letters
    d = len(letters)
    idx = {a: i for i, a in enumerate(letters)}
    names = p.names()
    nv = 2 * d + 1
    rows, rhs = [], []

    def lin(coeffs, t_coef):
        r = [0] * nv
        for a, c in coeffs.items():
            r[idx[a]] += c
            r[d + idx[a]] -= c
        r[2 * d] = t_coef
        return r

    acc = {}
    for a in names[:p.l - 1]:
        acc[a] = acc.get(a, 0) + 1
        rows.append(lin({k: -v for k, v in acc.items()}, 1))
        rhs.append(0)
    acc = {}
    for a in names[p.l:len(names) - 1]:
        acc[a] = acc.get(a, 0) + 1
        rows.append(lin(acc, 1))
        rhs.append(0)
    top_tot, bot_tot = {}, {}
    for a in names[:p.l]:
        top_tot[a] = top_tot.get(a, 0) + 1
    for a in names[p.l:]:
        bot_tot[a] = bot_tot.get(a, 0) + 1
    if strict_rows_equal_zero:
        for tot in (top_tot, bot_tot):
            rows.append(lin(tot, 0))
            rhs.append(0)
            rows.append(lin({k: -v for k, v in tot.items()}, 0))
            rhs.append(0)
    else:
        diff = dict(top_tot)
        for a, v in bot_tot.items():
            diff[a] = diff.get(a, 0) - v
        rows.append(lin(diff, 0))
        rhs.append(0)
        rows.append(lin({k: -v for k, v in diff.items()}, 0))
        rhs.append(0)
    cap = [0] * nv
    cap[2 * d] = 1
    rows.append(cap)
    rhs.append(1)
    c = [0] * nv
    c[2 * d] = 1
    res = lp.maximize(c, rows, rhs)
    if res is None:  # pragma: no cover - t is capped
        raise AssertionError("slack LP unbounded")
    val, x = res
    tau = {a: x[idx[a]] - x[d + idx[a]] for a in letters}
    return val, tau


def strict_pseudo(p):
    val, tau = _prefix_lp(p, True)
    if val <= 0:
        return None
    return PseudoSuspension(tau)


# -------------------------------------------------------------- suspension data

@dataclass(frozen=True)
class SuspensionData:
    """zeta[name] = (re, im); re are the interval lengths."""

    zeta: dict

    def re(self):
        return {a: z[0] for a, z in self.zeta.items()}

    def im(self):
        return {a: z[1] for a, z in self.zeta.items()}

    def to_json(self):
        return {a: [z[0].numerator, z[0].denominator, z[1].numerator, z[1].denominator]
                for a, z in self.zeta.items()}


def check_suspension(p, zeta, lam=None):
    """The four defining conditions; returns a list of failures (empty if valid)."""
    names = p.names()
    errs = []
    if lam is not None and any(zeta[a][0] != lam[a] for a in p.letters):
        errs.append("re != lambda")
    if any(zeta[a][0] <= 0 for a in p.letters):
        errs.append("non-positive real part")
    s = Fraction(0)
    for a in names[:p.l - 1]:
        s += zeta[a][1]
        if s <= 0:
            errs.append("top prefix not positive")
            break
    s = Fraction(0)
    for a in names[p.l:len(names) - 1]:
        s += zeta[a][1]
        if s >= 0:
            errs.append("bottom prefix not negative")
            break
    tre = sum(zeta[a][0] for a in names[:p.l])
    bre = sum(zeta[a][0] for a in names[p.l:])
    tim = sum(zeta[a][1] for a in names[:p.l])
    bim = sum(zeta[a][1] for a in names[p.l:])
    if tre != bre or tim != bim:
        errs.append("row sums differ")
    return errs


def is_suspension(p, zeta, lam=None):
    return not check_suspension(p, zeta, lam)


def generic_lengths(p, seed=0):
    return random_balanced_lengths(p, random.Random(seed), bits=16)


def find_suspension(p, lam=None):
    """Some suspension data over (p, lam) iff p is irreducible; None otherwise."""
    if lam is None:
        lam = generic_lengths(p)
    lam = {a: Fraction(lam[a]) for a in p.letters}
    val, tau = _prefix_lp(p, False)
    if val <= 0:
        return None
    zeta = {a: (lam[a], tau[a]) for a in p.letters}
    data = SuspensionData(zeta)
    errs = check_suspension(p, zeta, lam)
    if errs:
        raise AssertionError(f"LP solution is not a suspension: {errs}")
    return data


def masur_veech_suspension(p, lam):
    """zeta = lambda + i tau_MV (a suspension exactly for irreducible true permutations)."""
    tau = masur_veech_pseudo(p).tau
    return SuspensionData({a: (Fraction(lam[a]), tau[a]) for a in p.letters})


# ---------------------------------------------------------------------- polygon

@dataclass(frozen=True)
class Polygon:
    top: tuple      # vertices of L0 from the origin
    bottom: tuple   # vertices of L1 from the origin
    top_labels: tuple
    bottom_labels: tuple
    suitable: bool

    def area(self):
        # boundary: along L1 forward, then L0 backward (counter-clockwise)
        pts = list(self.bottom) + list(self.top[-2:0:-1])
        s = Fraction(0)
        for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
            s += x0 * y1 - x1 * y0
        return s / 2

    def to_json(self):
        def enc(v):
            return [[str(x), str(y)] for x, y in v]
        return {"L0": enc(self.top), "L1": enc(self.bottom),
                "L0_labels": list(self.top_labels), "L1_labels": list(self.bottom_labels),
                "suitable": self.suitable}


def _chain(labels, zeta):
    pts = [(Fraction(0), Fraction(0))]
    x, y = Fraction(0), Fraction(0)
    for a in labels:
        x += zeta[a][0]
        y += zeta[a][1]
        pts.append((x, y))
    return tuple(pts)


def _orient(a, b, c):
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(a, b, c):
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def segments_intersect(p1, p2, q1, q2):
    o1, o2 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    o3, o4 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    if o1 == 0 and _on_segment(p1, p2, q1):
        return True
    if o2 == 0 and _on_segment(p1, p2, q2):
        return True
    if o3 == 0 and _on_segment(q1, q2, p1):
        return True
    if o4 == 0 and _on_segment(q1, q2, p2):
        return True
    return False


def _suitable(top, bottom):
    """L0 and L1 meet only at their common endpoints."""
    ends = {top[0], top[-1]}
    for i in range(len(top) - 1):
        a, b = top[i], top[i + 1]
        for j in range(len(bottom) - 1):
            c, e = bottom[j], bottom[j + 1]
            if segments_intersect(a, b, c, e) and not _endpoint_contact(a, b, c, e, ends):
                return False
    return True


def _endpoint_contact(a, b, c, e, ends):
    """Two intersecting segments touch only at a shared end of the broken lines."""
    shared = {a, b} & {c, e} & ends
    if len(shared) != 1:
        return False
    (P,) = shared
    if _orient(a, b, c) != 0 or _orient(a, b, e) != 0:
        return True
    u = b if a == P else a
    v = e if c == P else c
    return (u[0] - P[0]) * (v[0] - P[0]) + (u[1] - P[1]) * (v[1] - P[1]) < 0


def polygon(p, data):
    zeta = data.zeta if isinstance(data, SuspensionData) else data
    names = p.names()
    tl, bl = names[:p.l], names[p.l:]
    top = _chain(tl, zeta)
    bottom = _chain(bl, zeta)
    return Polygon(top, bottom, tuple(tl), tuple(bl), _suitable(top, bottom))


def _flip_rows(p):
    """Exchange the two rows (imaginary parts change sign)."""
    w = p.word[p.l:] + p.word[:p.l]
    return GeneralizedPermutation(w, p.m, p.letters)


def make_suitable(p, data):
    """Change real parts only (keeping the conditions) until the polygon is suitable."""
    zeta = dict(data.zeta)
    if check_suspension(p, zeta):
        raise NoSuspensionError("input is not suspension data")
    if polygon(p, zeta).suitable:
        return SuspensionData(zeta)
    names = p.names()
    t = sum(zeta[a][1] for a in names[:p.l])
    if t < 0:
        q = _flip_rows(p)
        flipped = {a: (z[0], -z[1]) for a, z in zeta.items()}
        out = make_suitable(q, SuspensionData(flipped))
        return SuspensionData({a: (z[0], -z[1]) for a, z in out.zeta.items()})
    a_top = names[p.l - 1]
    b_bot = names[-1]
    if names[:p.l].count(b_bot):
        # twin of the last bottom letter is on the top: shrink it below the last top one
        re = zeta[a_top][0] / 2
        if zeta[b_bot][0] > re:
            zeta[b_bot] = (re, zeta[b_bot][1])
        out = SuspensionData(zeta)
        if polygon(p, zeta).suitable:
            return out
    out = _suitable_lp(p, zeta)
    if out is None or not polygon(p, out.zeta).suitable:
        raise NotSuitableError("could not adjust real parts")
    return out


def _suitable_lp(p, zeta):
    """Re-choose all real parts with fixed imaginary parts.

    Both broken lines are monotone in x, so only the two last edges can cross.
    With a positive top sum the lines are disjoint as soon as the bottom line
    is still below zero at the abscissa where the last top edge starts, which
    is a linear condition on the real parts.
    """
    names = p.names()
    letters = p.letters
    d = len(letters)
    idx = {a: i for i, a in enumerate(letters)}
    a_top, b_bot = names[p.l - 1], names[-1]
    im = {a: zeta[a][1] for a in letters}
    t = sum(im[a] for a in names[:p.l])
    B = sum(im[a] for a in names[p.l:-1])  # height of the last bottom vertex
    rows, rhs = [], []
    nv = d + 1

    def vec():
        return [Fraction(0)] * nv

    for a in letters:
        r = vec()
        r[idx[a]] = Fraction(-1)
        r[d] = Fraction(1)
        rows.append(r)
        rhs.append(Fraction(0))
    bal = vec()
    for a in names[:p.l]:
        bal[idx[a]] += 1
    for a in names[p.l:]:
        bal[idx[a]] -= 1
    rows.append(bal)
    rhs.append(Fraction(0))
    rows.append([-v for v in bal])
    rhs.append(Fraction(0))
    tot = vec()
    for i in range(d):
        tot[i] = Fraction(1)
    rows.append(tot)
    rhs.append(Fraction(1))
    # the bottom line stays below zero where the last top edge starts:
    # r_b * t - r_t * (t - B) <= -s  (automatic when r_b <= r_t)
    r = vec()
    r[idx[b_bot]] += t
    r[idx[a_top]] -= (t - B)
    r[d] = Fraction(1)
    rows.append(r)
    rhs.append(Fraction(0))
    c = [Fraction(0)] * d + [Fraction(1)]
    res = lp.maximize(c, rows, rhs)
    if res is None or res[0] <= 0:
        return None
    s, x = res[0], res[1]
    # the LP optimum is a vertex with many tied coordinates; move back towards
    # the original lengths while the crossing row keeps a negative value
    tot0 = sum(zeta[a][0] for a in letters)
    lam = [zeta[a][0] / tot0 for a in letters]
    v = r[idx[b_bot]] * lam[idx[b_bot]] + r[idx[a_top]] * lam[idx[a_top]]
    mu = Fraction(1, 2) if v < 0 else s / (2 * (s + v))
    x = [(1 - mu) * x[i] + mu * lam[i] for i in range(d)]
    L_old = sum(zeta[a][0] for a in names[:p.l])
    L_new = sum(x[idx[a]] for a in names[:p.l])
    scale = L_old / L_new
    return SuspensionData({a: (x[idx[a]] * scale, im[a]) for a in letters})


def heights(p, data):
    """Rectangle heights: vertical distance from X to an edge plus back from its twin."""
    zeta = data.zeta if isinstance(data, SuspensionData) else data
    poly = polygon(p, zeta)
    if not poly.suitable:
        raise NotSuitableError("heights need a suitable polygon")
    names = p.names()
    l = p.l
    ystart = {}
    for i in range(l):
        ystart[i] = poly.top[i][1]
    for j in range(len(names) - l):
        ystart[l + j] = poly.bottom[j][1]
    sig = p.sigma
    h = {}
    for i in range(len(names)):
        j = sig[i]
        if j < i:
            continue
        a = names[i]
        im = zeta[a][1]
        if i < l and j >= l:
            h[a] = ystart[i] - ystart[j]
        elif j < l:
            h[a] = ystart[i] + ystart[j] + im
        else:
            h[a] = -(ystart[i] + ystart[j] + im)
    return h


def suspension_step(p, data):
    """Rauzy-Veech step on (p, zeta); the winner loses the loser's zeta."""
    zeta = dict(data.zeta if isinstance(data, SuspensionData) else data)
    names = p.names()
    a, b = names[p.l - 1], names[-1]
    if zeta[a][0] == zeta[b][0]:
        raise ConnectionError("equal real parts: connection of length 0")
    eps = 0 if zeta[a][0] > zeta[b][0] else 1
    win, lose = (a, b) if eps == 0 else (b, a)
    q = rauzy(p, eps, raw=True)
    if q is None:
        raise ConnectionError("Rauzy move undefined")
    zw, zl = zeta[win], zeta[lose]
    zeta[win] = (zw[0] - zl[0], zw[1] - zl[1])
    return q, SuspensionData(zeta)


def geodesic_flow(data, s):
    s = Fraction(s)
    if s <= 0:
        raise ValueError("s must be positive")
    return SuspensionData({a: (z[0] * s, z[1] / s) for a, z in data.zeta.items()})
