"""Exact linear programming over the rationals.

Only the form needed here is supported: maximize ``c.x`` subject to
``A x <= b``, ``x >= 0`` with ``b >= 0``, so the origin is a feasible start.
The tableau is kept fraction free (integer entries over a common
denominator, Bareiss-style updates) and Bland's rule prevents cycling.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def _integer_row(row):
    den = 1
    for v in row:
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    return [int(v * den) for v in row]


def maximize(c, A, b):
    """Return ``(value, x)`` with exact Fractions, or None if unbounded."""
    m = len(A)
    n = len(c)
    if any(v < 0 for v in b):
        raise ValueError("right-hand side must be non-negative")
    width = n + m + 1
    T = []
    for i in range(m):
        row = list(A[i]) + [0] * m + [b[i]]
        row[n + i] = 1
        T.append(_integer_row(row))
    # the slack column of row i may have been scaled; record the scale
    obj = _integer_row([-v for v in c] + [0] * m + [0])
    cscale = 1
    for v in c:
        if isinstance(v, Fraction):
            cscale = lcm(cscale, v.denominator)
    basis = [n + i for i in range(m)]
    D = 1
    rhs = width - 1
    while True:
        col = -1
        for j in range(width - 1):
            if obj[j] < 0:
                col = j
                break
        if col < 0:
            break
        r = -1
        for i in range(m):
            a = T[i][col]
            if a > 0:
                if r < 0:
                    r = i
                    continue
                # compare T[i][rhs]/a with T[r][rhs]/T[r][col]
                lhs = T[i][rhs] * T[r][col]
                rhs_ = T[r][rhs] * a
                if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[r]):
                    r = i
        if r < 0:
            return None
        prow = T[r]
        p = prow[col]
        for i in range(m):
            if i == r:
                continue
            row = T[i]
            f = row[col]
            if f == 0:
                if p != D:
                    T[i] = [v * p // D for v in row]
            else:
                T[i] = [(v * p - f * pv) // D for v, pv in zip(row, prow)]
        f = obj[col]
        obj = [(v * p - f * pv) // D for v, pv in zip(obj, prow)]
        D = p
        basis[r] = col
    # value = obj[rhs] / D, undo objective scaling
    value = Fraction(obj[rhs], D * cscale)
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            # row i was scaled by an integer s_i: entries are s_i * true / D,
            # but the basic column entry equals D, so x_j = rhs / D exactly
            x[j] = Fraction(T[i][rhs], T[i][j])
    return value, x
