"""Combinatorial Rauzy moves R0, R1 and their inverses.

The kernels act on ``(word, l)`` with ``word`` any sequence supporting slicing
and concatenation (tuples or bytes).  R0 moves the last bottom letter, R1 the
last top letter.
"""

from .genperm import GeneralizedPermutation, canonical_word


def r0_kernel(w, l):
    n = len(w)
    a = w[l - 1]
    b = w[n - 1]
    p = w.find(a, l) if isinstance(w, bytes) else _index(w, a, l)
    if p >= 0:
        # twin of the last top letter is on the bottom: type preserved
        if a == b:
            return None
        return w[:p + 1] + w[n - 1:n] + w[p + 1:n - 1], l
    bot = w[l:n - 1]
    if len(set(bot)) == len(bot):
        return None
    p = w.index(a)
    return w[:p] + w[n - 1:n] + w[p:n - 1], l + 1


def r1_kernel(w, l):
    n = len(w)
    a = w[l - 1]
    b = w[n - 1]
    q = w.find(b, 0, l) if isinstance(w, bytes) else _index(w, b, 0, l)
    if q >= 0:
        if a == b:
            return None
        return w[:q + 1] + w[l - 1:l] + w[q + 1:l - 1] + w[l:], l
    top = w[:l - 1]
    if len(set(top)) == len(top):
        return None
    q = w.index(b, l)
    return w[:l - 1] + w[l:q] + w[l - 1:l] + w[q:], l - 1


def _index(w, a, start, stop=None):
    try:
        return w.index(a, start, len(w) if stop is None else stop)
    except ValueError:
        return -1


def rauzy_kernel(w, l, eps):
    return r1_kernel(w, l) if eps else r0_kernel(w, l)


def _wrap(p, res, raw):
    if res is None:
        return None
    w, l = res
    q = GeneralizedPermutation(w, l, p.letters)
    if raw:
        return q
    return GeneralizedPermutation(canonical_word(w), l)


def r0(p, raw=False):
    """R0(p), canonical unless ``raw``; None when undefined."""
    return _wrap(p, r0_kernel(p.word, p.l), raw)


def r1(p, raw=False):
    return _wrap(p, r1_kernel(p.word, p.l), raw)


def rauzy(p, eps, raw=False):
    return r1(p, raw) if eps else r0(p, raw)


def predecessor_candidates(w, l, eps):
    """Candidate preimages of ``(w, l)`` under R_eps (not yet verified)."""
    n = len(w)
    out = []
    if eps == 0:
        a = w[l - 1]
        # inverse of the type preserving branch
        p = _index(w, a, l)
        if p >= 0 and p + 1 < n:
            out.append((w[:p + 1] + w[p + 2:] + w[p + 1:p + 2], l))
        # inverse of the branch that lengthens the top row
        if l >= 2:
            p = _index(w, a, 0, l - 1)
            if p >= 1:
                out.append((w[:p - 1] + w[p:] + w[p - 1:p], l - 1))
    else:
        b = w[n - 1]
        q = _index(w, b, 0, l)
        if q >= 0 and q + 1 < l:
            out.append((w[:q + 1] + w[q + 2:l] + w[q + 1:q + 2] + w[l:], l))
        q = _index(w, b, l, n - 1)
        if q >= 0 and q - 1 >= l:
            out.append((w[:l] + w[q - 1:q] + w[l:q - 1] + w[q:], l + 1))
    return out


def predecessors_kernel(w, l, eps):
    res = []
    for c in predecessor_candidates(w, l, eps):
        cw, cl = c
        if cl < 1 or cl >= len(cw):
            continue
        img = rauzy_kernel(cw, cl, eps)
        if img is not None and tuple(img[0]) == tuple(w) and img[1] == l:
            res.append(c)
    return res


def predecessors(p, eps):
    """All raw preimages of ``p`` under R_eps, forward verified."""
    return {GeneralizedPermutation(w, l, p.letters)
            for w, l in predecessors_kernel(p.word, p.l, eps)}
