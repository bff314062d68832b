"""Generalized permutations: a two-row word in which every letter occurs twice.

Internally a permutation is a tuple of dense integer codes together with the
length ``l`` of the top row; the letter names are carried alongside so that
raw (non canonical) objects can be compared against hand-written tables.
Positions are 0-based in code; the top row is ``word[:l]``.
"""

from __future__ import annotations

import re
from collections import Counter
from typing import Iterator, NamedTuple

from .errors import EmptyRowError, LetterCountError, ParseError, SizeLimitError

_TOKEN = re.compile(r"^[A-Za-z0-9_]+$")

MAX_ENUMERATE_D = 6


class AlphabetSplit(NamedTuple):
    a01: frozenset
    a0: frozenset
    a1: frozenset


def sigma_of(word):
    """The fixed-point-free involution pairing the two occurrences of each letter."""
    first = {}
    sig = [0] * len(word)
    for i, a in enumerate(word):
        j = first.get(a)
        if j is None:
            first[a] = i
        else:
            sig[i] = j
            sig[j] = i
    return tuple(sig)


def canonical_word(word):
    """Relabel by order of first occurrence."""
    code = {}
    out = []
    for a in word:
        c = code.get(a)
        if c is None:
            c = code[a] = len(code)
        out.append(c)
    return tuple(out)


def convention_ok(word, l):
    """True permutation, or a pair on the top and a pair on the bottom."""
    top = word[:l]
    bot = word[l:]
    top_pair = len(set(top)) < len(top)
    bot_pair = len(set(bot)) < len(bot)
    if not top_pair and not bot_pair:
        return True
    return top_pair and bot_pair


class GeneralizedPermutation:
    """Immutable generalized permutation of type (l, m).

    ``letters[c]`` is the name of the letter with code ``c``; ``word`` is a
    tuple of codes of length 2d.
    """

    __slots__ = ("letters", "word", "l", "_sigma", "_hash")

    def __init__(self, word, l, letters=None):
        word = tuple(word)
        n = len(word)
        if l < 1 or l >= n:
            raise EmptyRowError(f"row lengths ({l}, {n - l}) must both be positive")
        counts = Counter(word)
        bad = [a for a, k in counts.items() if k != 2]
        if bad:
            raise LetterCountError(f"letters occurring != 2 times: {sorted(bad)}")
        d = len(counts)
        if letters is None:
            if sorted(counts) != list(range(d)):
                raise ParseError("codes must be 0..d-1 when no letter names are given")
            letters = tuple(str(i + 1) for i in range(d))
        letters = tuple(letters)
        if len(letters) != d or any(c < 0 or c >= d for c in counts):
            raise ParseError("letter table does not match the codes used")
        self.letters = letters
        self.word = word
        self.l = l
        self._sigma = None
        self._hash = None

    # -- basic data
    @property
    def m(self):
        return len(self.word) - self.l

    @property
    def d(self):
        return len(self.letters)

    @property
    def type(self):
        return (self.l, self.m)

    @property
    def sigma(self):
        if self._sigma is None:
            self._sigma = sigma_of(self.word)
        return self._sigma

    def names(self):
        return tuple(self.letters[c] for c in self.word)

    def top(self):
        return self.names()[: self.l]

    def bottom(self):
        return self.names()[self.l:]

    def code(self, name):
        return self.letters.index(name)

    @property
    def convention_ok(self):
        return convention_ok(self.word, self.l)

    def is_true_permutation(self):
        return len(set(self.word[: self.l])) == self.l and self.l == self.m

    def key(self):
        """Hashable canonical key (same for all relabelings)."""
        return (canonical_word(self.word), self.l)

    # -- comparison is by letter names, so raw tables compare literally
    def __eq__(self, other):
        if not isinstance(other, GeneralizedPermutation):
            return NotImplemented
        return self.l == other.l and self.names() == other.names()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.l, self.names()))
        return self._hash

    def __str__(self):
        names = self.names()
        return " ".join(names[: self.l]) + " / " + " ".join(names[self.l:])

    def __repr__(self):
        return f"GeneralizedPermutation('{self}')"


def parse(text):
    """Parse ``"A B A / B C C"`` (rows split by ``/`` or a newline)."""
    if "/" in text:
        rows = text.split("/")
    else:
        rows = text.strip().splitlines()
    if len(rows) != 2:
        raise ParseError(f"expected two rows, got {len(rows)}")
    top, bot = rows[0].split(), rows[1].split()
    if not top or not bot:
        raise EmptyRowError("both rows must be non-empty")
    for t in top + bot:
        if not _TOKEN.match(t):
            raise ParseError(f"bad token {t!r}")
    names = list(dict.fromkeys(top + bot))
    index = {a: i for i, a in enumerate(names)}
    word = [index[a] for a in top + bot]
    counts = Counter(top + bot)
    bad = sorted(a for a, k in counts.items() if k != 2)
    if bad:
        raise LetterCountError(f"letters occurring != 2 times: {bad}")
    return GeneralizedPermutation(word, len(top), names)


def from_rows(top, bottom):
    """Build from two sequences of letter names."""
    return parse(" ".join(map(str, top)) + " / " + " ".join(map(str, bottom)))


def from_key(key):
    word, l = key
    return GeneralizedPermutation(word, l)


def mirror_s(p):
    """Position reversal s(i) = 2d+1-i; the result has type (m, l)."""
    return GeneralizedPermutation(p.word[::-1], p.m, p.letters)


def canonical(p):
    word = canonical_word(p.word)
    return GeneralizedPermutation(word, p.l)


def relabel(p, names):
    """Rename letter codes: ``names[c]`` becomes the name of code ``c``."""
    return GeneralizedPermutation(p.word, p.l, names)


def split(p):
    l = p.l
    top = Counter(p.word[:l])
    a0, a1, a01 = set(), set(), set()
    for c in range(p.d):
        k = top.get(c, 0)
        (a1, a01, a0)[k].add(p.letters[c])
    return AlphabetSplit(frozenset(a01), frozenset(a0), frozenset(a1))


def _growth_words(d):
    """All words in which letters 0..d-1 occur twice and appear in order of first use."""
    n = 2 * d
    word = [0] * n
    count = [0] * d

    def rec(pos, opened):
        if pos == n:
            yield tuple(word)
            return
        for a in range(opened):
            if count[a] == 1:
                count[a] = 2
                word[pos] = a
                yield from rec(pos + 1, opened)
                count[a] = 1
        if opened < d:
            count[opened] = 1
            word[pos] = opened
            yield from rec(pos + 1, opened + 1)
            count[opened] = 0

    yield from rec(0, 0)


def enumerate_words(d, require_convention=False):
    """Yield canonical ``(word, l)`` pairs on d letters."""
    if d < 1:
        return
    for w in _growth_words(d):
        for l in range(1, 2 * d):
            if require_convention and not convention_ok(w, l):
                continue
            yield w, l


def enumerate_all(d, require_convention=False) -> Iterator[GeneralizedPermutation]:
    if d > MAX_ENUMERATE_D:
        raise SizeLimitError(f"enumerate_all is limited to d <= {MAX_ENUMERATE_D}")
    for w, l in enumerate_words(d, require_convention):
        yield GeneralizedPermutation(w, l)


def random_permutation(d, rng, require_convention=True, l=None):
    """Uniform random word with a random split point, optionally rejection-sampled."""
    while True:
        word = [a for a in range(d) for _ in range(2)]
        rng.shuffle(word)
        ll = l if l is not None else rng.randint(1, 2 * d - 1)
        if not require_convention or convention_ok(word, ll):
            return GeneralizedPermutation(canonical_word(word), ll)
