"""Canonical strings and bands, substring calculus, enumeration.

Words are tuples of letter codes (see quiver.py).  A string is a walk up to
inversion, a band a wrap-valid walk up to inversion and rotation.  Canonical
representatives are minima under the componentwise letter order, which sorts
by (arrow input index, direct before inverse).
"""

from __future__ import annotations

from dataclasses import dataclass

from .quiver import WalkError


def invert_word(w):
    return tuple(c ^ 1 for c in reversed(w))


def canonical_string_word(w):
    w = tuple(w)
    return min(w, invert_word(w))


def canonical_band_word(w):
    w = tuple(w)
    m = len(w)
    best = w
    for u in (w, invert_word(w)):
        for r in range(m):
            cand = u[r:] + u[:r]
            if cand < best:
                best = cand
    return best


def rotate(w, r):
    return w[r:] + w[:r]


def word_is_periodic(w):
    m = len(w)
    for d in range(1, m):
        if m % d == 0 and w == rotate(w, d):
            return True
    return False


class StringWord:
    """A string: reduced relation-free walk taken up to inversion."""

    __slots__ = ("q", "word", "base", "dim")

    def __init__(self, q, letters, base=None):
        letters = tuple(letters)
        if letters:
            if not q.is_valid_walk(letters):
                raise WalkError(f"not a string: {q.format_walk(letters)}")
            self.word = canonical_string_word(letters)
            self.base = q.ltgt(self.word[0])
        else:
            if base is None:
                raise WalkError("lazy string needs a vertex")
            self.word = ()
            self.base = q.vertex_index[base] if base in q.vertex_index else int(base)
        self.q = q
        self.dim = q.walk_dim(self.word, q.vertices[self.base])

    kind = "string"

    @property
    def length(self):
        return len(self.word)

    def vertices(self):
        return self.q.walk_vertices(self.word, self.q.vertices[self.base])

    def inverse_rep(self):
        return invert_word(self.word)

    def sort_key(self):
        return (0, len(self.word), self.word, self.base)

    @property
    def serial(self):
        if not self.word:
            return f"e_{self.q.vertices[self.base]}"
        return self.q.format_walk(self.word)

    def __eq__(self, other):
        return (
            isinstance(other, StringWord)
            and self.word == other.word
            and self.base == other.base
            and self.q == other.q
        )

    def __hash__(self):
        return hash((self.word, self.base))

    def __repr__(self):
        return f"String({self.serial})"


class BandWord:
    """A band: wrap-valid string of length >= 2, up to inversion and rotation."""

    __slots__ = ("q", "word", "minimal", "dim")

    def __init__(self, q, letters):
        letters = tuple(letters)
        if len(letters) < 2:
            raise WalkError("a band has length at least 2")
        double = letters + letters
        if not q.is_valid_walk(double):
            raise WalkError(f"not a band: {q.format_walk(letters)} (square is no string)")
        self.q = q
        self.word = canonical_band_word(letters)
        self.minimal = not word_is_periodic(self.word)
        dim = [0] * len(q.vertices)
        for c in self.word:
            dim[q.ltgt(c)] += 1
        self.dim = tuple(dim)

    kind = "band"

    @property
    def length(self):
        return len(self.word)

    def sort_key(self):
        return (1, len(self.word), self.word, 0)

    @property
    def serial(self):
        return "(" + self.q.format_walk(self.word) + ")"

    def minimal_root(self):
        """Return (minimal band, power t) with self = root^t."""
        m = len(self.word)
        for d in range(1, m + 1):
            if m % d == 0 and self.word == rotate(self.word, d % m):
                return BandWord(self.q, self.word[:d]), m // d
        raise AssertionError("unreachable")

    def subword(self, start, length):
        """Letters of B^inf at positions [start, start+length), start 1-based."""
        m = len(self.word)
        return tuple(self.word[(start - 1 + k) % m] for k in range(length))

    def position_vertex(self, p):
        return self.q.ltgt(self.word[(p - 1) % len(self.word)])

    def __eq__(self, other):
        return isinstance(other, BandWord) and self.word == other.word and self.q == other.q

    def __hash__(self):
        return hash(("band", self.word))

    def __repr__(self):
        return f"Band({self.serial})"


@dataclass(frozen=True)
class Substring:
    """Occurrence [start, start+length] inside a host string or unraveled band.

    Positions are 1-based cuts between letters.  For band hosts, ``start`` is
    normalized to 1..len(B); occurrences are shift classes of B^inf.
    """

    host: object
    start: int
    length: int

    @property
    def end(self):
        return self.start + self.length

    def word(self):
        if self.host.kind == "band":
            return self.host.subword(self.start, self.length)
        return self.host.word[self.start - 1 : self.start - 1 + self.length]

    def vertex_at(self, p):
        """Vertex index at cut position p of the host representative."""
        host = self.host
        if host.kind == "band":
            return host.position_vertex(p)
        if p <= host.length:
            return host.q.ltgt(host.word[p - 1])
        return host.q.lsrc(host.word[-1]) if host.word else host.base

    def as_string(self):
        w = self.word()
        if w:
            return StringWord(self.host.q, w)
        return StringWord(self.host.q, (), base=self.host.q.vertices[self.vertex_at(self.start)])

    def class_key(self):
        w = self.word()
        if w:
            return canonical_string_word(w)
        return ("e", self.vertex_at(self.start))


# -- occurrence scans ------------------------------------------------------


def string_occ_positions(q, w, left_direct, right_direct, max_len=None):
    """(start, length) pairs of substrings of the raw word w with the given
    neighbor-letter pattern; host boundaries always qualify."""
    m = len(w)
    starts = [i for i in range(1, m + 2) if i == 1 or q.is_direct(w[i - 2]) == left_direct]
    ends = [j for j in range(1, m + 2) if j == m + 1 or q.is_direct(w[j - 1]) == right_direct]
    cap = m if max_len is None else min(max_len, m)
    return [(i, j - i) for i in starts for j in ends if i <= j <= i + cap]


def band_occ_positions(q, w, left_direct, right_direct, max_len):
    """Shift classes (start in 1..m, length) of qualifying substrings of the
    unraveled band with raw period word w."""
    m = len(w)
    if max_len is None:
        raise ValueError("band occurrence scan needs a length cap")
    starts = [i for i in range(1, m + 1) if q.is_direct(w[(i - 2) % m]) == left_direct]
    end_res = [r for r in range(1, m + 1) if q.is_direct(w[r - 1]) == right_direct]
    out = []
    for i in starts:
        for r in end_res:
            length = (r - i) % m
            while length <= max_len:
                out.append((i, length))
                length += m
    out.sort()
    return out


def _string_occurrences(host, max_len, left_direct, right_direct):
    pos = string_occ_positions(host.q, host.word, left_direct, right_direct, max_len)
    return [Substring(host, i, L) for i, L in pos]


def _band_occurrences(host, max_len, left_direct, right_direct):
    pos = band_occ_positions(host.q, host.word, left_direct, right_direct, max_len)
    return [Substring(host, i, L) for i, L in pos]


def top_substrings(host, max_len=None):
    """Substrings on top: left neighbor direct (or absent), right inverse."""
    if host.kind == "band":
        return _band_occurrences(host, max_len, left_direct=True, right_direct=False)
    return _string_occurrences(host, max_len, left_direct=True, right_direct=False)


def bottom_substrings(host, max_len=None):
    """Substrings at the bottom: left neighbor inverse, right direct."""
    if host.kind == "band":
        return _band_occurrences(host, max_len, left_direct=False, right_direct=True)
    return _string_occurrences(host, max_len, left_direct=False, right_direct=True)


@dataclass(frozen=True)
class ReducedSubstring:
    rep: tuple      # rotated representative word of the band
    start: int      # always 1: rho_red = rep[1, 1+length]
    length: int
    power: int      # rho = rho_red . B^power


def substring_red(band, sub):
    """Split a substring rho of B^inf as rho_red . B^k.

    Returns the rotation of the band representative that makes rho_red an
    initial segment of one period.
    """
    assert sub.host == band and band.kind == "band"
    m = len(band.word)
    r = sub.length % m
    k = sub.length // m
    rep = rotate(band.word, (sub.start - 1) % m)
    return ReducedSubstring(rep=rep, start=1, length=r, power=k)


# -- enumeration -----------------------------------------------------------


def _extensions(q, last):
    return [y for y in range(q.n_letters) if q.valid_follow(last, y)]


def enumerate_strings(q, dim_bound):
    """All canonical strings with dimension vector <= dim_bound, entrywise."""
    bound = tuple(dim_bound)
    n = len(q.vertices)
    assert len(bound) == n
    found = set()
    for vi, v in enumerate(q.vertices):
        if bound[vi] >= 1:
            found.add(StringWord(q, (), base=v))

    def walk(word, counts):
        found.add(StringWord(q, word))
        for y in _extensions(q, word[-1]):
            v = q.lsrc(y)
            if counts[v] < bound[v]:
                counts[v] += 1
                walk(word + (y,), counts)
                counts[v] -= 1

    for x in range(q.n_letters):
        t, s = q.ltgt(x), q.lsrc(x)
        counts = [0] * n
        counts[t] += 1
        counts[s] += 1
        if counts[t] <= bound[t] and counts[s] <= bound[s]:
            walk((x,), counts)
    return sorted(found, key=StringWord.sort_key)


def enumerate_minimal_bands(q, dim_bound):
    """All canonical minimal bands with per-period dimension vector <= dim_bound."""
    bound = tuple(dim_bound)
    n = len(q.vertices)
    total = sum(bound)
    found = set()

    def walk(word, counts):
        # counts cover positions 1..len(word); the trailing vertex is not
        # yet counted because it wraps onto position 1 for a band.
        if len(word) >= 2 and q.valid_follow(word[-1], word[0]):
            band = BandWord(q, word)
            if band.minimal and all(c <= b for c, b in zip(band.dim, bound)):
                found.add(band)
        if len(word) >= total:
            return
        for y in _extensions(q, word[-1]):
            v = q.ltgt(y)  # vertex entering the period at the new position
            if counts[v] < bound[v]:
                counts[v] += 1
                walk(word + (y,), counts)
                counts[v] -= 1

    for x in range(q.n_letters):
        t = q.ltgt(x)
        counts = [0] * n
        counts[t] += 1
        if counts[t] <= bound[t]:
            walk((x,), counts)
    return sorted(found, key=BandWord.sort_key)


_STRINGS_CACHE = {}


def all_strings_up_to_length(q, max_len):
    """Every canonical string of length <= max_len (no dimension bound)."""
    key = (q, max_len)
    if key in _STRINGS_CACHE:
        return _STRINGS_CACHE[key]
    found = {StringWord(q, (), base=v) for v in q.vertices}

    def walk(word):
        found.add(StringWord(q, word))
        if len(word) >= max_len:
            return
        for y in _extensions(q, word[-1]):
            walk(word + (y,))

    if max_len >= 1:
        for x in range(q.n_letters):
            walk((x,))
    result = tuple(sorted(found, key=StringWord.sort_key))
    _STRINGS_CACHE[key] = result
    return result


def distinct_band_power_bound(b, b2):
    """An m with no representative of b^n (n >= m) at the bottom of b2^inf."""
    if b == b2:
        raise ValueError("bands must be distinct")
    assert b.minimal and b2.minimal
    verts_b = {b.q.ltgt(c) for c in b.word}
    verts_b2 = {b2.q.ltgt(c) for c in b2.word}
    if not verts_b & verts_b2:
        return 1
    m = len(b2.word)
    length = m * len(b.word)
    reps = {rotate(u, r) for u in (b.word, invert_word(b.word)) for r in range(len(b.word))}
    powers = {rep * m for rep in reps}
    for occ in bottom_substrings(b2, max_len=length):
        if occ.length == length and occ.word() in powers:
            raise AssertionError("band power bound violated; bands not distinct?")
    return m
