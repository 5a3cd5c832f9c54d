"""Degeneration moves: arrow deletion, reachings, and their resolutions.

Deleting an arrow produces a diagramme ABOVE the current one in the
degeneration order; resolving a reaching produces one BELOW.  The committed
rewiring rule for non-intersecting auto-reachings is: block swap at the
leftmost valid interior occurrence, else segment reversal, else band
extraction; a reaching where all three fail is surfaced, never dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quiver import WalkError
from .words import (
    BandWord,
    StringWord,
    band_occ_positions,
    canonical_string_word,
    invert_word,
    string_occ_positions,
)
from .hvectors import Diagramme


class ResolutionNonexistent(Exception):
    """No rewiring of this auto-reaching yields valid strings/bands."""


@dataclass(frozen=True)
class Reaching:
    kind: str           # "pair" | "auto-nonint" | "auto-int"
    top_host: object    # item carrying the top occurrence
    bot_host: object    # item carrying the bottom occurrence (same for autos)
    top_pos: tuple      # (i, j) on the canonical word (bands: cover positions)
    bot_pos: tuple
    E: object           # StringWord class of the shared substring
    same_direction: object  # True / False / None (length-0)

    @property
    def length(self):
        return self.top_pos[1] - self.top_pos[0]

    def descriptor(self):
        return {
            "kind": self.kind,
            "items": [self.top_host.serial, self.bot_host.serial],
            "positions": list(self.top_pos + self.bot_pos),
            "E": self.E.serial,
        }


# -- small word helpers ------------------------------------------------------


def _cover(word, start, length):
    m = len(word)
    return tuple(word[(start - 1 + k) % m] for k in range(length))


def _word_vertex(q, word, p, base=None):
    if not word:
        return base
    if p <= len(word):
        return q.ltgt(word[p - 1])
    return q.lsrc(word[-1])


def _band_vertex(q, word, p):
    return q.ltgt(word[(p - 1) % len(word)])


def _valid_word(q, word):
    if not word:
        return True
    try:
        return q.is_valid_walk(word)
    except WalkError:
        return False


def _try_band(q, word):
    try:
        return BandWord(q, word)
    except WalkError:
        return None


def _flip_string_pos(m, i, j):
    return (m + 2 - j, m + 2 - i)


def _flip_band_start(m, s, length):
    # cover position p of a band word corresponds to m + 2 - p on its inverse
    return (m + 1 - s - length) % m + 1


def _occ_word(item, start, length):
    if item.kind == "band":
        return _cover(item.word, start, length)
    return item.word[start - 1 : start - 1 + length]


def _occ_vertex(q, item, p):
    if item.kind == "band":
        return _band_vertex(q, item.word, p)
    return _word_vertex(q, item.word, p, base=getattr(item, "base", None))


def _occ_class_key(q, item, start, length):
    if length == 0:
        return ("e", _occ_vertex(q, item, start))
    return canonical_string_word(_occ_word(item, start, length))


def _e_string(q, item, start, length):
    if length == 0:
        return StringWord(q, (), base=q.vertices[_occ_vertex(q, item, start)])
    return StringWord(q, _occ_word(item, start, length))


def _tops(item, cap):
    q = item.q
    if item.kind == "band":
        return band_occ_positions(q, item.word, True, False, max_len=cap)
    return string_occ_positions(q, item.word, True, False, max_len=cap)


def _bots(item, cap):
    q = item.q
    if item.kind == "band":
        return band_occ_positions(q, item.word, False, True, max_len=cap)
    return string_occ_positions(q, item.word, False, True, max_len=cap)


def _pair_cap(x, y):
    if x.kind == "string":
        return x.length if y.kind == "band" else min(x.length, y.length)
    if y.kind == "string":
        return y.length
    return x.length * y.length


# -- finding reachings ---------------------------------------------------------


def _swinging_arms_ok(top_item, bot_item, top_pos, bot_pos):
    i, j = top_pos
    i2, j2 = bot_pos
    if bot_item.kind == "string":
        if i2 == 1 and top_item.kind == "string" and i == 1:
            return False
        if j2 == bot_item.length + 1 and top_item.kind == "string" and j == top_item.length + 1:
            return False
    return True


def find_pair_reachings(x, y):
    """All reachings from x to y: top substrings of x equal to bottoms of y.

    x and y are items of one quiver; use x == y for two copies of one item.
    """
    q = x.q
    cap = _pair_cap(x, y)
    bots = {}
    for s, length in _bots(y, cap):
        bots.setdefault((length, _occ_class_key(q, y, s, length)), []).append(s)
    out = []
    for s, length in _tops(x, cap):
        key = (length, _occ_class_key(q, x, s, length))
        for s2 in bots.get(key, ()):
            top_pos, bot_pos = (s, s + length), (s2, s2 + length)
            if not _swinging_arms_ok(x, y, top_pos, bot_pos):
                continue
            same = None
            if length:
                same = _occ_word(x, s, length) == _occ_word(y, s2, length)
            out.append(
                Reaching("pair", x, y, top_pos, bot_pos, _e_string(q, x, s, length), same)
            )
    return out


def _classify_auto(item, top_pos, bot_pos):
    i, j = top_pos
    i2, j2 = bot_pos
    if item.kind == "string":
        if (i < i2 <= j < j2) or (i2 < i <= j2 < j):
            return "auto-int"
        return "auto-nonint"
    m = item.length
    length = j - i
    d1 = (i2 - i) % m
    d2 = (i - i2) % m
    left_over = 0 < d1 <= length
    right_over = 0 < d2 <= length
    assert not (left_over and right_over), "band auto-reaching intersecting at both ends"
    return "auto-int" if (left_over or right_over) else "auto-nonint"


def find_auto_reachings(item):
    """Auto-reachings of a single item, classified intersecting or not."""
    q = item.q
    cap = item.length if item.kind == "string" else item.length
    bots = {}
    for s, length in _bots(item, cap):
        bots.setdefault((length, _occ_class_key(q, item, s, length)), []).append(s)
    out = []
    for s, length in _tops(item, cap):
        key = (length, _occ_class_key(q, item, s, length))
        for s2 in bots.get(key, ()):
            top_pos, bot_pos = (s, s + length), (s2, s2 + length)
            if not _swinging_arms_ok(item, item, top_pos, bot_pos):
                continue
            if item.kind == "band":
                assert length <= item.length - 2, "band auto-reaching longer than l(B)-2"
            same = None
            if length:
                same = _occ_word(item, s, length) == _occ_word(item, s2, length)
            kind = _classify_auto(item, top_pos, bot_pos)
            out.append(
                Reaching(kind, item, item, top_pos, bot_pos, _e_string(q, item, s, length), same)
            )
    return out


def find_reachings(d1, d2, allow_same=False):
    """Pair reachings from d1 to d2; with allow_same and
    d1 == d2 the auto-reachings are returned instead of copy-reachings."""
    if allow_same and d1 == d2:
        return find_auto_reachings(d1)
    return find_pair_reachings(d1, d2)


def classify_auto(r):
    if not r.kind.startswith("auto"):
        raise ValueError("not an auto-reaching")
    return "intersecting" if r.kind == "auto-int" else "non-intersecting"


def reaching_from_descriptor(q, desc):
    """Rebuild a Reaching from its move-descriptor dict."""
    from .hvectors import parse_diagramme

    def item_of(serial):
        d = parse_diagramme(q, "{%s}" % serial)
        return d.items[0][0]

    top, bot = (item_of(s) for s in desc["items"])
    i, j, i2, j2 = desc["positions"]
    length = j - i
    same = None
    if length:
        same = _occ_word(top, i, length) == _occ_word(bot, i2, length)
    e_letters, e_base = q.parse_walk(desc["E"])
    E = StringWord(q, e_letters, base=e_base)
    return Reaching(desc["kind"], top, bot, (i, j), (i2, j2), E, same)


# -- deletions -------------------------------------------------------------------


def delete_arrow(item, k):
    """Delete the k-th letter of the canonical representative."""
    q = item.q
    w = item.word
    if not 1 <= k <= len(w):
        raise ValueError(f"position {k} out of range for {item.serial}")
    if item.kind == "string":
        left, right = w[: k - 1], w[k:]
        s1 = StringWord(q, left) if left else StringWord(q, (), base=q.vertices[q.ltgt(w[0])])
        s2 = StringWord(q, right) if right else StringWord(q, (), base=q.vertices[q.lsrc(w[-1])])
        return Diagramme(q, [s1, s2])
    word = w[k:] + w[: k - 1]
    return Diagramme(q, [StringWord(q, word)])


def reduce_nonminimal(b, mult=1):
    """Replace a band power B^t by t*mult copies of its minimal root."""
    root, t = b.minimal_root()
    return Diagramme(b.q, [(root, t * mult)])


# -- pair resolutions --------------------------------------------------------------


def oriented_pair_reps(r):
    """Words and positions for a string-string pair reaching, with the bottom
    host oriented so both occurrences read identically and, for length-0
    reachings, so that both resolution outputs avoid the relations."""
    x, y = r.top_host, r.bot_host
    (i, j), (i2, j2) = r.top_pos, r.bot_pos
    q = x.q
    w1, w2 = x.word, y.word
    if r.length >= 1:
        if w2[i2 - 1 : j2 - 1] == w1[i - 1 : j - 1]:
            return w1, (i, j), w2, (i2, j2)
        i2f, j2f = _flip_string_pos(len(w2), i2, j2)
        w2f = invert_word(w2)
        assert w2f[i2f - 1 : j2f - 1] == w1[i - 1 : j - 1]
        return w1, (i, j), w2f, (i2f, j2f)
    # length-0 occurrence: the splice must join every available arm of one
    # host to an arm of the other (gentleness then leaves a unique valid
    # orientation); an orientation forming fewer joints degenerates.
    candidates = []
    seen = set()
    for w2c, (i2c, j2c) in (
        (w2, (i2, j2)),
        (invert_word(w2), _flip_string_pos(len(w2), i2, j2)),
    ):
        if (w2c, i2c) in seen:
            continue
        seen.add((w2c, i2c))
        o1 = w1[: j - 1] + w2c[j2c - 1 :]
        o2 = w2c[: j2c - 1] + w1[j - 1 :]
        joints = (j > 1 and j2c <= len(w2c)) + (i2c > 1 and j <= len(w1))
        if _valid_word(q, o1) and _valid_word(q, o2):
            key = frozenset(
                (canonical_string_word(o) if o else ("e",)) for o in (o1, o2)
            )
            candidates.append((joints, key, w2c, (i2c, j2c)))
    best = max(joints for joints, _, _, _ in candidates)
    candidates = [c for c in candidates if c[0] == best]
    uniq = {key for _, key, _, _ in candidates}
    assert len(uniq) == 1, f"orientation not unique for reaching {r.descriptor()}"
    _, _, w2c, pos2 = candidates[0]
    return w1, (i, j), w2c, pos2


def resolve_pair(r):
    """Resolution of a reaching between two strings: the crossed concatenations."""
    assert r.kind == "pair" and r.top_host.kind == "string" and r.bot_host.kind == "string"
    q = r.top_host.q
    w1, (i, j), w2, (i2, j2) = oriented_pair_reps(r)
    occ_vertex = _word_vertex(q, w1, j, base=getattr(r.top_host, "base", None))
    o1 = w1[: j - 1] + w2[j2 - 1 :]
    o2 = w2[: j2 - 1] + w1[j - 1 :]
    assert _valid_word(q, o1) and _valid_word(q, o2), "pair resolution invalid on a gentle algebra"
    s1 = StringWord(q, o1) if o1 else StringWord(q, (), base=q.vertices[occ_vertex])
    s2 = StringWord(q, o2) if o2 else StringWord(q, (), base=q.vertices[occ_vertex])
    return Diagramme(q, [s1, s2])


def _band_occ_on_rep(band_word, start, length, flip):
    """Translate a cover occurrence to the inverted representative if flip."""
    if not flip:
        return band_word, start
    m = len(band_word)
    return invert_word(band_word), _flip_band_start(m, start, length)


def resolve_string_band(r):
    """Splice one full band period into the string at the occurrence."""
    assert r.kind == "pair"
    if r.top_host.kind == "band":
        band, (bs, be) = r.top_host, r.top_pos
        string, (ss, se) = r.bot_host, r.bot_pos
    else:
        string, (ss, se) = r.top_host, r.top_pos
        band, (bs, be) = r.bot_host, r.bot_pos
    q = string.q
    m = band.length
    sw = string.word
    length = r.length
    target = sw[ss - 1 : se - 1]
    results = {}
    for flip in (False, True):
        rep, bs_rep = _band_occ_on_rep(band.word, bs, length, flip)
        if length and _cover(rep, bs_rep, length) != target:
            continue
        period = _cover(rep, bs_rep + length, m)
        word = sw[: se - 1] + period + sw[se - 1 :]
        if _valid_word(q, word):
            results[canonical_string_word(word)] = word
    if not results:
        raise AssertionError(f"string-band resolution invalid: {r.descriptor()}")
    assert len(results) == 1, f"string-band orientation ambiguous: {r.descriptor()}"
    word = results.popitem()[1]
    return Diagramme(q, [StringWord(q, word)])


def resolve_band_band(r):
    """Open the second band at its occurrence and splice it into the first.

    Returns the resulting BandWord, not yet reduced to minimal bands.
    """
    assert r.kind == "pair" and r.top_host.kind == "band" and r.bot_host.kind == "band"
    x, y = r.top_host, r.bot_host
    q = x.q
    (xs, xe), (ys, ye) = r.top_pos, r.bot_pos
    length = r.length
    target = _cover(x.word, xs, length)
    x_period = _cover(x.word, xe, x.length)
    results = {}
    for flip in (False, True):
        rep, ys_rep = _band_occ_on_rep(y.word, ys, length, flip)
        if length and _cover(rep, ys_rep, length) != target:
            continue
        word = x_period + _cover(rep, ys_rep + length, y.length)
        band = _try_band(q, word)
        if band is not None:
            results[band.word] = band
    if not results:
        raise AssertionError(f"band-band resolution invalid: {r.descriptor()}")
    assert len(results) == 1, f"band-band orientation ambiguous: {r.descriptor()}"
    return results.popitem()[1]


# -- auto resolutions -----------------------------------------------------------------


def _auto_geometry(r):
    """Normalized (left_pos, right_pos) with the left occurrence first.

    For band hosts the right occurrence is lifted next to the left one in the
    cover, so positions behave like string positions read on the unraveling.
    When the two occurrences overlap, the left one is the overlap's start.
    """
    host = r.top_host
    (i, j), (i2, j2) = r.top_pos, r.bot_pos
    if host.kind == "string":
        return tuple(sorted((r.top_pos, r.bot_pos)))
    m = host.length
    length = j - i
    d1 = (i2 - i) % m
    d2 = (i - i2) % m
    if 0 < d2 <= length:
        return ((i2, j2), (i2 + d2, j2 + d2))
    return ((i, j), (i + d1, j + d1))


def resolve_auto_nonintersecting(r):
    """Committed rule: block swap, else reversal, else band extraction."""
    assert r.kind == "auto-nonint"
    host = r.top_host
    q = host.q
    w = host.word
    (iL, jL), (iR, jR) = _auto_geometry(r)
    length = r.length

    def vertex(p):
        if host.kind == "band":
            return _band_vertex(q, w, p)
        return _word_vertex(q, w, p, base=getattr(host, "base", None))

    def segment(a, b):
        if host.kind == "band":
            return _cover(w, a, b - a)
        return w[a - 1 : b - 1]

    left_word = segment(iL, jL)

    # 1. block swap at the leftmost valid interior occurrence
    if r.same_direction in (True, None):
        for p in range(jL, iR - length + 1):
            cut = p + length
            if cut == jL or p == iR:
                continue
            if length == 0:
                if vertex(p) != vertex(jL):
                    continue
            elif segment(p, p + length) != left_word:
                continue
            a, b = segment(jL, cut), segment(cut, jR)
            if host.kind == "string":
                word = w[: jL - 1] + b + a + w[jR - 1 :]
                if _valid_word(q, word):
                    return Diagramme(q, [StringWord(q, word)]), "block-swap"
            else:
                band = _try_band(q, b + a + segment(jR, jL + host.length))
                if band is not None:
                    return _reduced_diag(band), "block-swap"
    # 2. segment reversal
    if r.same_direction in (False, None):
        if host.kind == "string":
            word = w[: jL - 1] + invert_word(w[jL - 1 : iR - 1]) + w[iR - 1 :]
            if _valid_word(q, word):
                return Diagramme(q, [StringWord(q, word)]), "reversal"
        else:
            for a, b in ((jL, iR), (jR, iL + host.length)):
                mseg = segment(a, b)
                rest = segment(b, a + host.length)
                band = _try_band(q, invert_word(mseg) + rest)
                if band is not None:
                    return _reduced_diag(band), "reversal"
    # 3. band extraction (the same-oriented rewiring, as in the intersecting case)
    if r.same_direction in (True, None):
        out = _extract_band(q, host, w, jL, jR)
        if out is not None:
            return out, "extraction"
    raise ResolutionNonexistent(f"auto-reaching has no valid rewiring: {r.descriptor()}")


def _extract_band(q, host, w, jA, jB):
    seg = _cover(w, jA, jB - jA) if host.kind == "band" else w[jA - 1 : jB - 1]
    if len(seg) < 2:
        return None
    band = _try_band(q, seg)
    if band is None:
        return None
    if host.kind == "band":
        rest = _cover(w, jB, jA + host.length - jB)
        other = _try_band(q, rest)
        if other is None:
            return None
        return _reduced_diag(band, other)
    rest = w[: jA - 1] + w[jB - 1 :]
    if not _valid_word(q, rest):
        return None
    if rest:
        s = StringWord(q, rest)
    else:
        v = _word_vertex(q, w, jA, base=getattr(host, "base", None))
        s = StringWord(q, (), base=q.vertices[v])
    return _reduced_diag(band, extra=[s])


def _reduced_diag(*bands, extra=()):
    q = bands[0].q
    items = list(extra)
    for b in bands:
        root, t = b.minimal_root()
        items.append((root, t))
    return Diagramme(q, items)


def resolve_auto_intersecting(r):
    """{host with the overlap period removed, the extracted band}."""
    assert r.kind == "auto-int"
    host = r.top_host
    q = host.q
    w = host.word
    (i, j), (i2, j2) = _auto_geometry(r)
    assert i < i2 <= j < j2, "intersecting geometry violated"
    assert r.same_direction is not False, "intersecting auto-reaching with opposite orientation"
    period = _cover(w, i, i2 - i) if host.kind == "band" else w[i - 1 : i2 - 1]
    overlap = _cover(w, i, j - i) if host.kind == "band" else w[i - 1 : j - 1]
    reps = {period[k:] + period[:k] for k in range(len(period))}
    extracted = _cover(w, j, j2 - j) if host.kind == "band" else w[j - 1 : j2 - 1]
    assert extracted in reps, "extracted band is not a rotation of the overlap period"
    tiled = (period * (len(overlap) // len(period) + 1))[: len(overlap)]
    assert overlap == tiled, "overlapping occurrence is not periodic"
    band = _try_band(q, extracted)
    assert band is not None, "periodicity consequence failed: extracted word is no band"
    if host.kind == "band":
        rest = _cover(w, j2, j + host.length - j2)
        other = _try_band(q, rest)
        assert other is not None
        return _reduced_diag(band, other)
    rest = w[: j - 1] + w[j2 - 1 :]
    assert _valid_word(q, rest)
    if rest:
        s = StringWord(q, rest)
    else:
        s = StringWord(q, (), base=q.vertices[_word_vertex(q, w, j)])
    return _reduced_diag(band, extra=[s])


# -- multiset-level moves ----------------------------------------------------------------


def _counter(d):
    return {item: mult for item, mult in d.items}


def _build(q, counter, extra_items=()):
    items = [(item, mult) for item, mult in counter.items() if mult > 0]
    items += list(extra_items)
    return Diagramme(q, items)


def resolve_reaching_items(r):
    """Diagramme of the resolution of r between its two host items."""
    kinds = (r.top_host.kind, r.bot_host.kind)
    if r.kind.startswith("auto"):
        if r.kind == "auto-int":
            return resolve_auto_intersecting(r)
        return resolve_auto_nonintersecting(r)[0]
    if kinds == ("string", "string"):
        return resolve_pair(r)
    if "band" in kinds and "string" in kinds:
        return resolve_string_band(r)
    band = resolve_band_band(r)
    return reduce_nonminimal(band)


def resolve_in_multiset(d, r):
    """Resolve a reaching inside a diagramme: consume hosts, add the result."""
    counter = _counter(d)
    if r.kind.startswith("auto"):
        if counter.get(r.top_host, 0) < 1:
            raise ValueError("host item missing from the diagramme")
        counter[r.top_host] -= 1
    else:
        need_two = r.top_host == r.bot_host
        if need_two:
            if counter.get(r.top_host, 0) < 2:
                raise ValueError("copy-reaching needs multiplicity at least 2")
            counter[r.top_host] -= 2
        else:
            for host in (r.top_host, r.bot_host):
                if counter.get(host, 0) < 1:
                    raise ValueError("host item missing from the diagramme")
                counter[host] -= 1
    res = resolve_reaching_items(r)
    return _build(d.q, counter, res.items)


def delete_in_multiset(d, item, k):
    counter = _counter(d)
    if counter.get(item, 0) < 1:
        raise ValueError("item missing from the diagramme")
    counter[item] -= 1
    return _build(d.q, counter, delete_arrow(item, k).items)


def all_moves(d):
    """All one-move neighbors of d, as (low, high, descriptor) edges.

    Deletions give edges (d, above); resolutions give (below, d).  Reachings
    whose committed resolution does not exist are returned separately.
    """
    edges = []
    skipped = []
    items = [item for item, _ in d.items]
    for item, mult in d.items:
        for k in range(1, item.length + 1):
            high = delete_in_multiset(d, item, k)
            desc = {"kind": "delete", "item": item.serial, "position": k}
            edges.append((d, high, desc))
    def add_resolution(r):
        low = resolve_in_multiset(d, r)
        if low == d:
            # a crossing killed by the relations degenerates to the identity
            skipped.append({"diagramme": d.serial, "reaching": r.descriptor(),
                            "reason": "identity"})
            return
        edges.append((low, d, r.descriptor()))

    for x in items:
        for y in items:
            if x == y:
                continue
            for r in find_pair_reachings(x, y):
                add_resolution(r)
    for item, mult in d.items:
        if mult >= 2:
            for r in find_pair_reachings(item, item):
                add_resolution(r)
        for r in find_auto_reachings(item):
            try:
                low = resolve_in_multiset(d, r)
            except ResolutionNonexistent:
                skipped.append({"diagramme": d.serial, "reaching": r.descriptor(),
                                "reason": "nonexistent"})
                continue
            if low == d:
                skipped.append({"diagramme": d.serial, "reaching": r.descriptor(),
                                "reason": "identity"})
                continue
            edges.append((low, d, r.descriptor()))
    dedup = []
    seen = set()
    for low, high, desc in edges:
        key = (low.serial, high.serial, tuple(sorted((k, str(v)) for k, v in desc.items())))
        if key not in seen:
            seen.add(key)
            dedup.append((low, high, desc))
    return dedup, skipped
