"""Hom-dimension counts, h- and h'-vectors, rank functions.

A diagramme's h-vector lists hom(M(C), M) over canonical strings C up to a
truncation length; h' counts bottom-substring occurrences.  The two determine
each other through top-substring sums, which is what the kernel batch
computes when many strings are involved.
"""

from __future__ import annotations

from collections import Counter

from . import _kernel
from .words import (
    BandWord,
    StringWord,
    bottom_substrings,
    invert_word,
    top_substrings,
)

EQ, LE, GE, INC = "equal", "le", "ge", "incomparable"


class InconsistentHVector(ValueError):
    """An h-vector whose h'-recursion produces a negative count."""


def default_l_max(dim):
    return sum(dim) ** 2


# -- diagrammes --------------------------------------------------------------


class Diagramme:
    """Multi-set of strings and minimal bands with its dimension vector."""

    __slots__ = ("q", "items", "dim")

    def __init__(self, q, items):
        counter = {}
        for entry in items:
            item, mult = entry if isinstance(entry, tuple) else (entry, 1)
            if mult < 1:
                raise ValueError("multiplicities are positive")
            if item.kind == "band" and not item.minimal:
                raise ValueError(f"non-minimal band {item.serial} in a diagramme")
            counter[item] = counter.get(item, 0) + mult
        self.q = q
        self.items = tuple(sorted(counter.items(), key=lambda kv: kv[0].sort_key()))
        dim = [0] * len(q.vertices)
        for item, mult in self.items:
            for i, d in enumerate(item.dim):
                dim[i] += mult * d
        self.dim = tuple(dim)

    @property
    def serial(self):
        parts = []
        for item, mult in self.items:
            parts.append(item.serial + (f"^x{mult}" if mult > 1 else ""))
        return "{" + ", ".join(parts) + "}"

    def total_mult(self):
        return sum(m for _, m in self.items)

    def union(self, other):
        return Diagramme(self.q, list(self.items) + list(other.items))

    def __eq__(self, other):
        return isinstance(other, Diagramme) and self.items == other.items and self.q == other.q

    def __hash__(self):
        return hash(self.items)

    def __repr__(self):
        return f"Diagramme({self.serial})"


def parse_diagramme(q, text):
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"diagramme must be brace-delimited: {text!r}")
    body = text[1:-1].strip()
    items = []
    if body:
        for part in body.split(","):
            part = part.strip()
            mult = 1
            if "^x" in part:
                part, m = part.rsplit("^x", 1)
                mult = int(m)
            if part.startswith("(") and part.endswith(")"):
                letters, _ = q.parse_walk(part[1:-1])
                items.append((BandWord(q, letters), mult))
            else:
                letters, base = q.parse_walk(part)
                items.append((StringWord(q, letters, base=base), mult))
    return Diagramme(q, items)


# -- class keys and kernel plumbing -----------------------------------------


def string_key_bytes(sw):
    if sw.word:
        return bytes(sw.word)
    return bytes((sw.q.n_letters + sw.base,))


def class_key_bytes(q, key):
    """bytes form of a Substring.class_key()."""
    if isinstance(key, tuple) and key and key[0] == "e":
        return bytes((q.n_letters + key[1],))
    return bytes(key)


def string_from_key_bytes(q, key):
    if len(key) == 1 and key[0] >= q.n_letters:
        return StringWord(q, (), base=q.vertices[key[0] - q.n_letters])
    return StringWord(q, tuple(key))


_TABLES = {}


def _kernel_tables(q):
    if q not in _TABLES:
        trans = bytearray(range(256))
        for c in range(q.n_letters):
            trans[c] = c ^ 1
        _TABLES[q] = (
            bytes(trans),
            [q.ltgt(c) for c in range(q.n_letters)],
            [q.lsrc(c) for c in range(q.n_letters)],
        )
    return _TABLES[q]


_WORDS_CACHE = {}


def all_string_word_bytes(q, max_len):
    """Canonical nonempty string words as bytes, plus implicit lazies."""
    key = (q, max_len)
    if key in _WORDS_CACHE:
        return _WORDS_CACHE[key]
    found = set()
    n = q.n_letters

    def walk(word):
        found.add(bytes(min(word, invert_word(word))))
        if len(word) >= max_len:
            return
        last = word[-1]
        for y in range(n):
            if q.valid_follow(last, y):
                walk(word + (y,))

    if max_len >= 1:
        for x in range(n):
            walk((x,))
    result = sorted(found, key=lambda b: (len(b), b))
    _WORDS_CACHE[key] = result
    return result


# -- h' ----------------------------------------------------------------------


def item_bottom_class_counts(item, max_len):
    cap = min(item.length, max_len) if item.kind == "string" else max_len
    counts = Counter()
    for occ in bottom_substrings(item, max_len=cap):
        counts[occ.class_key()] += 1
    return counts


def item_top_class_counts(item, max_len):
    cap = min(item.length, max_len) if item.kind == "string" else max_len
    counts = Counter()
    for occ in top_substrings(item, max_len=cap):
        counts[occ.class_key()] += 1
    return counts


class HPrimeVector:
    __slots__ = ("L_max", "entries")

    def __init__(self, L_max, entries):
        self.L_max = L_max
        self.entries = dict(entries)

    def get(self, sw):
        return self.entries.get(sw, 0)

    def __eq__(self, other):
        return (
            isinstance(other, type(self))
            and self.L_max == other.L_max
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.L_max, frozenset(self.entries.items())))

    def to_json(self):
        items = sorted(self.entries.items(), key=lambda kv: kv[0].sort_key())
        return {"L_max": self.L_max, "entries": {sw.serial: v for sw, v in items}}


class HVector(HPrimeVector):
    pass


def h_prime_vector(d, L_max=None):
    """Bottom-substring class counts of the diagramme, truncated at L_max."""
    if L_max is None:
        L_max = default_l_max(d.dim)
    total = Counter()
    for item, mult in d.items:
        for key, cnt in item_bottom_class_counts(item, L_max).items():
            total[key] += mult * cnt
    q = d.q
    entries = {}
    for key, cnt in total.items():
        entries[string_from_key_bytes(q, class_key_bytes(q, key))] = cnt
    return HPrimeVector(L_max, entries)


# -- hom counts ---------------------------------------------------------------


def _as_item_quasi(x):
    if isinstance(x, tuple):
        item, quasi = x
    else:
        item, quasi = x, 1
    power = 1
    if item.kind == "band" and not item.minimal:
        item, power = item.minimal_root()
    return item, quasi, power


def hom_dim(x, y, same_parameter=False):
    """dim Hom(M(x), M(y)) by substring counting (Krause basis).

    x and y are StringWord, BandWord, or (BandWord, quasi_length).  For two
    copies of one band, same_parameter tells whether the scalar parameters
    agree, which adds the endomorphism-type summand min(q, q').
    """
    xi, qx, tx = _as_item_quasi(x)
    yi, qy, ty = _as_item_quasi(y)
    if xi.kind == "string":
        cap = xi.length
        if yi.kind == "string":
            cap = min(cap, yi.length)
    elif yi.kind == "string":
        cap = yi.length
    else:
        cap = xi.length * yi.length
    tops = item_top_class_counts(xi, cap)
    bots = item_bottom_class_counts(yi, cap)
    pairs = sum(cnt * bots[key] for key, cnt in tops.items() if key in bots)
    total = pairs * qx * qy * tx * ty
    if same_parameter:
        if not (xi.kind == "band" and yi.kind == "band" and xi == yi and tx == ty == 1):
            raise ValueError("same_parameter needs two copies of one minimal band")
        total += min(qx, qy)
    return total


def h_value(d, sw):
    """Single h-vector entry hom(M(sw), M(d)), quasi-length 1 on bands."""
    return sum(mult * hom_dim(sw, item) for item, mult in d.items)


# -- h-vectors via the kernel -------------------------------------------------


def _support_and_values(q, hprimes):
    support = {}
    owners = []
    for di, hp in enumerate(hprimes):
        for sw, val in hp.entries.items():
            key = string_key_bytes(sw)
            col = support.setdefault(key, len(support))
            if col == len(owners):
                owners.append([])
            owners[col].append((di, val))
    return support, owners


def _profiles(q, words, support):
    trans, tgt, src = _kernel_tables(q)
    return _kernel.top_class_profiles(words, support, trans, tgt, src, q.n_letters)


def h_vector(d, L_max=None):
    """The h-vector of a diagramme: hom(M(C), M(d)) over strings C, |C| <= L_max."""
    if L_max is None:
        L_max = default_l_max(d.dim)
    hp = h_prime_vector(d, L_max)
    support, owners = _support_and_values(d.q, [hp])
    q = d.q
    words = all_string_word_bytes(q, L_max)
    entries = {}
    for w, prof in zip(words, _profiles(q, words, support)):
        val = 0
        for col, cnt in prof.items():
            val += cnt * owners[col][0][1]
        if val:
            entries[string_from_key_bytes(q, w)] = val
    for sw, val in hp.entries.items():
        if sw.length == 0:
            entries[sw] = val
    return HVector(L_max, entries)


def h_from_hprime(hp):
    """Reconstruct h from h' by summing h' over top substrings."""
    sample = next(iter(hp.entries), None)
    if sample is None:
        return HVector(hp.L_max, {})
    q = sample.q
    support, owners = _support_and_values(q, [hp])
    words = all_string_word_bytes(q, hp.L_max)
    entries = {}
    for w, prof in zip(words, _profiles(q, words, support)):
        val = sum(cnt * owners[col][0][1] for col, cnt in prof.items())
        if val:
            entries[string_from_key_bytes(q, w)] = val
    for sw, val in hp.entries.items():
        if sw.length == 0:
            entries[sw] = val
    return HVector(hp.L_max, entries)


def hprime_from_h(h):
    """Invert h -> h' by the inductive top-substring recursion."""
    q = None
    by_len = {}
    for sw, val in h.entries.items():
        q = sw.q
        by_len.setdefault(sw.length, []).append((sw, val))
    entries = {}
    if q is None:
        return HPrimeVector(h.L_max, entries)
    support = {}
    vals = []
    for length in sorted(by_len):
        batch = by_len[length]
        words = [string_key_bytes(sw) if sw.length else b"" for sw, _ in batch]
        profs = _profiles(q, words, support)
        new = []
        for (sw, hval), prof in zip(batch, profs):
            t = sum(cnt * vals[col] for col, cnt in prof.items())
            rest = hval - t
            if rest < 0:
                raise InconsistentHVector(
                    f"negative h' at {sw.serial}: h={hval}, shorter tops give {t}"
                )
            if rest:
                entries[sw] = rest
                new.append((sw, rest))
        for sw, rest in new:
            support[string_key_bytes(sw)] = len(vals)
            vals.append(rest)
    return HPrimeVector(h.L_max, entries)


def roundtrip_all(q, diagrammes, L_max):
    """For each diagramme, check that the h' recursion applied to its
    h-vector recovers its bottom-substring counts exactly.

    One shared kernel pass over all strings serves every diagramme; strings
    are processed in increasing length so the recursion is well-founded.
    Returns a list of booleans.
    """
    hps = [h_prime_vector(d, L_max) for d in diagrammes]
    support, owners = _support_and_values(q, hps)
    keys = [None] * len(support)
    for key, col in support.items():
        keys[col] = key
    col_len = [0 if (len(k) == 1 and k[0] >= q.n_letters) else len(k) for k in keys]
    true_by_col = [dict() for _ in diagrammes]
    for col, lst in enumerate(owners):
        for di, val in lst:
            true_by_col[di][col] = val
    nd = len(diagrammes)
    recovered = [dict() for _ in range(nd)]          # word/lazy key -> value
    rec_owners = [dict() for _ in range(len(keys))]  # col -> {di: recovered value}
    failed = [False] * nd
    # length-0 base case: h' at a lazy equals h there
    for vi in range(len(q.vertices)):
        key = bytes((q.n_letters + vi,))
        col = support.get(key)
        if col is None:
            continue
        for di, val in owners[col]:
            recovered[di][key] = val
            rec_owners[col][di] = val
    words = all_string_word_bytes(q, L_max)
    for w, prof in zip(words, _profiles(q, words, support)):
        if not prof:
            continue
        m = len(w)
        hacc = {}
        tacc = {}
        own_col = support.get(w)
        for col, cnt in prof.items():
            for di, val in owners[col]:
                hacc[di] = hacc.get(di, 0) + cnt * val
            if col_len[col] < m:
                for di, rv in rec_owners[col].items():
                    tacc[di] = tacc.get(di, 0) + cnt * rv
        for di in set(hacc) | set(tacc):
            if failed[di]:
                continue
            rest = hacc.get(di, 0) - tacc.get(di, 0)
            if rest < 0:
                failed[di] = True
            elif rest:
                recovered[di][w] = rest
                if own_col is not None:
                    rec_owners[own_col][di] = rest
    out = []
    for di in range(nd):
        if failed[di]:
            out.append(False)
            continue
        truth = {keys[col]: val for col, val in true_by_col[di].items()}
        out.append(recovered[di] == truth)
    return out


def roundtrip_consistent(d, L_max):
    """Check hprime_from_h(h_vector(d)) == h_prime_vector(d), batched form."""
    return roundtrip_all(d.q, [d], L_max)[0]


# -- comparisons ---------------------------------------------------------------


def h_compare(a, b):
    if a.L_max != b.L_max:
        raise ValueError("h-vectors truncated at different lengths")
    le = ge = True
    for key in set(a.entries) | set(b.entries):
        x, y = a.get(key), b.get(key)
        if x < y:
            ge = False
        elif x > y:
            le = False
        if not (le or ge):
            return INC
    if le and ge:
        return EQ
    return LE if le else GE


def verdict_matrix(q, diagrammes, L_max):
    """Pairwise h-order verdicts for a family of diagrammes at one L_max.

    Returns {(i, j): verdict} for i < j, where LE means h(i) <= h(j).
    """
    import numpy as np

    nd = len(diagrammes)
    hprimes = [h_prime_vector(d, L_max) for d in diagrammes]
    support, owners = _support_and_values(q, hprimes)
    words = all_string_word_bytes(q, L_max)
    nv = len(q.vertices)
    m = np.zeros((len(words) + nv, nd), dtype=np.int64)
    rows, cols, cnts = [], [], []
    for row, prof in enumerate(_profiles(q, words, support)):
        for col, cnt in prof.items():
            rows.append(row)
            cols.append(col)
            cnts.append(cnt)
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    cnts = np.asarray(cnts, dtype=np.int64)
    for col in range(len(owners)):
        sel = cols == col
        if not sel.any():
            continue
        r, c = rows[sel], cnts[sel]
        for di, val in owners[col]:
            np.add.at(m[:, di], r, c * val)
    for vi in range(nv):
        lazy = StringWord(q, (), base=q.vertices[vi])
        for di, hp in enumerate(hprimes):
            m[len(words) + vi, di] = hp.get(lazy)
    out = {}
    for i in range(nd):
        for j in range(i + 1, nd):
            le = bool((m[:, i] <= m[:, j]).all())
            ge = bool((m[:, i] >= m[:, j]).all())
            out[(i, j)] = EQ if le and ge else LE if le else GE if ge else INC
    return out


# -- projectives and rank functions -------------------------------------------


def arrow_avoid_path(q, arrow_name):
    """rho_a: the longest relation-free path in Q from s(a) avoiding a."""
    a_idx = q.arrow_index[arrow_name]
    start = q.arrows[a_idx].source
    first = [
        x for x in q.arrows if x.source == start and x.name != arrow_name
    ]
    assert len(first) <= 1, "gentle quiver has at most two arrows out of a vertex"
    if not first:
        return ()
    path = [first[0].name]  # traversal order, source side first
    while True:
        last = path[-1]
        nxt = [
            x.name
            for x in q.arrows
            if x.source == q.arrows[q.arrow_index[last]].target
            and (x.name, last) not in q.relations
        ]
        assert len(nxt) <= 1
        if not nxt:
            break
        path.append(nxt[0])
    return tuple(q.letter(name) for name in reversed(path))


def projective_string(q, vertex):
    """The string rho_i with M(rho_i) = P_i, built from the rho_a paths."""
    outs = [a.name for a in q.arrows if a.source == vertex]
    if not outs:
        return StringWord(q, (), base=vertex)
    if len(outs) == 1:
        w = arrow_avoid_path(q, outs[0])
        return StringWord(q, w) if w else StringWord(q, (), base=vertex)
    wa = arrow_avoid_path(q, outs[0])
    wb = arrow_avoid_path(q, outs[1])
    word = wa + invert_word(wb)
    return StringWord(q, word) if word else StringWord(q, (), base=vertex)


def rho_a_string(q, arrow_name):
    w = arrow_avoid_path(q, arrow_name)
    if w:
        return StringWord(q, w)
    return StringWord(q, (), base=q.arrows[q.arrow_index[arrow_name]].source)


def rank_function(d):
    """Per-arrow generic rank of modules in the family of d."""
    ranks = {}
    for a in d.q.arrows:
        hi = h_value(d, projective_string(d.q, a.source))
        lo = h_value(d, rho_a_string(d.q, a.name))
        ranks[a.name] = hi - lo
    return ranks


def maximal_rank_functions(diagrammes):
    """The input diagrammes whose rank function is entrywise maximal."""
    if not diagrammes:
        return []
    names = [a.name for a in diagrammes[0].q.arrows]
    ranks = [rank_function(d) for d in diagrammes]
    out = []
    for i, ri in enumerate(ranks):
        dominated = any(
            j != i
            and all(ranks[j][n] >= ri[n] for n in names)
            and any(ranks[j][n] > ri[n] for n in names)
            for j in range(len(ranks))
        )
        if not dominated:
            out.append(diagrammes[i])
    return out
