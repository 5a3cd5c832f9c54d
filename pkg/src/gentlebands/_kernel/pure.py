"""Pure-Python kernels: exact integer rank and bulk top-substring profiles.

Mirrored by the optional Cython module ``_speedups``; both expose the same
functions with identical semantics.  Words travel as ``bytes`` of letter
codes (arrow*2, +1 for inverses); a lazy string at vertex ``v`` is keyed by
the single byte ``n_letter_codes + v``.
"""

from bisect import bisect_left

BACKEND = "pure"


def bareiss_rank(rows, ncols=None):
    """Rank of an integer matrix, fraction-free Gaussian elimination."""
    a = [list(r) for r in rows]
    m = len(a)
    if not m:
        return 0
    n = len(a[0]) if ncols is None else ncols
    rank = 0
    prev = 1
    row = 0
    for col in range(n):
        piv = -1
        for r in range(row, m):
            if a[r][col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            a[row], a[piv] = a[piv], a[row]
        arow = a[row]
        p = arow[col]
        for r in range(row + 1, m):
            ar = a[r]
            f = ar[col]
            if f:
                for c in range(col + 1, n):
                    ar[c] = (p * ar[c] - f * arow[c]) // prev
                ar[col] = 0
            elif prev != p:
                for c in range(col + 1, n):
                    ar[c] = (p * ar[c]) // prev
        prev = p
        row += 1
        rank += 1
        if row == m:
            break
    return rank


def top_class_profiles(words, support, inv_table, tgt_table, src_table, lazy_base):
    """Count top substrings of each word that fall in the support classes.

    words: list of bytes.  support: dict canonical-key-bytes -> column id.
    inv_table: translate table flipping the inversion bit.  tgt_table and
    src_table map letter code -> vertex index.  lazy_base: code offset for
    lazy-string keys.  Returns one {column: count} dict per word.
    """
    max_sub = 0
    lengths = set()
    for k in support:
        if len(k) > 1 or k[0] < lazy_base:
            max_sub = max(max_sub, len(k))
            lengths.add(len(k))
    out = []
    get = support.get
    for w in words:
        m = len(w)
        counts = {}
        if m == 0:
            out.append(counts)
            continue
        winv = w.translate(inv_table)[::-1]
        starts = [i for i in range(1, m + 2) if i == 1 or not (w[i - 2] & 1)]
        ends = [j for j in range(1, m + 2) if j == m + 1 or (w[j - 1] & 1)]
        for i in starts:
            lo = bisect_left(ends, i)
            for j in ends[lo:]:
                if j == i:
                    v = tgt_table[w[i - 1]] if i <= m else src_table[w[m - 1]]
                    col = get(bytes((lazy_base + v,)))
                elif j - i > max_sub:
                    break
                elif j - i not in lengths:
                    continue
                else:
                    sub = w[i - 1 : j - 1]
                    alt = winv[m - j + 1 : m - i + 1]
                    col = get(sub if sub < alt else alt)
                if col is not None:
                    counts[col] = counts.get(col, 0) + 1
        out.append(counts)
    return out
