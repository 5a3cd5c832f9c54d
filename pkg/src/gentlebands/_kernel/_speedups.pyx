# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: exact integer rank and bulk top-substring profiles.

Semantics identical to the pure module; words are bytes of letter codes.
"""

BACKEND = "compiled"


def bareiss_rank(rows, ncols=None):
    """Rank of an integer matrix, fraction-free Gaussian elimination.

    Entries stay Python ints (they grow without bound); the win over the pure
    version is loop and indexing overhead only.
    """
    cdef Py_ssize_t m, n, row, col, r, c, piv
    a = [list(rr) for rr in rows]
    m = len(a)
    if m == 0:
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


def top_class_profiles(words, support, bytes inv_table, tgt_table, src_table, int lazy_base):
    """Count top substrings of each word that land in the support classes.

    Support keys are canonical (minimal under reverse-inversion), so a window
    matches through either its own spelling or the reverse-inverted one; the
    per-length occupancy table skips windows without allocating slices.
    """
    cdef Py_ssize_t m, i, j, si, ei, jj, n_starts, n_ends, max_sub, L
    cdef int v
    cdef const unsigned char[:] wv
    cdef bytes w, winv, sub, alt
    cdef unsigned char[256] len_ok
    for i in range(256):
        len_ok[i] = 0
    max_sub = 0
    for k in support:
        L = len(k)
        if L > 1 or (<bytes>k)[0] < lazy_base:
            if L < 256:
                len_ok[L] = 1
            if L > max_sub:
                max_sub = L
    out = []
    get = support.get
    cdef list starts, ends
    tgt = list(tgt_table)
    src = list(src_table)
    lazy_keys = [bytes((lazy_base + v,)) for v in range(256 - lazy_base)]
    for w in words:
        m = len(w)
        counts = {}
        if m == 0:
            out.append(counts)
            continue
        winv = w.translate(inv_table)[::-1]
        wv = w
        starts = [1]
        for i in range(2, m + 2):
            if not (wv[i - 2] & 1):
                starts.append(i)
        ends = []
        for j in range(1, m + 1):
            if wv[j - 1] & 1:
                ends.append(j)
        ends.append(m + 1)
        n_starts = len(starts)
        n_ends = len(ends)
        ei = 0
        for si in range(n_starts):
            i = starts[si]
            while ei < n_ends and ends[ei] < i:
                ei += 1
            for jj in range(ei, n_ends):
                j = ends[jj]
                L = j - i
                if L == 0:
                    v = tgt[wv[i - 1]] if i <= m else src[wv[m - 1]]
                    col = get(lazy_keys[v])
                elif L > max_sub:
                    break
                else:
                    if not len_ok[L]:
                        continue
                    sub = w[i - 1 : j - 1]
                    col = get(sub)
                    if col is None:
                        alt = winv[m - j + 1 : m - i + 1]
                        if alt != sub:
                            col = get(alt)
                if col is not None:
                    counts[col] = counts.get(col, 0) + 1
        out.append(counts)
    return out
