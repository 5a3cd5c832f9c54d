"""Benchmark the compiled kernel against the pure-Python fallback.

Two workloads: bulk top-substring classification (the h-vector batch engine)
and fraction-free integer rank (the intertwiner oracle).  Run from the
repository root after `python setup.py build_ext --inplace`:

    python benchmarks/bench_kernels.py [max_len]
"""

import random
import sys
import time

from gentlebands import Quiver
from gentlebands._kernel import backends
from gentlebands.hvectors import _kernel_tables, all_string_word_bytes, h_prime_vector, string_key_bytes
from gentlebands.posets import enumerate_diagrammes


def bench_profiles(max_len):
    glued = Quiver(
        ["1", "2", "3"],
        [("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3"), ("d", "2", "3")],
        relations=[("c", "a"), ("d", "b")],
    )
    words = all_string_word_bytes(glued, max_len)
    support = {}
    for d in enumerate_diagrammes(glued, (1, 2, 1)):
        for sw in h_prime_vector(d, max_len).entries:
            support.setdefault(string_key_bytes(sw), len(support))
    trans, tgt, src = _kernel_tables(glued)
    windows = 0
    rows = {}
    for name, impl in sorted(backends().items()):
        t0 = time.time()
        profs = impl.top_class_profiles(words, support, trans, tgt, src, glued.n_letters)
        elapsed = time.time() - t0
        windows = sum(len(p) for p in profs)
        rows[name] = elapsed
    print(f"top_class_profiles: {len(words)} strings (max_len={max_len}), "
          f"{len(support)} support classes, {windows} hits")
    _table(rows)
    return rows


def bench_rank(size, count):
    rng = random.Random(0)
    mats = [
        [[rng.randint(-9, 9) for _ in range(size)] for _ in range(size)]
        for _ in range(count)
    ]
    rows = {}
    for name, impl in sorted(backends().items()):
        t0 = time.time()
        total = 0
        for mat in mats:
            total += impl.bareiss_rank([r[:] for r in mat])
        rows[name] = time.time() - t0
    print(f"bareiss_rank: {count} random {size}x{size} integer matrices")
    _table(rows)
    return rows


def _table(rows):
    base = rows.get("pure")
    for name in sorted(rows):
        speedup = f"  ({base / rows[name]:.1f}x vs pure)" if base and name != "pure" else ""
        print(f"  {name:<10} {rows[name]:8.3f}s{speedup}")
    print()


if __name__ == "__main__":
    max_len = int(sys.argv[1]) if len(sys.argv) > 1 else 24
    found = backends()
    print(f"available backends: {', '.join(sorted(found))}\n")
    bench_profiles(max_len)
    bench_rank(12, 200)
    bench_rank(24, 40)
