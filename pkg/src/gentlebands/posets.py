"""Diagramme enumeration, the move-generated degeneration order, h-order checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .hvectors import EQ, GE, LE, Diagramme, default_l_max, verdict_matrix
from .moves import all_moves
from .words import enumerate_minimal_bands, enumerate_strings


def enumerate_diagrammes(q, dim, bands_only=False):
    """Every multi-set of strings and minimal bands of total dimension dim."""
    dim = tuple(dim)
    items = list(enumerate_minimal_bands(q, dim))
    if not bands_only:
        items = list(enumerate_strings(q, dim)) + items
    out = []
    chosen = []

    def rec(idx, residual):
        if not any(residual):
            out.append(Diagramme(q, list(chosen)))
            return
        if idx == len(items):
            return
        rec(idx + 1, residual)
        it = items[idx]
        d = it.dim
        res = list(residual)
        taken = 0
        while all(res[i] >= d[i] for i in range(len(res))):
            for i in range(len(res)):
                res[i] -= d[i]
            taken += 1
            chosen.append(it)
            rec(idx + 1, tuple(res))
        del chosen[len(chosen) - taken :]

    rec(0, dim)
    return sorted(out, key=lambda dd: dd.serial)


class OrderViolation(AssertionError):
    """A generated degeneration that is not below in the h-order."""


@dataclass
class DegPoset:
    q: object
    dim: tuple
    L_max: object                 # int, or None when the h-order was skipped
    nodes: list                   # canonically sorted diagrammes
    move_edges: dict              # (lo, hi) index pair -> list of descriptors
    closure: set                  # strict reachability pairs (lo, hi)
    hasse: set
    h_verdicts: object            # {(i, j): verdict for i < j} or None
    skipped: list = field(default_factory=list)
    restricted: bool = False

    def index(self, d):
        return self._index[d]

    def __post_init__(self):
        self._index = {d: i for i, d in enumerate(self.nodes)}

    def below(self, i, j):
        return (i, j) in self.closure

    def verdict(self, i, j):
        if self.h_verdicts is None:
            raise ValueError("poset built without h-order verdicts")
        if i == j:
            return EQ
        if i < j:
            return self.h_verdicts[(i, j)]
        v = self.h_verdicts[(j, i)]
        return {LE: GE, GE: LE}.get(v, v)


def _transitive_closure(n, adj):
    closure = set()
    for start in range(n):
        stack = list(adj[start])
        seen = set()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(adj[v])
        for v in seen:
            closure.add((start, v))
    return closure


def _transitive_reduction(edges, closure):
    hasse = set()
    for u, v in edges:
        if any((u, w) in closure and (w, v) in closure for w in {x for _, x in edges}):
            continue
        hasse.add((u, v))
    return hasse


def build_poset(q, dim, L_max=None, bands_only=False, resolutions_only=False,
                with_h=True, node_cap=None):
    """Nodes, one-move edges, closure, Hasse diagram and h-order verdicts."""
    dim = tuple(dim)
    if L_max is None:
        L_max = default_l_max(dim)
    nodes = enumerate_diagrammes(q, dim, bands_only=bands_only)
    if node_cap is not None and len(nodes) > node_cap:
        raise ValueError(f"enumeration budget exceeded: {len(nodes)} > {node_cap} nodes")
    index = {d: i for i, d in enumerate(nodes)}
    move_edges = {}
    skipped = []
    for d in nodes:
        edges, skip = all_moves(d)
        skipped.extend(skip)
        for low, high, desc in edges:
            if resolutions_only and desc.get("kind") == "delete":
                continue
            if bands_only and (low not in index or high not in index):
                continue
            lo, hi = index[low], index[high]
            assert low.dim == high.dim == dim, "move changed the dimension vector"
            move_edges.setdefault((lo, hi), []).append(desc)
    adj = [set() for _ in nodes]
    for lo, hi in move_edges:
        adj[lo].add(hi)
    closure = _transitive_closure(len(nodes), adj)
    for i, j in closure:
        assert (j, i) not in closure, "degeneration order has a 2-cycle"
    hasse = _transitive_reduction(set(move_edges), closure)
    verdicts = None
    if with_h:
        verdicts = verdict_matrix(q, nodes, L_max)
        for (lo, hi) in move_edges:
            i, j = min(lo, hi), max(lo, hi)
            v = verdicts[(i, j)]
            want = LE if (lo, hi) == (i, j) else GE
            if v != want:
                raise OrderViolation(
                    f"move edge {nodes[lo].serial} -> {nodes[hi].serial} "
                    f"is not h-strict (verdict {v})"
                )
    poset = DegPoset(q, dim, L_max if with_h else None, nodes, move_edges,
                     closure, hasse, verdicts, skipped, restricted=bands_only or resolutions_only)
    if not bands_only and not resolutions_only and sum(dim):
        semi = Diagramme(q, [
            (s, dim[vi])
            for vi, s in _simples(q)
            if dim[vi]
        ])
        top = index[semi]
        for i in range(len(nodes)):
            assert i == top or (i, top) in closure, "semisimple diagramme is not the maximum"
    return poset


def _simples(q):
    from .words import StringWord

    return [(vi, StringWord(q, (), base=v)) for vi, v in enumerate(q.vertices)]


def restricted_band_poset(q, dim, node_cap=None):
    """All-band nodes, resolution-generated edges only (no h verdicts)."""
    return build_poset(q, dim, bands_only=True, resolutions_only=True,
                       with_h=False, node_cap=node_cap)


@dataclass
class OrderReport:
    dim: tuple
    L_max: int
    n_nodes: int
    violations: list   # generated pairs that are not strictly below in h
    missing: list      # h-order pairs absent from the generated closure
    skipped: list

    @property
    def coincide(self):
        return not self.violations and not self.missing


def compare_orders(poset):
    """Generated order must embed in the h-order; report the h-only pairs."""
    if poset.h_verdicts is None:
        raise ValueError("poset was built without h verdicts")
    violations = []
    missing = []
    n = len(poset.nodes)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            gen = (i, j) in poset.closure
            v = poset.verdict(i, j)
            h_below = v == LE
            if gen and not h_below:
                violations.append((poset.nodes[i].serial, poset.nodes[j].serial, v))
            elif h_below and not gen:
                missing.append((poset.nodes[i].serial, poset.nodes[j].serial))
    if violations:
        raise OrderViolation(f"generated order not inside the h-order: {violations}")
    return OrderReport(poset.dim, poset.L_max, n, violations, sorted(missing), poset.skipped)


def poset_isomorphic(p1, p2):
    """Exact poset isomorphism by canonical closure invariants (small posets)."""
    n1, n2 = len(p1.nodes), len(p2.nodes)
    if n1 != n2:
        return False

    def profile(p, i):
        down = sum(1 for a, b in p.closure if b == i)
        up = sum(1 for a, b in p.closure if a == i)
        return (down, up)

    prof1 = [profile(p1, i) for i in range(n1)]
    prof2 = [profile(p2, i) for i in range(n2)]
    if sorted(prof1) != sorted(prof2):
        return False
    groups = {}
    for j, pr in enumerate(prof2):
        groups.setdefault(pr, []).append(j)
    slots = [groups[pr] for pr in prof1]

    def backtrack(i, used, assign):
        if i == n1:
            return True
        for j in slots[i]:
            if j in used:
                continue
            ok = True
            for k in range(i):
                if ((k, i) in p1.closure) != ((assign[k], j) in p2.closure):
                    ok = False
                    break
                if ((i, k) in p1.closure) != ((j, assign[k]) in p2.closure):
                    ok = False
                    break
            if ok:
                assign.append(j)
                used.add(j)
                if backtrack(i + 1, used, assign):
                    return True
                assign.pop()
                used.remove(j)
        return False

    return backtrack(0, set(), [])


def subposet(p, keep):
    """The induced subposet on the given node indices."""
    keep = sorted(keep)
    remap = {old: new for new, old in enumerate(keep)}
    sub_closure = {(remap[a], remap[b]) for a, b in p.closure if a in remap and b in remap}
    edges = {(remap[a], remap[b]): v for (a, b), v in p.move_edges.items()
             if a in remap and b in remap}
    return DegPoset(
        p.q, p.dim, p.L_max,
        [p.nodes[i] for i in keep],
        edges,
        sub_closure,
        _transitive_reduction(sub_closure, sub_closure),
        None, p.skipped, restricted=p.restricted,
    )


def upward_closure(p, base):
    keep = set(base)
    for i, j in p.closure:
        if i in keep:
            keep.add(j)
    return keep


def upward_closed_sets(p, size):
    """All upward-closed node sets of the given size (small posets only)."""
    n = len(p.nodes)
    above = {i: {b for a, b in p.closure if a == i} for i in range(n)}
    # maximal elements first, so each node's up-set is decided before it
    order = sorted(range(n), key=lambda i: len(above[i]))

    def rec(k, chosen):
        if len(chosen) == size:
            yield frozenset(chosen)
            return
        if k == n or len(chosen) + (n - k) < size:
            return
        i = order[k]
        if above[i] <= chosen:
            yield from rec(k + 1, chosen | {i})
        yield from rec(k + 1, chosen)

    yield from rec(0, set())


# -- export ---------------------------------------------------------------------


def export_dot(p, show_h=()):
    """GraphViz DOT: plain edges for deletion covers, dashed for resolutions."""
    from .hvectors import h_value

    lines = ["digraph degenerations {", "  rankdir=BT;", '  node [shape=box, fontsize=10];']
    for i, d in enumerate(p.nodes):
        label = d.serial
        if show_h:
            vals = ",".join(str(h_value(d, sw)) for sw in show_h)
            label += f"\\nh=({vals})"
        lines.append(f'  n{i} [label="{label}"];')
    for lo, hi in sorted(p.hasse):
        descs = p.move_edges.get((lo, hi), [])
        kinds = {dd["kind"] for dd in descs}
        style = ' [style=dashed]' if kinds and kinds != {"delete"} else ""
        lines.append(f"  n{lo} -> n{hi}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(p):
    data = {
        "algebra": p.q.to_dict(),
        "dim": list(p.dim),
        "L_max": p.L_max,
        "restricted": p.restricted,
        "nodes": [d.serial for d in p.nodes],
        "move_edges": [
            {"low": lo, "high": hi, "descriptors": descs}
            for (lo, hi), descs in sorted(p.move_edges.items())
        ],
        "closure": sorted(map(list, p.closure)),
        "hasse": sorted(map(list, p.hasse)),
        "h_discrepancies": None,
        "skipped_resolutions": p.skipped,
    }
    if p.h_verdicts is not None:
        report = compare_orders(p)
        data["h_discrepancies"] = report.missing
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def import_json(q, text):
    from .hvectors import parse_diagramme

    data = json.loads(text)
    nodes = [parse_diagramme(q, s) for s in data["nodes"]]
    move_edges = {
        (e["low"], e["high"]): e["descriptors"] for e in data["move_edges"]
    }
    return DegPoset(
        q, tuple(data["dim"]), data["L_max"], nodes, move_edges,
        {tuple(x) for x in data["closure"]},
        {tuple(x) for x in data["hasse"]},
        None, data.get("skipped_resolutions", []),
        restricted=data.get("restricted", False),
    )
