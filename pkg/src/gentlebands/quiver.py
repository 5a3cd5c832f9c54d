"""Quivers with length-two monomial relations and gentle-algebra validation.

A quiver is immutable once constructed.  Letters of the double quiver are
encoded as small integers: arrow number ``k`` gives the direct letter ``2*k``
and its formal inverse ``2*k + 1``.  Walks are tuples of letter codes read
left to right, target side first (composition order: the rightmost letter is
traversed first when walking from the source).
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class QuiverError(ValueError):
    """Structurally invalid quiver data."""


class WalkError(ValueError):
    """Letter sequence that does not form a reduced relation-free walk."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class GentleReport:
    ok: bool
    failures: tuple  # (axiom, location, message) triples

    def first_failure(self):
        return self.failures[0] if self.failures else None


def _check(cond, axiom, location, message, failures):
    if not cond:
        failures.append((axiom, location, message))


class Quiver:
    """A quiver plus a set of zero relations of length two.

    ``relations`` entries are pairs ``(second, first)`` of arrow names: the
    path "first, then second" is zero.  Vertex and arrow ids are arbitrary
    strings kept in input order; that order fixes dimension-vector indexing
    and all canonical forms.
    """

    def __init__(self, vertices, arrows, relations=()):
        self.vertices = tuple(vertices)
        self.arrows = tuple(
            a if isinstance(a, Arrow) else Arrow(*a) for a in arrows
        )
        self.relations = frozenset((str(s), str(f)) for s, f in relations)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        for a in self.arrows:
            if a.source not in self.vertex_index or a.target not in self.vertex_index:
                raise QuiverError(f"arrow {a.name} has unknown endpoint")
        for second, first in self.relations:
            if second not in self.arrow_index or first not in self.arrow_index:
                raise QuiverError(f"relation ({second},{first}) names unknown arrow")
            f, s = self.arrows[self.arrow_index[first]], self.arrows[self.arrow_index[second]]
            if f.target != s.source:
                raise QuiverError(
                    f"relation ({second},{first}) is not composable: "
                    f"target({first})={f.target} != source({second})={s.source}"
                )
        self.n_letters = 2 * len(self.arrows)
        # letter -> vertex index tables
        self._ltgt = []
        self._lsrc = []
        for a in self.arrows:
            s, t = self.vertex_index[a.source], self.vertex_index[a.target]
            self._ltgt += [t, s]   # direct, inverse
            self._lsrc += [s, t]
        # length-two factors of I^{+-}, as ordered letter-code pairs (c_i, c_{i+1})
        forbidden = set()
        for second, first in self.relations:
            s2 = 2 * self.arrow_index[second]
            f2 = 2 * self.arrow_index[first]
            forbidden.add((s2, f2))            # v u  (both direct)
            forbidden.add((f2 + 1, s2 + 1))    # u- v- (both inverse)
        self._forbidden_pairs = frozenset(forbidden)
        self._key = (self.vertices, self.arrows, self.relations)

    def __eq__(self, other):
        return isinstance(other, Quiver) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows, {len(self.relations)} relations)"

    # -- letters ---------------------------------------------------------

    def letter(self, name, inverse=False):
        if name not in self.arrow_index:
            raise QuiverError(f"unknown arrow {name!r}")
        return 2 * self.arrow_index[name] + (1 if inverse else 0)

    def letter_inverse(self, code):
        self._check_code(code)
        return code ^ 1

    def letter_source(self, code):
        self._check_code(code)
        return self.vertices[self._lsrc[code]]

    def letter_target(self, code):
        self._check_code(code)
        return self.vertices[self._ltgt[code]]

    def letter_name(self, code):
        self._check_code(code)
        return self.arrows[code >> 1].name + ("-" if code & 1 else "")

    def is_direct(self, code):
        return not (code & 1)

    def _check_code(self, code):
        if not 0 <= code < self.n_letters:
            raise QuiverError(f"letter code {code} out of range")

    # vertex indices, used by the word machinery
    def ltgt(self, code):
        return self._ltgt[code]

    def lsrc(self, code):
        return self._lsrc[code]

    # -- walks -----------------------------------------------------------

    def valid_follow(self, x, y):
        """Can letter y follow letter x inside a walk (read left to right)?"""
        if self._ltgt[y] != self._lsrc[x]:
            return False
        if y == (x ^ 1):
            return False
        return (x, y) not in self._forbidden_pairs

    def is_valid_walk(self, letters, base=None):
        """True iff the letter codes form a reduced relation-free walk.

        Raises WalkError when consecutive letters do not even compose, which
        is a different failure from a composable-but-forbidden factor.
        """
        letters = tuple(letters)
        if not letters:
            if base is None or base not in self.vertex_index:
                raise WalkError("empty walk needs a basepoint vertex")
            return True
        for x, y in zip(letters, letters[1:]):
            if self._ltgt[y] != self._lsrc[x]:
                raise WalkError(
                    f"letters {self.letter_name(x)},{self.letter_name(y)} do not compose"
                )
        for x, y in zip(letters, letters[1:]):
            if y == (x ^ 1) or (x, y) in self._forbidden_pairs:
                return False
        return True

    def walk_vertices(self, letters, base=None):
        """Vertex indices visited by the walk, length len(letters)+1."""
        if not letters:
            return (self.vertex_index[base],)
        return tuple(self._ltgt[c] for c in letters) + (self._lsrc[letters[-1]],)

    def walk_dim(self, letters, base=None):
        dim = [0] * len(self.vertices)
        for v in self.walk_vertices(letters, base):
            dim[v] += 1
        return tuple(dim)

    # -- serialization ---------------------------------------------------

    def format_walk(self, letters, base=None):
        if not letters:
            return f"e_{base}"
        return ".".join(self.letter_name(c) for c in letters)

    def parse_walk(self, text):
        """Parse "b.a-.b" or "e_1"; returns (letters tuple, base vertex)."""
        text = text.strip()
        if text.startswith("e_"):
            v = text[2:]
            if v not in self.vertex_index:
                raise WalkError(f"unknown vertex {v!r} in {text!r}")
            return (), v
        letters = []
        for tok in text.split("."):
            inv = tok.endswith("-")
            name = tok[:-1] if inv else tok
            letters.append(self.letter(name, inv))
        return tuple(letters), None

    def walk_from_names(self, names, cyclic=False):
        """Resolve a bare arrow-name list into a walk by choosing inversions.

        Every assignment of inversion marks is tried; those forming a valid
        walk (wrap-valid when cyclic) are kept up to string / cyclic-word
        equivalence.  A unique class must survive, otherwise the list is
        ambiguous and rejected.
        """
        from . import words  # local import, avoids a cycle

        if not names:
            raise WalkError("empty letter list")
        survivors = set()
        for mask in range(1 << len(names)):
            letters = tuple(
                self.letter(name, bool(mask >> i & 1)) for i, name in enumerate(names)
            )
            ok = all(self.valid_follow(x, y) for x, y in zip(letters, letters[1:]))
            if ok and cyclic:
                ok = self.valid_follow(letters[-1], letters[0])
            if ok:
                if cyclic:
                    survivors.add(words.canonical_band_word(letters))
                else:
                    survivors.add(words.canonical_string_word(letters))
        if not survivors:
            raise WalkError(f"no valid inversion assignment for {names}")
        if len(survivors) > 1:
            pretty = sorted(self.format_walk(w) for w in survivors)
            raise WalkError(f"ambiguous letter list {names}: candidates {pretty}")
        return survivors.pop()

    # -- gentleness ------------------------------------------------------

    def validate_gentle(self):
        """Check the four gentleness axioms plus finite-dimensionality."""
        failures = []
        indeg = {v: [] for v in self.vertices}
        outdeg = {v: [] for v in self.vertices}
        for a in self.arrows:
            outdeg[a.source].append(a.name)
            indeg[a.target].append(a.name)
        for v in self.vertices:
            _check(len(indeg[v]) <= 2, "degree", v,
                   f"vertex {v} has {len(indeg[v])} incoming arrows", failures)
            _check(len(outdeg[v]) <= 2, "degree", v,
                   f"vertex {v} has {len(outdeg[v])} outgoing arrows", failures)
        # relations were already checked composable+length 2 structurally
        for v in self.vertices:
            ins, outs = indeg[v], outdeg[v]
            if len(ins) == 2:
                a, b = ins
                for c in outs:
                    hits = sum(1 for x in (a, b) if (c, x) in self.relations)
                    _check(hits == 1, "exclusive-in", v,
                           f"arrows {a},{b} into {v}: exactly one of {c}{a}, {c}{b} must be a relation (found {hits})",
                           failures)
            if len(outs) == 2:
                a, b = outs
                for c in ins:
                    hits = sum(1 for x in (a, b) if (x, c) in self.relations)
                    _check(hits == 1, "exclusive-out", v,
                           f"arrows {a},{b} out of {v}: exactly one of {a}{c}, {b}{c} must be a relation (found {hits})",
                           failures)
        if not self._connected():
            failures.append(("connected", None, "quiver is not connected"))
        if not self.is_finite_dimensional():
            failures.append(("finite-dimensional", None,
                             "relation-free cycle: the algebra is infinite-dimensional"))
        return GentleReport(ok=not failures, failures=tuple(failures))

    def is_finite_dimensional(self):
        """True iff no directed cycle avoids the relations."""
        # graph on arrows: u -> w when the path "u then w" (word w.u) survives
        nxt = {
            u.name: [
                w.name
                for w in self.arrows
                if w.source == u.target and (w.name, u.name) not in self.relations
            ]
            for u in self.arrows
        }
        color = {}  # 1 in progress, 2 done

        def dfs(u):
            color[u] = 1
            for w in nxt[u]:
                c = color.get(w)
                if c == 1 or (c is None and dfs(w)):
                    return True
            color[u] = 2
            return False

        return not any(dfs(a.name) for a in self.arrows if a.name not in color)

    def _connected(self):
        if len(self.vertices) <= 1:
            return True
        adj = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    # -- file format -----------------------------------------------------

    @classmethod
    def from_dict(cls, data):
        return cls(
            vertices=[str(v) for v in data["vertices"]],
            arrows=[(str(a["name"]), str(a["from"]), str(a["to"])) for a in data["arrows"]],
            relations=[(str(s), str(f)) for s, f in data.get("relations", [])],
        )

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self):
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in self.arrows],
            "relations": sorted([s, f] for s, f in self.relations),
        }
