"""Command-line interface: validate, enumerate, hom counts, posets, verify.

All output is deterministic: canonical serializations, sorted collections,
and a single seeded generator for the witness parameter values.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .quiver import Quiver, QuiverError, WalkError
from .words import (
    BandWord,
    StringWord,
    enumerate_minimal_bands,
    enumerate_strings,
)
from .hvectors import (
    default_l_max,
    h_prime_vector,
    h_vector,
    hom_dim,
    parse_diagramme,
    rank_function,
    roundtrip_all,
)
from . import moves as moves_mod
from . import oracle as oracle_mod
from .posets import build_poset, compare_orders, enumerate_diagrammes, export_dot, export_json, restricted_band_poset


def _load(path):
    q = Quiver.load(path)
    report = q.validate_gentle()
    if not report.ok:
        raise SystemExit(f"not a finite-dimensional gentle algebra: {report.failures}")
    return q


def _parse_dim(text, q):
    dim = tuple(int(x) for x in text.split(","))
    if len(dim) != len(q.vertices):
        raise SystemExit(f"--dim needs {len(q.vertices)} entries")
    return dim


def _parse_item(q, text):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        return BandWord(q, q.parse_walk(text[1:-1])[0])
    letters, base = q.parse_walk(text)
    return StringWord(q, letters, base=base)


def cmd_validate(args):
    q = Quiver.load(args.algebra)
    report = q.validate_gentle()
    if report.ok:
        print("gentle and finite-dimensional")
        return 0
    for axiom, loc, msg in report.failures:
        print(f"violation [{axiom}] at {loc}: {msg}")
    return 1


def cmd_strings(args):
    q = _load(args.algebra)
    dim = _parse_dim(args.dim, q)
    for s in enumerate_strings(q, dim):
        print(s.serial)
    return 0


def cmd_bands(args):
    q = _load(args.algebra)
    dim = _parse_dim(args.dim, q)
    for b in enumerate_minimal_bands(q, dim):
        print(b.serial)
    return 0


def cmd_diagrammes(args):
    q = _load(args.algebra)
    dim = _parse_dim(args.dim, q)
    for d in enumerate_diagrammes(q, dim):
        print(d.serial)
    return 0


def cmd_hom(args):
    q = _load(args.algebra)
    x = _parse_item(q, args.x)
    y = _parse_item(q, args.y)
    qx, qy = args.quasi
    x = (x, qx) if x.kind == "band" else x
    y = (y, qy) if y.kind == "band" else y
    val = hom_dim(x, y, same_parameter=args.same_lambda)
    print(val)
    return 0


def cmd_hvec(args):
    q = _load(args.algebra)
    d = parse_diagramme(q, args.diagramme)
    L = args.lmax or default_l_max(d.dim)
    vec = h_vector(d, L) if not args.hprime else h_prime_vector(d, L)
    if args.format == "json":
        # entry order is canonical already: by (length, lexicographic) key
        print(json.dumps(vec.to_json()))
    else:
        data = vec.to_json()
        print(f"L_max = {data['L_max']}")
        for key, val in data["entries"].items():
            print(f"  {key}: {val}")
    return 0


def cmd_moves(args):
    q = _load(args.algebra)
    d = parse_diagramme(q, args.diagramme)
    edges, skipped = moves_mod.all_moves(d)
    out = {
        "diagramme": d.serial,
        "above": sorted(
            {json.dumps({"to": high.serial, "move": desc}, sort_keys=True)
             for low, high, desc in edges if low == d}
        ),
        "below": sorted(
            {json.dumps({"to": low.serial, "move": desc}, sort_keys=True)
             for low, high, desc in edges if high == d}
        ),
        "skipped": skipped,
    }
    if args.format == "json":
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        print(f"moves of {d.serial}")
        for row in out["above"]:
            rec = json.loads(row)
            print(f"  up   {rec['to']}  via {rec['move']['kind']}")
        for row in out["below"]:
            rec = json.loads(row)
            print(f"  down {rec['to']}  via {rec['move']['kind']}")
        for rec in skipped:
            print(f"  skipped ({rec['reason']}): {rec['reaching']}")
    return 0


def cmd_poset(args):
    q = _load(args.algebra)
    dim = _parse_dim(args.dim, q)
    if args.restricted_bands:
        p = restricted_band_poset(q, dim, node_cap=args.node_cap)
    else:
        p = build_poset(q, dim, L_max=args.lmax, node_cap=args.node_cap)
    if args.format == "dot":
        show = []
        if args.show_h:
            show = [_parse_item(q, t) for t in args.show_h.split(",")]
        sys.stdout.write(export_dot(p, show_h=show))
    elif args.format == "json":
        sys.stdout.write(export_json(p))
    else:
        print(f"{len(p.nodes)} diagrammes, {len(p.move_edges)} move edges, "
              f"{len(p.hasse)} covers")
        for lo, hi in sorted(p.hasse):
            print(f"  {p.nodes[lo].serial}  <  {p.nodes[hi].serial}")
        if p.h_verdicts is not None:
            rep = compare_orders(p)
            print("h-order missing pairs:" if rep.missing else "orders coincide")
            for a, b in rep.missing:
                print(f"  {a} <_h {b} (no move chain)")
    return 0


def cmd_identify(args):
    q = _load(args.algebra)
    with open(args.module, "r", encoding="utf-8") as fh:
        m = oracle_mod.MatrixModule.from_dict(q, json.load(fh))
    d = oracle_mod.identify_diagramme(m, args.lmax)
    print(d.serial)
    return 0


def _check_pair(task):
    from itertools import product

    x, y, qx, qy = task
    lams = [Fraction(2, 3), Fraction(5, 7)]
    failures = []
    for lx, ly in product(lams, repeat=2):
        same = x == y and x.kind == "band" and lx == ly
        want = hom_dim(
            (x, qx) if x.kind == "band" else x,
            (y, qy) if y.kind == "band" else y,
            same_parameter=same,
        )
        got = oracle_mod.hom_nullity(
            oracle_mod.realize_item(x, lx, qx), oracle_mod.realize_item(y, ly, qy)
        )
        if want != got:
            failures.append((x.serial, y.serial, qx, qy, str(lx), str(ly), want, got))
    return failures


def _verify_report(q, dim, budget, seed, jobs):
    from itertools import product

    report = {}
    # 1. oracle equivalence: all indecomposable pairs up to a generic cap,
    #    plus every band-band pair within the full budget (zero-hom checks)
    generic = min(budget, 6)
    bound = tuple(generic for _ in q.vertices)
    strings = [s for s in enumerate_strings(q, bound) if sum(s.dim) < generic]
    bands = [b for b in enumerate_minimal_bands(q, tuple(budget for _ in q.vertices))
             if sum(b.dim) <= budget]
    tasks = []
    for x in strings + bands:
        for y in strings + bands:
            both_bands = x.kind == "band" and y.kind == "band"
            qxs = [1, 2] if x.kind == "band" else [1]
            qys = [1, 2] if y.kind == "band" else [1]
            for qx, qy in product(qxs, qys):
                total = qx * sum(x.dim) + qy * sum(y.dim)
                if total > (budget if both_bands else generic):
                    continue
                tasks.append((x, y, qx, qy))
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_check_pair, tasks))
    else:
        chunks = [_check_pair(t) for t in tasks]
    failures = [row for chunk in chunks for row in chunk]
    report["oracle_equivalence"] = {"checked": len(tasks) * 4, "failures": failures}
    # 2. h' roundtrip and injectivity
    ds = enumerate_diagrammes(q, dim)
    L = default_l_max(dim)
    rt = roundtrip_all(q, ds, L)
    hps = [h_prime_vector(d, L) for d in ds]
    seen = {}
    collisions = []
    for d, hp in zip(ds, hps):
        key = tuple(sorted((k.serial, v) for k, v in hp.entries.items()))
        if key in seen:
            collisions.append((seen[key], d.serial))
        seen[key] = d.serial
    report["hprime_roundtrip"] = {"failures": [d.serial for d, ok in zip(ds, rt) if not ok]}
    report["hprime_injective"] = {"collisions": collisions}
    # 3. rank formula vs oracle matrix ranks
    rank_bad = []
    for d in ds:
        ranks = rank_function(d)
        mod = oracle_mod.realize_diagramme(d)
        for a in q.arrows:
            if ranks[a.name] != mod.arrow_rank(a.name):
                rank_bad.append((d.serial, a.name, ranks[a.name], mod.arrow_rank(a.name)))
    report["rank_formula"] = {"failures": rank_bad}
    # 4. witnesses for a deterministic sample of deletion edges
    wit_bad = []
    ts = oracle_mod.seeded_rationals(seed, 3)
    p = build_poset(q, dim, with_h=True)
    rep = compare_orders(p)
    deletions = [
        (lo, hi, desc)
        for (lo, hi), descs in sorted(p.move_edges.items())
        for desc in descs
        if desc["kind"] == "delete"
    ]
    sample = deletions[:: max(1, len(deletions) // 24)]
    for lo, hi, desc in sample:
        low, high = p.nodes[lo], p.nodes[hi]
        item = _parse_item(q, desc["item"])
        context = _context_items(low, item)
        fam = oracle_mod.deletion_witness(item, desc["position"], context)
        ok = oracle_mod.identify_diagramme(fam.at(0)) == high
        ok = ok and all(oracle_mod.identify_diagramme(fam.at(t)) == low for t in ts)
        if not ok:
            wit_bad.append({"edge": [low.serial, high.serial], "move": desc})
    report["witnesses"] = {"checked": len(sample), "failures": wit_bad}
    # 5. order inclusion
    report["order_inclusion"] = {
        "violations": rep.violations,
        "h_only_pairs": rep.missing,
        "coincide": rep.coincide,
    }
    ok = (
        not failures
        and not report["hprime_roundtrip"]["failures"]
        and not collisions
        and not rank_bad
        and not wit_bad
        and not rep.violations
    )
    return ok, report


def _context_items(d, removed):
    items = []
    taken = False
    for item, mult in d.items:
        count = mult
        if item == removed and not taken:
            count -= 1
            taken = True
        items.extend([item] * count)
    assert taken, "deleted item not found in the low diagramme"
    return items


def cmd_verify(args):
    q = _load(args.algebra)
    dim = _parse_dim(args.dim, q)
    ok, report = _verify_report(q, dim, args.budget, args.seed, args.jobs)
    print(json.dumps({"ok": ok, "report": report}, sort_keys=True, indent=2, default=str))
    return 0 if ok else 1


def main(argv=None):
    ap = argparse.ArgumentParser(prog="gentlebands",
                                 description="string/band degeneration combinatorics")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, dim=False):
        p.add_argument("algebra", help="algebra JSON file")
        if dim:
            p.add_argument("--dim", required=True, help="dimension vector a,b,c")
        p.add_argument("--format", choices=("text", "json", "dot"), default="text")
        p.add_argument("--lmax", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("validate", help="check gentleness and finite dimension")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("strings", help="canonical strings under a dimension bound")
    common(p, dim=True)
    p.set_defaults(func=cmd_strings)

    p = sub.add_parser("bands", help="canonical minimal bands under a dimension bound")
    common(p, dim=True)
    p.set_defaults(func=cmd_bands)

    p = sub.add_parser("diagrammes", help="all diagrammes of a dimension vector")
    common(p, dim=True)
    p.set_defaults(func=cmd_diagrammes)

    p = sub.add_parser("hom", help="combinatorial hom dimension")
    common(p)
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--quasi", type=int, nargs=2, default=(1, 1))
    p.add_argument("--same-lambda", action="store_true")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("hvec", help="h-vector (or h'-vector) of a diagramme")
    common(p)
    p.add_argument("diagramme")
    p.add_argument("--hprime", action="store_true")
    p.set_defaults(func=cmd_hvec)

    p = sub.add_parser("moves", help="one-move neighbors of a diagramme")
    common(p)
    p.add_argument("diagramme")
    p.set_defaults(func=cmd_moves)

    p = sub.add_parser("poset", help="degeneration poset of a dimension vector")
    common(p, dim=True)
    p.add_argument("--restricted-bands", action="store_true")
    p.add_argument("--show-h", default="")
    p.add_argument("--node-cap", type=int, default=None)
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("identify", help="diagramme of an explicit matrix module")
    common(p)
    p.add_argument("module", help="module JSON file")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("verify", help="run the invariant suite")
    common(p, dim=True)
    p.add_argument("--budget", type=int, default=4, help="total dimension cap")
    p.set_defaults(func=cmd_verify)

    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (WalkError, QuiverError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
