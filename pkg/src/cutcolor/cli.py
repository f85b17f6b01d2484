"""Command-line front end: solve, gen, verify and bench.

Reports are JSON on stdout.  solve exits 0 for yes, 1 for no and 2 on
errors; verify exits 0 on pass and 1 on failure.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import time

import numpy as np

from . import bench, kernels
from .detsolver import PartialColoringSet, field_prime, reduce, solve_cutwidth_det
from .gadgets import (build_hcol, cnf_to_planar3col, is_satisfiable, path_gadget,
                      read_cnf, sat_to_degree_coloring)
from .graph import (Graph, LinearLayout, all_cuts, cutwidth_of, format_decomposition,
                    format_graph, format_layout, layout_to_nice_decomposition, pathwidth_of,
                    make_cut, read_decomposition, read_graph, read_layout, relabel_layout,
                    strip_isolated, validate_decomposition)
from .layout import find_layout
from .oracle import (BudgetExceeded, count_proper_colorings, eval_table_entry_bruteforce,
                     rank_of_Mprime, represents)
from .randsolver import iter_tables, random_prime, sample_weights, solve_pathwidth_rand

DEFAULT_TRIALS = 64


class CliError(Exception):
    pass


def _budget():
    raw = os.environ.get("CUTCOLOR_BUDGET")
    return int(raw) if raw else None


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True, default=str))


# ------------------------------------------------------------------ solve

def cmd_solve(args) -> dict:
    graph = read_graph(args.graph)
    report = {"command": "solve", "algorithm": args.alg, "q": args.q, "seed": args.seed,
              "graph": {"path": args.graph, "n": graph.n, "m": graph.m}}
    t0 = time.perf_counter()
    if args.alg == "brute":
        if args.layout or args.decomp:
            raise CliError("the brute-force solver takes no certificate")
        count = count_proper_colorings(graph, args.q, budget=_budget())
        report.update(answer="yes" if count else "no", count=count, certificate=None)
    else:
        if args.layout and args.decomp:
            raise CliError("give exactly one of --layout and --decomp")
        layout = npd = None
        if args.layout:
            layout = read_layout(args.layout)
            report["certificate"] = {"kind": "layout", "path": args.layout}
        elif args.decomp:
            npd = read_decomposition(args.decomp)
            problems = validate_decomposition(graph, npd)
            if problems:
                raise CliError("invalid decomposition: " + problems[0])
            report["certificate"] = {"kind": "decomposition", "path": args.decomp}
        elif args.auto_layout:
            layout = find_layout(graph, args.auto_layout)
            report["certificate"] = {"kind": "layout", "path": None, "found_by": args.auto_layout}
        else:
            raise CliError("structured solvers need --layout or --decomp (or --auto-layout)")
        if layout is not None:
            layout.validate(graph)
            report["cutwidth"] = cutwidth_of(graph, layout)
        else:
            report["pathwidth"] = pathwidth_of(npd)
        stats = {}
        if args.alg == "det":
            if layout is None:
                layout = LinearLayout(tuple(ev.u for ev in npd.events if ev.kind == "IV"))
                report["cutwidth"] = cutwidth_of(graph, layout)
            ok = solve_cutwidth_det(graph, layout, args.q, skip_small=args.skip_small,
                                    stats=stats, symmetry=args.symmetry)
            stats.pop("steps", None)
        else:
            ok = _solve_rand(graph, layout, npd, args, stats)
        report.update(answer="yes" if ok else "no", stats=stats)
    report["wall_seconds"] = time.perf_counter() - t0
    report["kernel_backend"] = kernels.BACKEND
    return report


def _solve_rand(graph, layout, npd, args, stats) -> bool:
    if npd is None:
        g, kept, iso = strip_isolated(graph)
        if g.n == 0:
            return True
        npd = layout_to_nice_decomposition(g, relabel_layout(layout, kept))
        graph = g
        stats["isolated_stripped"] = iso
    return solve_pathwidth_rand(graph, npd, args.q, trials=args.trials, seed=args.seed,
                                stats=stats)


# ------------------------------------------------------------------ gen

def cmd_gen(args) -> dict:
    phi = read_cnf(args.cnf)
    os.makedirs(args.out, exist_ok=True)
    if args.family == "planar3col":
        inst = cnf_to_planar3col(phi)
        cert_name = "layout.lay"
        cert_text = format_layout(inst.certificate)
    else:
        inst = sat_to_degree_coloring(phi, args.d, args.p, trim=args.trim)
        cert_name = "decomp.npd"
        cert_text = format_decomposition(inst.certificate)
    with open(os.path.join(args.out, "graph.col"), "w") as fh:
        fh.write(format_graph(inst.graph, [f"family {args.family}", f"q {inst.q}"]))
    with open(os.path.join(args.out, cert_name), "w") as fh:
        fh.write(cert_text)
    meta = dict(inst.meta)
    meta.update(q=inst.q, vertices=inst.graph.n, edges=inst.graph.m,
                max_degree=inst.graph.max_degree(), provenance_counts=inst.provenance_counts())
    with open(os.path.join(args.out, "meta.json"), "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return {"command": "gen", "family": args.family, "out": args.out,
            "files": ["graph.col", cert_name, "meta.json"], "meta": meta}


# ------------------------------------------------------------------ verify

def _random_cut(rng, max_side=3):
    nx, ny = int(rng.integers(1, max_side + 1)), int(rng.integers(1, max_side + 1))
    X, Y = tuple(range(1, nx + 1)), tuple(range(nx + 1, nx + ny + 1))
    edges = [(x, y) for x in X for y in Y if rng.random() < 0.6]
    if not edges:
        edges = [(X[0], Y[0])]
    return make_cut(0, edges)


def check_reduce(args, rng) -> dict:
    """Random cuts of the given layout (or random cuts), random S: reduce
    must keep the H-representation and respect the size bound."""
    q = args.q
    p = field_prime(q)
    if args.graph and args.layout:
        g = read_graph(args.graph)
        cuts = [c for c in all_cuts(g, read_layout(args.layout)) if c.edges and len(c.Y) <= 5]
    else:
        cuts = [_random_cut(rng) for _ in range(args.count)]
    checked = 0
    for cut in cuts[:args.count]:
        k = int(rng.integers(1, 60))
        rows = rng.integers(1, q + 1, size=(k, len(cut.X)))
        S = PartialColoringSet.from_rows(cut.X, rows)
        R = reduce(cut, S, p)
        bound = 1
        for v, d in cut.left_degree().items():
            bound *= d + 1
        if len(R) > bound or not represents(cut, R.as_tuples(), S.as_tuples(), q):
            return {"pass": False, "counterexample": {"cut": repr(cut), "S": S.as_tuples(),
                                                      "reduced": R.as_tuples()}}
        checked += 1
    return {"pass": True, "checked": checked}


def check_rank(args, rng) -> dict:
    q = args.q
    p = field_prime(q)
    for _ in range(args.count):
        cut = _random_cut(rng)
        bound = 1
        for d in cut.left_degree().values():
            bound *= d + 1
        r = rank_of_Mprime(cut, q, p)
        if r > bound:
            return {"pass": False, "counterexample": {"cut": repr(cut), "rank": r, "bound": bound}}
    return {"pass": True, "checked": args.count}


def check_table(args, rng) -> dict:
    """Every table entry of the randomized solver equals its brute-force value."""
    q = args.q
    if args.graph:
        g = read_graph(args.graph)
        npd = (read_decomposition(args.decomp) if args.decomp
               else layout_to_nice_decomposition(g, read_layout(args.layout)))
    else:
        n = int(rng.integers(2, 6))
        pairs = [e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < 0.5]
        g = Graph(n, tuple(pairs) or ((1, 2),))
        order = tuple(int(v) + 1 for v in rng.permutation(n))
        g2, kept, _ = strip_isolated(g)
        g, npd = g2, layout_to_nice_decomposition(g2, relabel_layout(LinearLayout(order), kept))
    w = sample_weights(g, q, rng)
    p = random_prime(rng)
    for i, dp in iter_tables(g, npd, q, w, p):
        for (z, d, e), val in dp.entries().items():
            ref = eval_table_entry_bruteforce(g, npd, i, dict(d), dict(e), z, q, w) % p
            if ref != val:
                return {"pass": False, "counterexample": {"event": i, "z": z, "d": d, "e": e,
                                                          "table": val, "oracle": ref}}
    return {"pass": True, "events": len(npd.events)}


def check_hcol(args, rng) -> dict:
    from .oracle import is_colorable
    g, t = build_hcol()
    classes = 0
    for a, b in itertools.product((1, 2, 3), repeat=2):
        lists = {v: (1, 2, 3) for v in range(1, g.n + 1)}
        lists[t["u"]] = lists[t["u'"]] = (a,)
        lists[t["v"]] = lists[t["v'"]] = (b,)
        if not is_colorable(g, 3, lists):
            return {"pass": False, "counterexample": {"class": (a, b)}}
        classes += 1
    for a, b in itertools.permutations((1, 2, 3), 2):
        for pair in (("u", "u'"), ("v", "v'")):
            lists = {v: (1, 2, 3) for v in range(1, g.n + 1)}
            lists[t[pair[0]]], lists[t[pair[1]]] = (a,), (b,)
            if is_colorable(g, 3, lists):
                return {"pass": False, "counterexample": {"terminals": pair, "colors": (a, b)}}
    return {"pass": True, "classes": classes}


def check_pathgadget(args, rng) -> dict:
    from .oracle import is_colorable
    checked = 0
    for q in range(3, 5):
        for m in range(1, 4):
            for c in itertools.product(range(1, q + 1), repeat=m):
                inst, pis = path_gadget(c, q)
                for d in itertools.product(range(1, q + 1), repeat=m):
                    lists = dict(inst.lists)
                    for pi, dc in zip(pis, d):
                        lists[pi] = tuple(x for x in lists[pi] if x != dc)
                    ok = all(lists.values()) and is_colorable(inst.graph, q, lists)
                    if ok != (tuple(d) != tuple(c)):
                        return {"pass": False, "counterexample": {"q": q, "c": c, "d": d}}
                    checked += 1
    return {"pass": True, "checked": checked}


def check_certificate(args, rng) -> dict:
    g = read_graph(args.graph)
    if args.decomp:
        problems = validate_decomposition(g, read_decomposition(args.decomp))
        return {"pass": not problems, "problems": problems[:20]}
    try:
        lay = read_layout(args.layout)
        lay.validate(g)
    except ValueError as exc:
        return {"pass": False, "problems": [str(exc)]}
    return {"pass": True, "cutwidth": cutwidth_of(g, lay)}


def check_gen(args, rng) -> dict:
    """Generated instance colorability against brute-force satisfiability."""
    phi = read_cnf(args.cnf)
    if args.family == "planar3col":
        inst = cnf_to_planar3col(phi)
        got = solve_cutwidth_det(inst.graph, inst.certificate, 3, skip_small=True, symmetry=True)
    else:
        from .oracle import pathdp_colorable
        inst = sat_to_degree_coloring(phi, args.d, args.p, trim=True)
        got = pathdp_colorable(inst.graph, inst.certificate, inst.q, budget=2 ** 62)
    want = is_satisfiable(phi)
    return {"pass": got == want, "colorable": got, "satisfiable": want}


CHECKS = {
    "reduce": check_reduce, "rank": check_rank, "table": check_table, "hcol": check_hcol,
    "pathgadget": check_pathgadget, "decomp": check_certificate, "layout": check_certificate,
    "gen": check_gen,
}


def cmd_verify(args) -> dict:
    if args.check not in CHECKS:
        raise CliError(f"unknown check {args.check!r}; choose from {sorted(CHECKS)}")
    rng = np.random.default_rng(args.seed)
    result = CHECKS[args.check](args, rng)
    return {"command": "verify", "check": args.check, "seed": args.seed, **result}


# ------------------------------------------------------------------ bench

def cmd_bench(args) -> dict:
    if args.kernels:
        rows = bench.kernel_benchmark()
        return {"command": "bench", "kernels": rows, "table": bench.format_rows(rows)}
    if args.graph:
        inst = [(read_graph(g), read_layout(l)) for g, l in zip(args.graph, args.layout)]
    else:
        inst = bench.scaling_instances(range(args.min_width, args.max_width + 1), args.n)
    res = bench.run_scaling(inst, q=args.q, lanes=args.lanes, seed=args.seed,
                            det=not args.no_det, budget=_budget(), jobs=args.jobs)
    res.update(command="bench", seed=args.seed, table=bench.format_rows(res["rows"]))
    return res


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cutcolor", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide q-colorability")
    s.add_argument("--alg", choices=("det", "rand", "brute"), required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--graph", required=True)
    s.add_argument("--layout")
    s.add_argument("--decomp")
    s.add_argument("--auto-layout", choices=("greedy", "exact"))
    s.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--skip-small", action="store_true",
                   help="det: skip the basis step while the table is below the index size")
    s.add_argument("--symmetry", action="store_true",
                   help="det: keep one table row per colour-permutation orbit")

    g = sub.add_parser("gen", help="generate an instance from a CNF formula")
    g.add_argument("--family", choices=("planar3col", "degree"), required=True)
    g.add_argument("--cnf", required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--d", type=int, default=5)
    g.add_argument("--p", type=int, default=1)
    g.add_argument("--trim", action="store_true", help="degree family: trim unused chain tails")
    g.add_argument("--seed", type=int, default=0)

    v = sub.add_parser("verify", help="run an oracle cross-check")
    v.add_argument("--check", required=True)
    v.add_argument("--graph")
    v.add_argument("--layout")
    v.add_argument("--decomp")
    v.add_argument("--cnf")
    v.add_argument("--family", choices=("planar3col", "degree"), default="planar3col")
    v.add_argument("--d", type=int, default=5)
    v.add_argument("--p", type=int, default=1)
    v.add_argument("--q", type=int, default=3)
    v.add_argument("--count", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)

    b = sub.add_parser("bench", help="time the solvers against cutwidth")
    b.add_argument("--graph", nargs="*")
    b.add_argument("--layout", nargs="*")
    b.add_argument("--q", type=int, default=8)
    b.add_argument("--min-width", type=int, default=8)
    b.add_argument("--max-width", type=int, default=14)
    b.add_argument("--n", type=int, default=100)
    b.add_argument("--lanes", type=int, default=256)
    b.add_argument("--no-det", action="store_true")
    b.add_argument("--kernels", action="store_true", help="compare kernel backends instead")
    b.add_argument("--jobs", type=int, default=1, help="worker processes for independent instances")
    b.add_argument("--seed", type=int, default=0)
    return ap


COMMANDS = {"solve": cmd_solve, "gen": cmd_gen, "verify": cmd_verify, "bench": cmd_bench}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except (CliError, ValueError, OSError, BudgetExceeded, MemoryError) as exc:
        _emit({"command": args.command, "error": f"{type(exc).__name__}: {exc}",
               "seed": getattr(args, "seed", 0)})
        return 2
    _emit(report)
    if args.command == "solve":
        return 0 if report["answer"] == "yes" else 1
    if args.command == "verify":
        return 0 if report["pass"] else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
