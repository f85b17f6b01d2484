"""Benchmarks: running time against cutwidth, and compiled against numpy kernels."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import kernels
from .detsolver import solve_cutwidth_det
from .graph import Graph, LinearLayout, cutwidth_of, layout_to_nice_decomposition
from .oracle import BudgetExceeded, pathdp_colorable
from .randsolver import solve_pathwidth_rand


def band_graph(n: int, offsets) -> Graph:
    """Vertices 1..n with an edge {i, i+d} for every offset d; in the
    identity layout every interior cut has sum(offsets) edges."""
    return Graph(n, tuple((i, i + d) for d in sorted(set(offsets)) for i in range(1, n + 1 - d)))


def scaling_offsets(width: int) -> tuple:
    """Offsets (1, 2, width - 3): the bag holds width - 3 vertices, all but
    two with one pending edge, so the randomized table grows as 3 * 2^(width-2)."""
    if width < 6:
        raise ValueError("width must be at least 6")
    return (1, 2, width - 3)


def scaling_instances(widths=range(8, 15), n: int = 100):
    """(graph, identity layout) per requested cutwidth."""
    out = []
    for w in widths:
        g = band_graph(n, scaling_offsets(w))
        out.append((g, LinearLayout(tuple(range(1, n + 1)))))
    return out


def growth_factor(widths, seconds) -> float:
    """exp of the least-squares slope of log(time) against width."""
    slope = np.polyfit(np.asarray(widths, dtype=float), np.log(np.asarray(seconds, dtype=float)), 1)[0]
    return float(np.exp(slope))


def _timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def scaling_row(g, lay, q: int = 8, lanes: int = 256, seed: int = 0, det: bool = True,
                budget: int | None = None) -> dict:
    """Times the randomized solver (one batch of lanes, evaluation mode) and
    optionally the deterministic solver on one instance; the plain q^pw
    dynamic program is only asked whether it would run within budget."""
    npd = layout_to_nice_decomposition(g, lay)
    row = {"n": g.n, "m": g.m, "cutwidth": cutwidth_of(g, lay), "q": q}
    row["rand"], row["rand_seconds"] = _timed(
        solve_pathwidth_rand, g, npd, q, trials=lanes, seed=seed, mode="eval", batch=lanes)
    if det:
        row["det"], row["det_seconds"] = _timed(solve_cutwidth_det, g, lay, q, symmetry=True)
    try:
        pathdp_colorable(g, npd, q, budget=budget)
        row["pathdp"] = "ran"
    except BudgetExceeded:
        row["pathdp"] = "refused"
    return row


def run_scaling(instances, q: int = 8, lanes: int = 256, seed: int = 0, det: bool = True,
                budget: int | None = None, jobs: int = 1) -> dict:
    """scaling_row for every instance plus the fitted growth factor of the
    randomized solver.  jobs > 1 runs instances in worker processes; the
    answers do not change but concurrent timings share the CPUs."""
    args = [(g, lay, q, lanes, seed, det, budget) for g, lay in instances]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(scaling_row, *zip(*args)))
    else:
        rows = [scaling_row(*a) for a in args]
    widths = [r["cutwidth"] for r in rows]
    factor = growth_factor(widths, [r["rand_seconds"] for r in rows]) if len(rows) > 1 else None
    return {"rows": rows, "rand_growth_factor": factor}


def kernel_benchmark(repeat: int = 3) -> list:
    """Wall time of both solvers with each available kernel backend."""
    g, lay = scaling_instances([11], n=60)[0]
    npd = layout_to_nice_decomposition(g, lay)
    backends = ["python"]
    try:
        kernels.backend("cython")
        backends.append("cython")
    except ImportError:
        pass
    rows = []
    for name in backends:
        impl = kernels.backend(name)
        for solver, fn in (
                ("det", lambda: solve_cutwidth_det(g, lay, 8, symmetry=True, impl=impl)),
                ("rand", lambda: solve_pathwidth_rand(g, npd, 8, trials=64, mode="eval",
                                                      batch=64, impl=impl))):
            best = min(_timed(fn)[1] for _ in range(repeat))
            rows.append({"backend": name, "solver": solver, "seconds": best})
    return rows


def format_rows(rows) -> str:
    if not rows:
        return ""
    keys = list(rows[0])
    lines = ["\t".join(keys)]
    for r in rows:
        lines.append("\t".join(f"{r[k]:.4f}" if isinstance(r[k], float) else str(r[k]) for k in keys))
    return "\n".join(lines)
