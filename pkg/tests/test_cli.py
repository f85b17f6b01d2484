import json

import pytest

from cutcolor.cli import main
from cutcolor.graph import Graph, LinearLayout, format_graph, format_layout


def run(capsys, *argv):
    rc = main(list(argv))
    return rc, json.loads(capsys.readouterr().out)


@pytest.fixture
def k4(tmp_path):
    g = Graph(4, ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)))
    (tmp_path / "k4.col").write_text(format_graph(g))
    (tmp_path / "k4.lay").write_text(format_layout(LinearLayout((1, 2, 3, 4))))
    return tmp_path


def test_solve(capsys, k4):
    g, lay = str(k4 / "k4.col"), str(k4 / "k4.lay")
    rc, rep = run(capsys, "solve", "--alg", "det", "--q", "3", "--graph", g, "--layout", lay)
    assert rc == 1 and rep["answer"] == "no" and rep["cutwidth"] == 4
    rc, rep = run(capsys, "solve", "--alg", "rand", "--q", "4", "--graph", g, "--layout", lay,
                  "--seed", "7")
    assert rc == 0 and rep["answer"] == "yes" and rep["seed"] == 7
    rc, rep = run(capsys, "solve", "--alg", "brute", "--q", "4", "--graph", g)
    assert rc == 0 and rep["count"] == 24
    rc, rep = run(capsys, "solve", "--alg", "det", "--q", "4", "--graph", g,
                  "--auto-layout", "exact")
    assert rc == 0


def test_solve_errors(capsys, k4):
    g = str(k4 / "k4.col")
    rc, rep = run(capsys, "solve", "--alg", "det", "--q", "3", "--graph", g)
    assert rc == 2 and "error" in rep
    (k4 / "bad.lay").write_text("1 2 3\n")
    rc, rep = run(capsys, "solve", "--alg", "det", "--q", "3", "--graph", g,
                  "--layout", str(k4 / "bad.lay"))
    assert rc == 2
    rc, rep = run(capsys, "solve", "--alg", "brute", "--q", "3", "--graph", str(k4 / "nope"))
    assert rc == 2


def test_gen_and_check(capsys, tmp_path):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 2 2\n1 2 0\n-1 -2 0\n")
    out = tmp_path / "g3"
    rc, rep = run(capsys, "gen", "--family", "planar3col", "--cnf", str(cnf), "--out", str(out))
    assert rc == 0
    meta = json.loads((out / "meta.json").read_text())
    assert meta["cutwidth"] - meta["n"] == meta["additive_constant"]
    rc, rep = run(capsys, "verify", "--check", "layout", "--graph", str(out / "graph.col"),
                  "--layout", str(out / "layout.lay"))
    assert rc == 0 and rep["cutwidth"] == meta["cutwidth"]
    rc, rep = run(capsys, "solve", "--alg", "det", "--q", "3", "--graph", str(out / "graph.col"),
                  "--layout", str(out / "layout.lay"), "--skip-small", "--symmetry")
    assert rc == 0

    out2 = tmp_path / "deg"
    rc, rep = run(capsys, "gen", "--family", "degree", "--cnf", str(cnf), "--out", str(out2),
                  "--trim")
    assert rc == 0 and rep["meta"]["max_degree"] <= 5
    rc, rep = run(capsys, "verify", "--check", "decomp", "--graph", str(out2 / "graph.col"),
                  "--decomp", str(out2 / "decomp.npd"))
    assert rc == 0
    rc, rep = run(capsys, "verify", "--check", "gen", "--family", "degree", "--cnf", str(cnf))
    assert rc == 0 and rep["satisfiable"]


@pytest.mark.parametrize("check", ["reduce", "rank", "table", "hcol", "pathgadget"])
def test_verify_checks(capsys, check):
    rc, rep = run(capsys, "verify", "--check", check, "--count", "5", "--seed", "3")
    assert rc == 0 and rep["pass"] and rep["seed"] == 3


def test_verify_unknown(capsys):
    rc, rep = run(capsys, "verify", "--check", "nonsense")
    assert rc == 2


def test_bench_small(capsys):
    rc, rep = run(capsys, "bench", "--min-width", "6", "--max-width", "7", "--n", "20",
                  "--lanes", "4")
    assert rc == 0 and len(rep["rows"]) == 2 and all(r["det"] for r in rep["rows"])


def test_bench_jobs(capsys):
    rc, rep = run(capsys, "bench", "--min-width", "6", "--max-width", "7", "--n", "20",
                  "--lanes", "4", "--jobs", "2", "--no-det")
    assert rc == 0 and [r["cutwidth"] for r in rep["rows"]] == [6, 7]


@pytest.mark.parametrize("alg", ["det", "rand", "brute"])
def test_reports_reproducible(capsys, k4, alg):
    argv = ["solve", "--alg", alg, "--q", "4", "--graph", str(k4 / "k4.col"), "--seed", "5"]
    if alg != "brute":
        argv += ["--layout", str(k4 / "k4.lay")]
    reports = []
    for _ in range(2):
        rc, rep = run(capsys, *argv)
        rep.pop("wall_seconds")
        reports.append(rep)
    assert reports[0] == reports[1]
    assert alg == "brute" or reports[0]["certificate"]["kind"] == "layout"
