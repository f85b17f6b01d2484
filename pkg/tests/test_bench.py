import numpy as np
import pytest

from cutcolor.bench import (band_graph, format_rows, growth_factor, kernel_benchmark,
                            run_scaling, scaling_instances, scaling_offsets)
from cutcolor.graph import cutwidth_of


def test_band_cutwidth():
    for w in range(6, 15):
        (g, lay), = scaling_instances([w], n=40)
        assert cutwidth_of(g, lay) == w
    assert band_graph(5, (1,)).m == 4
    with pytest.raises(ValueError):
        scaling_offsets(5)


def test_growth_factor():
    widths = np.arange(8, 15)
    assert growth_factor(widths, 0.01 * 2.0 ** widths) == pytest.approx(2.0)


def test_run_scaling_refuses_pathdp():
    res = run_scaling(scaling_instances([8, 9], n=100), q=8, lanes=8, budget=2 ** 24)
    assert [r["pathdp"] for r in res["rows"]] == ["refused", "refused"]
    assert all(r["rand"] and r["det"] for r in res["rows"])
    assert res["rand_growth_factor"] > 0
    assert format_rows(res["rows"]).count("\n") == 2


@pytest.mark.slow
def test_kernel_benchmark_runs():
    rows = kernel_benchmark(repeat=1)
    assert {r["solver"] for r in rows} == {"det", "rand"}
