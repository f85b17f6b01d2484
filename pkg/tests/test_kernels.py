import numpy as np
import pytest

from cutcolor import kernels
from cutcolor.detsolver import canonical_rows, solve_cutwidth_det
from cutcolor.graph import LinearLayout, layout_to_nice_decomposition
from cutcolor.linalg import matmul_mod, mod_float, row_basis_modp, submul_mod
from cutcolor.oracle import _rank_mod_p
from cutcolor.randsolver import solve_pathwidth_rand

from conftest import random_graph

py = kernels.backend("python")
try:
    cy = kernels.backend("cython")
except ImportError:  # pragma: no cover
    cy = None
needs_cython = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


def test_backend_names():
    assert kernels.BACKEND in ("python", "cython")
    with pytest.raises(ValueError):
        kernels.backend("fortran")


@needs_cython
def test_echelon_equal(rng):
    for _ in range(30):
        p = int(rng.choice([2, 3, 5, 11]))
        R = rng.integers(0, p, size=(int(rng.integers(1, 12)), int(rng.integers(1, 9)))).astype(np.int64)
        if rng.random() < 0.5:
            R[len(R) // 2:] = R[:len(R) - len(R) // 2]
        cap = int(rng.integers(1, 10))
        a, b = R.copy(), R.copy()
        ka, pa = py.echelon_block(a, p, cap)
        kb, pb = cy.echelon_block(b, p, cap)
        assert ka.tolist() == list(kb) and pa.tolist() == list(pb)


def test_row_basis_block_independent(rng):
    for impl in [py] + ([cy] if cy else []):
        for _ in range(4):
            p = 5
            M = rng.integers(0, p, size=(40, 12)).astype(np.int64)
            M[20:] = (M[:20] * 2) % p
            whole = row_basis_modp([M], 12, p, impl)
            split = row_basis_modp([M[s:s + 7] for s in range(0, 40, 7)], 12, p, impl)
            assert list(whole) == list(split)
            # row i is kept exactly when it raises the rank of the prefix
            ranks = [_rank_mod_p(M[:i].tolist(), p) for i in range(41)]
            assert list(whole) == [i for i in range(40) if ranks[i + 1] > ranks[i]]


@needs_cython
def test_canonical_equal(rng):
    for _ in range(30):
        rows = rng.integers(1, 5, size=(20, 6)).astype(np.int16)
        twins = [[0, 2], [3, 4, 5]] if rng.random() < 0.5 else []
        assert np.array_equal(canonical_rows(rows, twins, 4, py), canonical_rows(rows, twins, 4, cy))


@needs_cython
def test_solvers_equal_across_backends(rng):
    for _ in range(15):
        g = random_graph(rng, 8, 14, n_min=2)
        lay = LinearLayout(tuple(range(1, g.n + 1)))
        q = int(rng.integers(2, 4))
        assert solve_cutwidth_det(g, lay, q, impl=py) == solve_cutwidth_det(g, lay, q, impl=cy)
        if g.isolated():
            continue
        npd = layout_to_nice_decomposition(g, lay)
        for mode in ("full", "eval"):
            a, b = {}, {}
            ra = solve_pathwidth_rand(g, npd, q, trials=4, mode=mode, batch=4, impl=py, stats=a)
            rb = solve_pathwidth_rand(g, npd, q, trials=4, mode=mode, batch=4, impl=cy, stats=b)
            assert ra == rb and a["first_success"] == b["first_success"]


def test_modular_products(rng):
    for p in (2, 3, 11, 1_000_003):
        A = rng.integers(0, p, size=(7, 40)).astype(float)
        B = rng.integers(0, p, size=(40, 9)).astype(float)
        X = rng.integers(0, p, size=(7, 9)).astype(float)
        exact = (A.astype(object) @ B.astype(object))
        assert matmul_mod(A, B, p).tolist() == (exact % p).tolist()
        assert submul_mod(X, A, B, p).tolist() == ((X.astype(object) - exact) % p).tolist()
    x = rng.integers(-2 ** 39, 2 ** 39, size=1000)
    assert mod_float(x.astype(float), 97).astype(np.int64).tolist() == (x % 97).tolist()
