"""Greedy row basis over GF(p) for matrices streamed in row blocks.

Rows are taken in order and a row is kept iff it is independent of the rows
kept before it, so the result is the same for any block size.  Work between
blocks is done with float64 matrix products; partial sums are kept below
2**40 so that they stay exact and the float reduction mod p is exact too.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from . import kernels

_SAFE = 2 ** 40


def mod_float(x: np.ndarray, p: int) -> np.ndarray:
    """x mod p for a float array of integers below 2**40 in magnitude.
    Much faster than np.mod on floats, which goes through C fmod."""
    q = np.floor(x / p)
    q *= -p
    q += x
    return q


def submul_mod(X: np.ndarray, A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """(X - A @ B) mod p for float arrays holding integers in [0, p)."""
    k = A.shape[1]
    step = max(1, (_SAFE - p) // max((p - 1) ** 2, 1))
    for s in range(0, k, step):
        X = mod_float(X - A[:, s:s + step] @ B[s:s + step], p)
    return X


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """(A @ B) mod p for float arrays holding integers in [0, p)."""
    return mod_float(-submul_mod(np.zeros((A.shape[0], B.shape[1])), A, B, p), p)


def row_basis_modp(blocks: Iterable[np.ndarray], ncols: int, p: int, impl=None) -> np.ndarray:
    """Indices (in stream order) of the greedily selected independent rows."""
    impl = impl or kernels.backend()
    if ncols == 0:
        return np.zeros(0, dtype=np.int64)
    cap = 64
    basis = np.empty((cap, ncols))
    pivots = np.empty(0, dtype=np.int64)
    r = 0
    chosen = []
    offset = 0
    for blk in blocks:
        if r >= ncols:
            break
        R = np.ascontiguousarray(np.mod(blk, p), dtype=np.int64)
        if r:
            F = R[:, pivots].astype(np.float64)
            if F.any():
                R = submul_mod(R.astype(np.float64), F, basis[:r], p)
                R = np.ascontiguousarray(R, dtype=np.int64)
        kept, piv = impl.echelon_block(R, p, ncols - r)
        if len(kept):
            N = R[kept].astype(np.float64)
            if r:
                G = basis[:r][:, piv]
                if G.any():
                    basis[:r] = submul_mod(basis[:r], G, N, p)
            while r + len(kept) > cap:
                cap *= 2
                grown = np.empty((cap, ncols))
                grown[:r] = basis[:r]
                basis = grown
            basis[r:r + len(kept)] = N
            r += len(kept)
            pivots = np.concatenate([pivots, piv])
            chosen.append(kept + offset)
        offset += R.shape[0]
    if not chosen:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(chosen)
