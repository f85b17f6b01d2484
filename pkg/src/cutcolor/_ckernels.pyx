# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops: greedy row echelon over GF(p), canonical colour
rows for the deterministic table, and the flip summation of the randomized
table update."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


cdef inline int64_t _inv(int64_t a, int64_t p):
    # Fermat inverse, p prime
    cdef int64_t r = 1, b = a % p, e = p - 2
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


def echelon_block(int64_t[:, ::1] R, int64_t p, Py_ssize_t capacity):
    """Greedy elimination of the rows of R, in order, in place.

    A row is kept iff it is independent of the kept rows before it.  Kept
    rows end up normalised (pivot 1) and zero at every other kept pivot.
    Stops after `capacity` rows are kept.  Returns (kept indices, pivots).
    """
    cdef Py_ssize_t b = R.shape[0], D = R.shape[1]
    cdef Py_ssize_t i, j, k, col, nk = 0
    cdef int64_t f, inv
    kept_np = np.empty(min(b, D) + 1, dtype=np.int64)
    piv_np = np.empty(min(b, D) + 1, dtype=np.int64)
    cdef int64_t[::1] kept = kept_np
    cdef int64_t[::1] piv = piv_np
    for i in range(b):
        if nk >= capacity:
            break
        for k in range(nk):
            f = R[i, piv[k]]
            if f != 0:
                f = p - f
                for j in range(D):
                    R[i, j] = (R[i, j] + f * R[kept[k], j]) % p
        col = -1
        for j in range(D):
            if R[i, j] != 0:
                col = j
                break
        if col < 0:
            continue
        inv = _inv(R[i, col], p)
        for j in range(col, D):
            R[i, j] = R[i, j] * inv % p
        for k in range(nk):
            f = R[kept[k], col]
            if f != 0:
                f = p - f
                for j in range(D):
                    R[kept[k], j] = (R[kept[k], j] + f * R[i, j]) % p
        kept[nk] = i
        piv[nk] = col
        nk += 1
    return kept_np[:nk].copy(), piv_np[:nk].copy()


def flip_accumulate(const int64_t[:, :, :, :, ::1] src,
                    int64_t[:, :, :, :, ::1] dst,
                    const int64_t[::1] primes,
                    const int64_t[:, ::1] shifts,
                    const int64_t[:, ::1] coefs,
                    const int64_t[:, :, ::1] powtab,
                    int tail):
    """dst[a,e,b,l,z] += sum_{d,c} coef[c,l] * c^(e+d+tail) * src[a,d,b,l,z-shift[c,l]]

    All arithmetic is modulo primes[l]; colors c are 1-based in the power
    table (powtab[l, c-1, k] = c^k mod p_l).
    """
    cdef Py_ssize_t A = src.shape[0], nd = src.shape[1], B = src.shape[2]
    cdef Py_ssize_t Ln = src.shape[3], Z = src.shape[4]
    cdef Py_ssize_t ne = dst.shape[1], q = coefs.shape[0]
    cdef Py_ssize_t a, e, bb, l, z, d, c, s
    cdef int64_t p, w, acc
    W_np = np.empty((ne, nd, q, Ln), dtype=np.int64)
    cdef int64_t[:, :, :, ::1] W = W_np
    for e in range(ne):
        for d in range(nd):
            for c in range(q):
                for l in range(Ln):
                    p = primes[l]
                    W[e, d, c, l] = coefs[c, l] * powtab[l, c, e + d + tail] % p
    if Z == 1:
        for a in range(A):
            for e in range(ne):
                for bb in range(B):
                    for l in range(Ln):
                        p = primes[l]
                        acc = dst[a, e, bb, l, 0]
                        for d in range(nd):
                            for c in range(q):
                                acc = (acc + W[e, d, c, l] * src[a, d, bb, l, 0]) % p
                        dst[a, e, bb, l, 0] = acc
        return
    for a in range(A):
        for e in range(ne):
            for bb in range(B):
                for l in range(Ln):
                    p = primes[l]
                    for d in range(nd):
                        for c in range(q):
                            w = W[e, d, c, l]
                            if w == 0:
                                continue
                            s = shifts[c, l]
                            for z in range(s, Z):
                                dst[a, e, bb, l, z] = (dst[a, e, bb, l, z] + w * src[a, d, bb, l, z - s]) % p


def canonical_rows(short[:, ::1] rows, Py_ssize_t[::1] cols, Py_ssize_t[::1] starts, int q):
    """In place: sort each twin group of columns, then relabel colours by
    first appearance.  Group g is cols[starts[g]:starts[g + 1]]."""
    cdef Py_ssize_t k = rows.shape[0], w = rows.shape[1], ng = starts.shape[0] - 1
    cdef Py_ssize_t r, g, a, b, c
    cdef short t, used
    cdef short[64] label
    if q >= 64:
        raise ValueError("at most 63 colours")
    for r in range(k):
        for g in range(ng):
            # insertion sort of a small group
            for a in range(starts[g] + 1, starts[g + 1]):
                t = rows[r, cols[a]]
                b = a - 1
                while b >= starts[g] and rows[r, cols[b]] > t:
                    rows[r, cols[b + 1]] = rows[r, cols[b]]
                    b -= 1
                rows[r, cols[b + 1]] = t
        for c in range(q + 1):
            label[c] = 0
        used = 0
        for c in range(w):
            t = rows[r, c]
            if label[t] == 0:
                used += 1
                label[t] = used
            rows[r, c] = label[t]
