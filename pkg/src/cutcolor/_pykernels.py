"""numpy versions of the compiled kernels, same signatures and results."""
import numpy as np


def echelon_block(R, p, capacity):
    b, D = R.shape
    kept, piv = [], []
    for i in range(b):
        if len(kept) >= capacity:
            break
        row = R[i]
        if kept:
            f = row[piv]
            if f.any():
                row = (row - f @ R[kept]) % p
        nz = np.flatnonzero(row)
        if nz.size == 0:
            R[i] = row
            continue
        col = int(nz[0])
        row = row * pow(int(row[col]), p - 2, p) % p
        R[i] = row
        if kept:
            f = R[kept, col]
            if f.any():
                R[kept] = (R[kept] - np.outer(f, row)) % p
        kept.append(i)
        piv.append(col)
    return np.array(kept, dtype=np.int64), np.array(piv, dtype=np.int64)


def flip_accumulate(src, dst, primes, shifts, coefs, powtab, tail):
    nd = src.shape[1]
    ne = dst.shape[1]
    q = coefs.shape[0]
    Z = src.shape[4]
    P = primes[None, None, :, None]
    for e in range(ne):
        acc = dst[:, e]
        for d in range(nd):
            for c in range(q):
                w = coefs[c] * powtab[:, c, e + d + tail] % primes
                if not w.any():
                    continue
                if Z == 1 or not shifts[c].any():
                    acc = (acc + w[None, None, :, None] * src[:, d]) % P
                    continue
                for lane in range(len(primes)):
                    s = int(shifts[c, lane])
                    if s >= Z:
                        continue
                    acc[:, :, lane, s:] = (acc[:, :, lane, s:]
                                           + int(w[lane]) * src[:, d, :, lane, :Z - s]) % int(primes[lane])
        dst[:, e] = acc


def canonical_rows(rows, cols, starts, q):
    k, w = rows.shape
    for g in range(len(starts) - 1):
        grp = cols[starts[g]:starts[g + 1]]
        rows[:, grp] = np.sort(rows[:, grp], axis=1)
    label = np.zeros((k, q + 1), dtype=rows.dtype)
    used = np.zeros(k, dtype=rows.dtype)
    idx = np.arange(k)
    for c in range(w):
        vals = rows[:, c]
        cur = label[idx, vals]
        fresh = cur == 0
        used[fresh] += 1
        label[idx[fresh], vals[fresh]] = used[fresh]
        rows[:, c] = label[idx, vals]
