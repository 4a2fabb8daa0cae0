"""Compiled inner loops of decryption: the per-coordinate residue scan."""
from __future__ import annotations

import numba
import numpy as np


HEAD = 6  # rows evaluated for every residue; the rest only while under the bound


@numba.njit(cache=True, nogil=True)
def threshold_scan(Z, t, q, delta_sq):
    """Ball test for every coordinate and residue a = 0..q-1.

    Returns (count, first): how many residues pass sum_j x_j^2 < delta^2,
    x_j = centered(t_j a - z_j), and the smallest passing residue (-1 if
    none).  The head rows run as a branch-light float64 loop over a, which
    is exact since all intermediates stay far below 2^53.
    """
    N = Z.shape[0]
    k, n = t.shape
    h = min(HEAD, k)
    qf = float(q)
    inv_q = 1.0 / qf
    half = (q - 1) // 2
    ds = float(delta_sq)
    av = np.arange(q).astype(np.float64)
    acc = np.empty(q)
    count = np.empty((N, n), dtype=np.int32)
    first = np.empty((N, n), dtype=np.int64)
    for s in range(N):
        for i in range(n):
            acc[:] = 0.0
            for j in range(h):
                tj = float(t[j, i])
                cj = float((q - Z[s, k * i + j]) % q)
                for a in range(q):
                    x = tj * av[a] + cj
                    x -= qf * np.floor(x * inv_q)
                    if x > half:
                        x -= qf
                    acc[a] += x * x
            cnt = 0
            fa = -1
            for a in range(q):
                v = acc[a]
                if v >= ds:
                    continue
                for j in range(h, k):
                    x = (t[j, i] * a + q - Z[s, k * i + j]) % q
                    if x > half:
                        x -= q
                    v += x * x
                    if v >= ds:
                        break
                if v < ds:
                    if cnt == 0:
                        fa = a
                    cnt += 1
            count[s, i] = cnt
            first[s, i] = fa
    return count, first


@numba.njit(cache=True, nogil=True)
def _full_one(z, t, q, best, best_sq):
    k, n = t.shape
    half = (q - 1) // 2
    r = np.empty(k, dtype=np.int64)
    for i in range(n):
        # incremental form: r_j(a + 1) = r_j(a) + t_j mod q
        for j in range(k):
            r[j] = (q - z[k * i + j]) % q
        bsum = np.int64(1) << 62
        ba = 0
        for a in range(q):
            acc = 0
            for j in range(k):
                x = r[j]
                if x > half:
                    x -= q
                acc += x * x
                nr = r[j] + t[j, i]
                if nr >= q:
                    nr -= q
                r[j] = nr
            if acc < bsum:
                bsum = acc
                ba = a
        best[i] = ba
        best_sq[i] = bsum


@numba.njit(cache=True, nogil=True)
def argmax_scan(Z, t, q):
    """Residue with the smallest sum_j x_j^2 (largest statistic) per coordinate."""
    N = Z.shape[0]
    n = t.shape[1]
    best = np.empty((N, n), dtype=np.int64)
    best_sq = np.empty((N, n), dtype=np.int64)
    for s in range(N):
        _full_one(Z[s], t, q, best[s], best_sq[s])
    return best, best_sq


@numba.njit(cache=True, nogil=True)
def matvec_mod(A, x, q):
    """A x mod q for a compact (e.g. uint16) residue matrix A and int64 x."""
    m, n = A.shape
    out = np.empty(m, dtype=np.int64)
    for r in range(m):
        acc = 0
        for c in range(n):
            acc += np.int64(A[r, c]) * x[c]
        out[r] = acc % q
    return out
