"""Exact arithmetic over Z_q for small primes q < 2**16.

Matrices and vectors are plain numpy integer arrays holding residues in
[0, q).  Products of two residues stay below 2**32, and dot products are
either accumulated in int64 or, for large operands, in float64 where every
partial sum is still an exact integer (< 2**53).
"""
from __future__ import annotations

import numpy as np


class ZeroInverse(ArithmeticError):
    pass


class NotInvertible(ArithmeticError):
    pass


class DimensionMismatch(ValueError):
    pass


def centered(a, q: int):
    """Representative of ``a`` modulo odd ``q`` in [-(q-1)/2, (q-1)/2].

    Works elementwise on arrays.
    """
    half = (q - 1) // 2
    if isinstance(a, (int, np.integer)):
        r = int(a) % q
        return r - q if r > half else r
    r = np.mod(a, q)
    return np.where(r > half, r - q, r)


def mod_inverse(a: int, q: int) -> int:
    a = int(a) % q
    if a == 0:
        raise ZeroInverse(f"0 has no inverse modulo {q}")
    return pow(a, -1, q)


def as_residues(M, q: int) -> np.ndarray:
    return np.mod(np.asarray(M, dtype=np.int64), q)


def matmul_mod(M: np.ndarray, X: np.ndarray, q: int) -> np.ndarray:
    """``M @ X mod q`` for residue arrays, exact for any q."""
    M = np.asarray(M)
    X = np.asarray(X)
    if M.shape[-1] != X.shape[0]:
        raise DimensionMismatch(f"cannot multiply {M.shape} by {X.shape}")
    inner = M.shape[-1]
    if inner * (q - 1) ** 2 < 2**53:
        # BLAS path: every partial sum is an integer below 2**53
        P = M.astype(np.float64, copy=False) @ X.astype(np.float64, copy=False)
        return np.mod(P, q).astype(np.int64)
    if inner * (q - 1) ** 2 < 2**63:
        return np.mod(M.astype(np.int64, copy=False) @ X.astype(np.int64, copy=False), q)
    # Python integers: slow but exact for any modulus
    return np.mod(M.astype(object) @ X.astype(object), q).astype(np.int64)


def mat_vec_mul(M: np.ndarray, v, q: int) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    if v.ndim != 1:
        raise DimensionMismatch("expected a vector")
    return matmul_mod(M, v, q)


def matrix_inverse(M, q: int) -> np.ndarray:
    """Gauss-Jordan inverse of a square matrix modulo prime ``q``.

    Raises NotInvertible when M is singular mod q.
    """
    M = as_residues(M, q)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got {M.shape}")
    n = M.shape[0]
    aug = np.concatenate([M, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        nz = np.flatnonzero(aug[col:, col])
        if nz.size == 0:
            raise NotInvertible(f"rank deficient at column {col}")
        piv = col + nz[0]
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] = aug[col] * pow(int(aug[col, col]), -1, q) % q
        factors = aug[:, col].copy()
        factors[col] = 0
        aug -= np.outer(factors, aug[col])
        np.mod(aug, q, out=aug)
    return aug[:, n:].copy()


def solve_linear(B_inv: np.ndarray, b, q: int) -> np.ndarray:
    """Solve ``B x = b`` given the precomputed inverse of B."""
    b = np.asarray(b, dtype=np.int64)
    if B_inv.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"inverse has {B_inv.shape[1]} columns, rhs has {b.shape[0]} rows")
    return matmul_mod(B_inv, b, q)


def det_mod(M, q: int) -> int:
    """Determinant mod q by plain row reduction (used as an oracle)."""
    M = [list(map(int, row)) for row in as_residues(M, q)]
    n = len(M)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] % q), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % q
        inv = pow(M[c][c], -1, q)
        for r in range(c + 1, n):
            f = M[r][c] * inv % q
            if f:
                M[r] = [(x - f * y) % q for x, y in zip(M[r], M[c])]
    return det % q


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True
