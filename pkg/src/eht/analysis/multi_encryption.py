"""Averaging attack on repeated encryptions of one plaintext block."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ..cipher import Ciphertext
from ..keygen import PublicKey
from ..modmath import NotInvertible, centered, matmul_mod, matrix_inverse

MAX_ROW_SWAPS = 32


class Insufficient(Exception):
    """The averaged samples do not determine a codeword."""


class SingularSubmatrix(ArithmeticError):
    pass


def averaged_rows(Y: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Estimate A_j x for every row j from samples y_ij = A_j x - e_ij.

    Samples are lifted to integers around the first one before averaging so
    that values straddling 0 = q do not cancel.  Returns the rounded
    estimates and their distance from the nearest integer (small is good).
    """
    ref = Y[0]
    mean = ref + centered(Y - ref, q).mean(axis=0)
    nearest = np.rint(mean)
    return np.mod(nearest.astype(np.int64), q), np.abs(mean - nearest)


def _solve(A: np.ndarray, est: np.ndarray, order: np.ndarray, n: int, q: int) -> np.ndarray:
    rows = list(order[:n])
    spare = iter(order[n:])
    for _ in range(MAX_ROW_SWAPS):
        try:
            inv = matrix_inverse(A[rows], q)
            return matmul_mod(inv, est[rows], q)
        except NotInvertible:
            # replace the least trusted row by the next candidate
            rows[-1] = next(spare)
    raise SingularSubmatrix(f"no invertible {n} x {n} row subset after {MAX_ROW_SWAPS} swaps")


def multiple_encryption_attack(ciphertexts: Sequence[Ciphertext], pk: PublicKey) -> np.ndarray:
    """Recover x from s encryptions of the same block.

    Each row mean has error sigma / sqrt(s); the n rows whose means sit
    closest to an integer are solved for x, which must be a codeword.
    """
    if not ciphertexts:
        raise Insufficient("no ciphertexts")
    p = pk.params
    Y = np.stack([np.asarray(c.y, dtype=np.int64) for c in ciphertexts])
    est, dist = averaged_rows(Y, p.q)
    order = np.argsort(dist, kind="stable")
    x = _solve(pk.A, est, order, p.n, p.q)
    if not pk.code.is_codeword(x):
        raise Insufficient("recovered vector is not a codeword")
    return x
