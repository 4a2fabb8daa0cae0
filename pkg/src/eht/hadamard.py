"""Walsh-Hadamard transforms and the structured matrix C = P (I_r x H) Q."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modmath import DimensionMismatch


def hadamard_matrix(size: int) -> np.ndarray:
    """Sylvester Hadamard matrix, entry (a, b) = (-1)^popcount(a & b)."""
    if size < 1 or size & (size - 1):
        raise ValueError("size must be a power of two")
    a = np.arange(size)
    bits = np.bitwise_and(a[:, None], a[None, :])
    parity = np.zeros_like(bits)
    while bits.any():
        parity ^= bits & 1
        bits >>= 1
    return 1 - 2 * parity


def fwht_blocks(x: np.ndarray, block: int) -> np.ndarray:
    """Unnormalised FWHT of each consecutive length-``block`` slice along axis 0.

    Integer input stays integer; values grow by at most a factor ``block``.
    """
    x = np.asarray(x)
    n = x.shape[0]
    if n % block:
        raise DimensionMismatch(f"length {n} is not a multiple of block size {block}")
    rest = x.shape[1:]
    y = x.reshape((n // block, block) + rest).copy()
    h = 1
    while h < block:
        y = y.reshape((n // block, block // (2 * h), 2, h) + rest)
        lo = y[:, :, 0].copy()
        hi = y[:, :, 1]
        y[:, :, 0] += hi
        y[:, :, 1] = lo - hi
        h *= 2
    return y.reshape(x.shape)


@dataclass(frozen=True)
class CTransform:
    """Compact form of C.

    ``p_star[l]`` is the row of C that receives row ``l`` of the block
    diagonal Hadamard matrix; ``q_perm`` permutes columns, ``(Q v)[i] =
    v[q_perm[i]]``.  Arrays passed to the apply methods have the kn axis
    first; trailing axes are carried along.
    """

    p_star: np.ndarray
    q_perm: np.ndarray
    block: int
    q: int

    @property
    def size(self) -> int:
        return len(self.p_star)

    def _check(self, v):
        v = np.asarray(v, dtype=np.int64)
        if v.shape[0] != self.size:
            raise DimensionMismatch(f"expected leading dimension {self.size}, got {v.shape[0]}")
        return v

    def apply(self, v: np.ndarray) -> np.ndarray:
        """C v mod q."""
        v = self._check(v)
        w = fwht_blocks(v[self.q_perm], self.block)
        out = np.empty_like(w)
        out[self.p_star] = w
        return np.mod(out, self.q)

    def apply_transpose(self, v: np.ndarray) -> np.ndarray:
        """C^T v mod q; C C^T = C^T C = block * I over the integers."""
        v = self._check(v)
        w = fwht_blocks(v[self.p_star], self.block)
        out = np.empty_like(w)
        out[self.q_perm] = w
        return np.mod(out, self.q)

    def apply_inverse(self, v: np.ndarray) -> np.ndarray:
        """C^{-1} v mod q, using C^{-1} = 2^{-s} C^T."""
        scale = pow(self.block, -1, self.q)
        return self.apply_transpose(v) * scale % self.q

    def dense(self, dtype=np.int64) -> np.ndarray:
        """Materialise C as a signed integer matrix."""
        n = self.size
        X = np.kron(np.eye(n // self.block, dtype=dtype), hadamard_matrix(self.block).astype(dtype))
        XQ = np.empty_like(X)
        XQ[:, self.q_perm] = X  # (X Q)[:, q_perm[i]] = X[:, i]
        C = np.empty_like(X)
        C[self.p_star] = XQ
        return C
