"""Exhaustive check that very short vectors of a row lattice are collinear.

For t = (1, t_2, ..., t_k) the lattice is {v in Z^k : v_i = t_i v_1 mod q}.
Any two of its vectors with all entries below sqrt(q/2) in absolute value
have 2x2 minors divisible by q yet smaller than q, hence zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..modmath import centered

MAX_Q = 211
MAX_K = 4


class EnumerationTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CollinearityVerdict:
    collinear: bool
    vectors: np.ndarray  # the nonzero short vectors, one per row
    generator: tuple[int, ...] | None  # primitive vector spanning them
    counterexample: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def short_vectors(q: int, t) -> np.ndarray:
    """Nonzero lattice vectors with every |entry| < sqrt(q/2)."""
    t = np.concatenate([[1], np.asarray(t, dtype=np.int64)])
    bound = math.sqrt(q / 2)
    top = math.ceil(bound) - 1  # largest integer strictly below the bound
    v1 = np.arange(-top, top + 1, dtype=np.int64)
    v1 = v1[v1 != 0]
    # |v_i| < q/2, so the centered lift is the only candidate for each entry
    V = centered(v1[:, None] * t[None, :], q)
    return V[(np.abs(V) < bound).all(axis=1)]


def lemma1_collinearity_check(q: int, k: int, t) -> CollinearityVerdict:
    """Enumerate all short vectors and test that they lie on one line."""
    t = tuple(int(x) % q for x in t)
    if len(t) != k - 1:
        raise ValueError(f"need k-1 = {k - 1} multipliers, got {len(t)}")
    if q > MAX_Q or k > MAX_K:
        raise EnumerationTooLarge(f"enumeration limited to q <= {MAX_Q}, k <= {MAX_K}")
    V = short_vectors(q, t)
    if len(V) == 0:
        return CollinearityVerdict(True, V, None)
    g = np.gcd.reduce(V[0])
    gen = V[0] // g
    # v is a multiple of gen iff every minor v_i gen_j - v_j gen_i vanishes
    minors = V[:, :, None] * gen[None, None, :] - V[:, None, :] * gen[None, :, None]
    bad = np.flatnonzero(minors.reshape(len(V), -1).any(axis=1))
    if bad.size:
        pair = (tuple(map(int, V[0])), tuple(map(int, V[bad[0]])))
        return CollinearityVerdict(False, V, None, pair)
    return CollinearityVerdict(True, V, tuple(map(int, gen)))
