"""Key generation: B, T, C = P* (I_r x H) Q and the public matrix A = C^{-1} T B."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .codec import RedundancyCode, code_seed_from
from .hadamard import CTransform
from .modmath import NotInvertible, centered, matmul_mod, matrix_inverse
from .params import InvalidParams, ParameterSet
from .sampling import Rng, random_seed, sample_permutation, sample_uniform_residue

T_COLUMN_RETRIES = 1000
B_RETRIES = 100


class ResamplingExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class PrivateKey:
    params: ParameterSet
    B: np.ndarray
    B_inv: np.ndarray
    t: np.ndarray  # shape (k, n); t[j, i] multiplies b_i in row j of chunk i
    p_star: np.ndarray
    q_perm: np.ndarray
    code: RedundancyCode

    @property
    def C(self) -> CTransform:
        return CTransform(self.p_star, self.q_perm, self.params.lambda_sq, self.params.q)

    def T_dense(self) -> np.ndarray:
        p = self.params
        T = np.zeros((p.kn, p.n), dtype=np.int64)
        for i in range(p.n):
            T[i * p.k:(i + 1) * p.k, i] = self.t[:, i]
        return T


@dataclass(frozen=True)
class PublicKey:
    params: ParameterSet
    A: np.ndarray
    code: RedundancyCode

    @cached_property
    def A_float(self) -> np.ndarray:
        """A as float64 for exact BLAS products (checked by matmul_mod's bound)."""
        return self.A.astype(np.float64)

    @cached_property
    def A_u16(self) -> np.ndarray:
        """A as uint16; a quarter of the memory traffic for single-block products."""
        return np.ascontiguousarray(self.A, dtype=np.uint16)


def build_p_star(n: int, k: int, lambda_sq: int, rng: Rng | None = None, mapping=None) -> np.ndarray:
    """Row permutation spreading each Hadamard block over distinct chunks.

    Row ``l`` of block ``j`` (0-based position ``j*lambda_sq + l``) is sent
    into chunk ``mapping[pos]``, i.e. to one of the rows
    ``k*mapping[pos] .. k*mapping[pos] + k - 1``.  Without an explicit
    mapping, one is drawn by taking k random orderings of the n chunks and
    cutting each into consecutive groups of ``lambda_sq``.  With an explicit
    mapping and no rng, slots inside a chunk are filled in order.
    """
    if n % lambda_sq:
        raise InvalidParams(f"lambda^2={lambda_sq} must divide n={n}")
    kn = k * n
    if mapping is None:
        if rng is None:
            raise ValueError("need an rng or an explicit mapping")
        mapping = np.concatenate([sample_permutation(n, rng) for _ in range(k)])
    mapping = np.asarray(mapping, dtype=np.int64)
    if mapping.shape != (kn,):
        raise InvalidParams(f"mapping must have {kn} entries")
    blocks = mapping.reshape(-1, lambda_sq)
    if any(len(set(b.tolist())) != lambda_sq for b in blocks):
        raise InvalidParams("mapping repeats a chunk inside one block")
    if not np.array_equal(np.bincount(mapping, minlength=n), np.full(n, k)):
        raise InvalidParams("every chunk must receive exactly k rows")
    slots = np.tile(np.arange(k), (n, 1))
    if rng is not None:
        slots = rng.gen.permuted(slots, axis=1)
    used = np.zeros(n, dtype=np.int64)
    p_star = np.empty(kn, dtype=np.int64)
    for pos, chunk in enumerate(mapping):
        p_star[pos] = k * chunk + slots[chunk, used[chunk]]
        used[chunk] += 1
    return p_star


def chunk_spread_ok(p_star: np.ndarray, k: int, lambda_sq: int) -> bool:
    chunks = (np.asarray(p_star) // k).reshape(-1, lambda_sq)
    return all(len(set(c.tolist())) == lambda_sq for c in chunks)


def column_margin(t_col, q: int) -> int:
    """min over a != 0 of sum_j centered(a * t_j)^2."""
    a = np.arange(1, q, dtype=np.int64)[:, None]
    x = centered(a * np.asarray(t_col, dtype=np.int64)[None, :], q)
    return int((x * x).sum(axis=1).min())


def column_ok(t_col, params: ParameterSet) -> bool:
    t_col = np.asarray(t_col, dtype=np.int64)
    if (t_col % params.q == 0).any() or len(set(t_col.tolist())) != len(t_col):
        return False
    return column_margin(t_col, params.q) >= params.delta_sq


def generate_T(params: ParameterSet, rng: Rng) -> np.ndarray:
    """k x n table of nonzero residues, each column distinct and robust.

    A column is robust when no nonzero multiple a*t lands entirely inside
    the acceptance ball of radius delta, so that with zero noise only the
    true b_i passes the decryption test.
    """
    k, n, q = params.k, params.n, params.q
    t = np.empty((k, n), dtype=np.int64)
    for i in range(n):
        for _ in range(T_COLUMN_RETRIES):
            col = rng.gen.integers(1, q, size=k, dtype=np.int64)
            if column_ok(col, params):
                t[:, i] = col
                break
        else:
            raise ResamplingExhausted(f"no admissible column of T after {T_COLUMN_RETRIES} tries")
    return t


def generate_B(n: int, q: int, rng: Rng) -> tuple[np.ndarray, np.ndarray]:
    for _ in range(B_RETRIES):
        B = sample_uniform_residue(q, rng, size=(n, n))
        try:
            return B, matrix_inverse(B, q)
        except NotInvertible:
            continue
    raise ResamplingExhausted("could not sample an invertible B")


def apply_C(sk_or_c, v) -> np.ndarray:
    c = sk_or_c.C if isinstance(sk_or_c, PrivateKey) else sk_or_c
    return c.apply(v)


def derive_public_key(sk: PrivateKey) -> PublicKey:
    p = sk.params
    # row k*i + j of T B is t[j, i] * B_i
    TB = (sk.t.T[:, :, None] * sk.B[:, None, :]).reshape(p.kn, p.n) % p.q
    A = sk.C.apply_inverse(TB)
    return PublicKey(p, A, sk.code)


def keygen(params: ParameterSet, seed: bytes | None = None) -> tuple[PrivateKey, PublicKey]:
    if seed is None:
        seed = random_seed()
    root = Rng(seed)
    B, B_inv = generate_B(params.n, params.q, root.derive("B"))
    t = generate_T(params, root.derive("T"))
    q_perm = sample_permutation(params.kn, root.derive("Q"))
    p_star = build_p_star(params.n, params.k, params.lambda_sq, root.derive("P*"))
    code = RedundancyCode.from_seed(params.n, params.q, code_seed_from(seed))
    sk = PrivateKey(params, B, B_inv, t, p_star, q_perm, code)
    return sk, derive_public_key(sk)


def check_key_pair(sk: PrivateKey, pk: PublicKey) -> bool:
    """C A == T B (mod q), verified column by column through apply_C."""
    p = sk.params
    lhs = sk.C.apply(pk.A)
    rhs = matmul_mod(sk.T_dense(), sk.B, p.q)
    return bool(np.array_equal(lhs, rhs))
