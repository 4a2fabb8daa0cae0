"""Encryption y = A x - e and statistical decryption."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._kernels import argmax_scan, matvec_mod, threshold_scan
from .codec import CodeReject, LengthMismatch, check_and_decode, encode_plaintext
from .keygen import PrivateKey, PublicKey
from .modmath import centered, matmul_mod
from .params import ParameterSet
from .sampling import Rng, sample_centered_gaussian

# Bound on candidate combinations tried against the code for one block.
MAX_COMBINATIONS = 1 << 16


@dataclass(frozen=True)
class Ciphertext:
    y: np.ndarray


class Status(enum.Enum):
    SUCCESS = "success"
    REJECT_NO_CANDIDATE = "reject-no-candidate"
    REJECT_AMBIGUOUS = "reject-ambiguous"
    CODE_REJECT = "code-reject"


@dataclass(frozen=True)
class DecryptionOutcome:
    status: Status
    plaintext: bytes | None = None
    index: int | None = None  # first offending coordinate for scan rejects

    @property
    def ok(self) -> bool:
        return self.status is Status.SUCCESS


@dataclass(frozen=True)
class StatisticProfile:
    sigma_lambda: float
    log_const: float
    delta_sq: float
    q: int

    @classmethod
    def from_params(cls, p: ParameterSet) -> "StatisticProfile":
        return cls(p.sigma_lambda, p.log_const, p.delta_sq, p.q)


def coordinate_statistic(profile: StatisticProfile, t_col, z_chunk, a: int) -> float:
    """S_i(a) = sum_j [log_const - x_j^2 / (2 (sigma lambda)^2)], x_j = centered(t_j a - z_j)."""
    x = centered(np.asarray(t_col, dtype=np.int64) * int(a) - np.asarray(z_chunk, dtype=np.int64), profile.q)
    sq = float((x.astype(np.float64) ** 2).sum())
    return len(x) * profile.log_const - sq / (2 * profile.sigma_lambda**2)


def statistic_threshold_agrees(profile: StatisticProfile, t_col, z_chunk, a: int) -> bool:
    """S_i(a) > 0 agrees with the ball test sum x_j^2 < delta^2."""
    x = centered(np.asarray(t_col, dtype=np.int64) * int(a) - np.asarray(z_chunk, dtype=np.int64), profile.q)
    ball = float((x.astype(np.float64) ** 2).sum()) < profile.delta_sq
    return (coordinate_statistic(profile, t_col, z_chunk, a) > 0) == ball


# -- encryption --------------------------------------------------------------

def _noise(params: ParameterSet, rng: Rng, shape) -> np.ndarray:
    return sample_centered_gaussian(params.sigma, rng, shape)


def encrypt_residues(pk: PublicKey, x, rng: Rng | None = None, zero_noise: bool = False) -> Ciphertext:
    p = pk.params
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (p.n,):
        raise LengthMismatch(f"plaintext block must have {p.n} residues")
    y = matvec_mod(pk.A_u16, x, p.q)
    if not zero_noise:
        y = np.mod(y - _noise(p, rng or Rng(), p.kn), p.q)
    return Ciphertext(y)


def encrypt(pk: PublicKey, msg: bytes, rng: Rng | None = None, zero_noise: bool = False) -> Ciphertext:
    """Encode ``msg`` as a codeword and encrypt it.

    ``zero_noise`` skips the error vector; it exists for tests only.
    """
    return encrypt_residues(pk, encode_plaintext(msg, pk.code), rng, zero_noise)


def encrypt_batch(pk: PublicKey, X: np.ndarray, rng: Rng, zero_noise: bool = False) -> np.ndarray:
    """Encrypt the rows of X (shape (N, n)); returns ciphertexts as rows (N, kn)."""
    p = pk.params
    Y = matmul_mod(np.asarray(X, dtype=np.int64), pk.A_float.T, p.q)
    if not zero_noise:
        Y = np.mod(Y - _noise(p, rng, Y.shape), p.q)
    return Y


# -- decryption --------------------------------------------------------------

def transform(sk: PrivateKey, Y: np.ndarray) -> np.ndarray:
    """z = C y for each row of Y."""
    Y = np.atleast_2d(np.asarray(Y, dtype=np.int64))
    return np.ascontiguousarray(sk.C.apply(Y.T).T)


def scan(sk: PrivateKey, Y: np.ndarray):
    """Ball test over all residues for every coordinate; returns (Z, count, first)."""
    p = sk.params
    Z = transform(sk, Y)
    count, first = threshold_scan(Z, sk.t, p.q, p.delta_sq)
    return Z, count, first


def accepted_residues(sk: PrivateKey, z: np.ndarray, i: int) -> np.ndarray:
    """All a with sum_j centered(t_j a - z_j)^2 < delta^2 for coordinate i."""
    p = sk.params
    a = np.arange(p.q, dtype=np.int64)[:, None]
    x = centered(a * sk.t[:, i][None, :] - z[p.k * i:p.k * (i + 1)][None, :], p.q)
    return np.flatnonzero((x * x).sum(axis=1) < p.delta_sq)


def _syndrome_map(sk: PrivateKey) -> np.ndarray:
    # syndrome(B^{-1} b) = [parity | -I] B^{-1} b
    code = sk.code
    H = np.concatenate([code.parity, -np.eye(2, dtype=np.int64)], axis=1) % code.q
    return matmul_mod(H, sk.B_inv, code.q)


def _finish(sk: PrivateKey, b: np.ndarray) -> DecryptionOutcome:
    x = matmul_mod(sk.B_inv, b, sk.params.q)
    try:
        return DecryptionOutcome(Status.SUCCESS, check_and_decode(x, sk.code))
    except CodeReject:
        return DecryptionOutcome(Status.CODE_REJECT)


def _resolve(sk: PrivateKey, z, first, many) -> DecryptionOutcome:
    """Pick the unique codeword among all combinations of accepted residues."""
    q = sk.params.q
    cands = [accepted_residues(sk, z, int(i)) for i in many]
    sizes = [len(c) for c in cands]
    if np.prod(sizes, dtype=float) > MAX_COMBINATIONS:
        return DecryptionOutcome(Status.REJECT_AMBIGUOUS, index=int(many[0]))
    G = _syndrome_map(sk)
    base = np.array(first, dtype=np.int64)
    base[many] = 0
    syn = matmul_mod(G, base, q)[:, None]
    for i, c in zip(many, cands):
        syn = ((syn[:, :, None] + (G[:, i][:, None] * c[None, :])[:, None, :]) % q).reshape(2, -1)
    hits = np.flatnonzero(~syn.any(axis=0))
    if hits.size == 0:
        return DecryptionOutcome(Status.CODE_REJECT)
    if hits.size > 1:
        return DecryptionOutcome(Status.REJECT_AMBIGUOUS, index=int(many[0]))
    for i, c, j in zip(many, cands, np.unravel_index(hits[0], sizes)):
        base[i] = c[j]
    return _finish(sk, base)


def outcome_from_scan(sk: PrivateKey, z, count, first) -> DecryptionOutcome:
    """Threshold decision for one block from its scan results."""
    none = np.flatnonzero(count == 0)
    if none.size:
        return DecryptionOutcome(Status.REJECT_NO_CANDIDATE, index=int(none[0]))
    many = np.flatnonzero(count > 1)
    if many.size:
        return _resolve(sk, z, first, many)
    return _finish(sk, np.asarray(first, dtype=np.int64))


def decrypt(sk: PrivateKey, ct: Ciphertext, rule: str = "threshold") -> DecryptionOutcome:
    """Recover the plaintext bytes.

    With the default threshold rule, b_i = a is accepted when S_i(a) > 0,
    equivalently sum_j x_j^2 < delta^2.  A coordinate with no accepted
    residue is a reject.  When coordinates accept several residues, every
    combination is tried and the unique one whose x = B^{-1} b is a codeword
    wins; no codeword is a code reject, several is an ambiguous reject.
    """
    p = sk.params
    y = np.asarray(ct.y, dtype=np.int64)
    if y.shape != (p.kn,):
        raise LengthMismatch(f"ciphertext must have {p.kn} residues")
    if rule == "argmax":
        best, _ = argmax_scan(transform(sk, y), sk.t, p.q)
        return _finish(sk, best[0])
    if rule != "threshold":
        raise ValueError(f"unknown decision rule {rule!r}")
    Z, count, first = scan(sk, y)
    return outcome_from_scan(sk, Z[0], count[0], first[0])


def decrypt_argmax(sk: PrivateKey, ct: Ciphertext) -> DecryptionOutcome:
    """Per coordinate take the residue maximising S_i(a); no ball test."""
    return decrypt(sk, ct, rule="argmax")
