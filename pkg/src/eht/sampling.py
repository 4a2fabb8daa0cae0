"""Seeded randomness for key generation and encryption.

A 32-byte master seed is expanded into independent streams by hashing the
seed together with a label.  Each stream drives a numpy PCG64 generator.
"""
from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass

import numpy as np

SEED_BYTES = 32


def parse_seed(text: str) -> bytes:
    """Decode a 64-hex-character seed."""
    text = text.strip()
    if len(text) != 2 * SEED_BYTES:
        raise ValueError(f"seed must be {2 * SEED_BYTES} hex characters, got {len(text)}")
    return bytes.fromhex(text)


def random_seed() -> bytes:
    return os.urandom(SEED_BYTES)


class Rng:
    """Deterministic generator identified by a 32-byte seed.

    ``derive(label)`` returns an independent child stream; the same seed and
    label always give the same child.
    """

    def __init__(self, seed: bytes | None = None):
        if seed is None:
            seed = random_seed()
        if len(seed) != SEED_BYTES:
            raise ValueError(f"seed must be {SEED_BYTES} bytes")
        self.seed = bytes(seed)
        words = np.frombuffer(hashlib.sha256(b"eht-rng" + self.seed).digest(), dtype="<u4")
        self.gen = np.random.Generator(np.random.PCG64(words.astype(np.uint64).tolist()))

    def derive(self, label: str | bytes) -> "Rng":
        if isinstance(label, str):
            label = label.encode()
        child = hashlib.sha256(b"eht-derive" + self.seed + len(label).to_bytes(2, "little") + label)
        return Rng(child.digest())

    @classmethod
    def from_int(cls, value: int) -> "Rng":
        return cls(hashlib.sha256(value.to_bytes(16, "little", signed=True)).digest())

    def token_bytes(self, n: int) -> bytes:
        return self.gen.bytes(n)


@dataclass(frozen=True)
class GaussianParams:
    sigma: float
    q: int

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if not self.sigma < self.q / 8:
            raise ValueError(f"sigma={self.sigma} too large for q={self.q} (need sigma < q/8)")


def round_half_away(b: np.ndarray) -> np.ndarray:
    return (np.sign(b) * np.floor(np.abs(b) + 0.5)).astype(np.int64)


def sample_gaussian_residue(gp: GaussianParams, rng: Rng, size=None):
    """Continuous normal with std ``gp.sigma``, rounded, reduced mod q."""
    b = rng.gen.standard_normal(size) * gp.sigma
    a = np.mod(round_half_away(np.asarray(b)), gp.q)
    return int(a) if size is None else a


def sample_centered_gaussian(sigma: float, rng: Rng, size) -> np.ndarray:
    """Rounded normal values as signed integers (not reduced)."""
    return round_half_away(rng.gen.standard_normal(size) * sigma)


def sample_uniform_residue(q: int, rng: Rng, size=None):
    # numpy's bounded integers use Lemire's rejection method, so no modulo bias
    if q < 2:
        raise ValueError("q must be at least 2")
    out = rng.gen.integers(0, q, size=size, dtype=np.int64)
    return int(out) if size is None else out


def sample_permutation(size: int, rng: Rng) -> np.ndarray:
    """Uniform permutation of range(size) (Fisher-Yates)."""
    if size < 1:
        raise ValueError("size must be positive")
    return rng.gen.permutation(size).astype(np.int64)
