"""Plaintext redundancy code and bit-packed wire formats.

File layout (all multi-byte integers little-endian)::

    header   16 bytes   b"EH" | version (1) | kind (1) | params name (12, NUL padded)
    body     kind-specific, see dump_* below

Residues are packed as fixed-width ceil(log2 q)-bit fields into an LSB-first
bit stream, zero padded to a whole byte.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .params import ParameterSet, get_params
from .sampling import Rng, SEED_BYTES

MAGIC = b"EH"
VERSION = 1
HEADER_BYTES = 16
KIND_PUBLIC = b"P"
KIND_PRIVATE = b"S"
KIND_CIPHERTEXT = b"C"


class LengthMismatch(ValueError):
    pass


class ValueOutOfRange(ValueError):
    pass


class FormatError(ValueError):
    pass


class CodeReject(Exception):
    """Parity check failed on a decrypted block."""


# -- redundancy code ---------------------------------------------------------

@dataclass(frozen=True)
class RedundancyCode:
    """Systematic [n, n-2] code over Z_q.

    A codeword is ``(x_1..x_{n-2}, p_1, p_2)`` with ``p_t = parity[t] . x``.
    Parity coefficients are nonzero, so changing a single information
    residue always breaks both equations.
    """

    n: int
    q: int
    parity: np.ndarray
    seed: bytes = b""

    @classmethod
    def from_seed(cls, n: int, q: int, seed: bytes) -> "RedundancyCode":
        rng = Rng(seed).derive("code")
        parity = rng.gen.integers(1, q, size=(2, n - 2), dtype=np.int64)
        return cls(n, q, parity, bytes(seed))

    @property
    def dimension(self) -> int:
        return self.n - 2

    def syndrome(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return (self.parity @ x[: self.n - 2] - x[self.n - 2:]) % self.q

    def is_codeword(self, x) -> bool:
        return not self.syndrome(x).any()

    def encode_residues(self, info) -> np.ndarray:
        info = np.asarray(info, dtype=np.int64) % self.q
        if info.shape[-1] != self.n - 2:
            raise LengthMismatch(f"need {self.n - 2} information residues")
        par = np.mod(info @ self.parity.T, self.q)
        return np.concatenate([info, par], axis=-1)


def message_capacity(params: ParameterSet) -> int:
    """Bytes per block: floor((n-2) log2(q) / 8)."""
    return math.floor((params.n - 2) * math.log2(params.q) / 8)


def _capacity(n: int, q: int) -> int:
    return math.floor((n - 2) * math.log2(q) / 8)


def encode_plaintext(msg: bytes, code: RedundancyCode) -> np.ndarray:
    """Message bytes -> codeword of length n.

    The message is read as a little-endian integer and written in base q,
    which packs floor((n-2) log2 q / 8) bytes into the n-2 information digits.
    """
    cap = _capacity(code.n, code.q)
    if len(msg) != cap:
        raise LengthMismatch(f"message must be {cap} bytes, got {len(msg)}")
    value = int.from_bytes(msg, "little")
    digits = np.empty(code.n - 2, dtype=np.int64)
    for i in range(code.n - 2):
        value, digits[i] = divmod(value, code.q)
    return code.encode_residues(digits)


def check_and_decode(x, code: RedundancyCode) -> bytes:
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (code.n,):
        raise LengthMismatch(f"expected {code.n} residues")
    if not code.is_codeword(x):
        raise CodeReject("parity check failed")
    cap = _capacity(code.n, code.q)
    value = 0
    for d in reversed(x[: code.n - 2].tolist()):
        value = value * code.q + d
    if value >= 1 << (8 * cap):
        # a valid codeword whose digits do not come from any message
        raise CodeReject("information digits out of message range")
    return value.to_bytes(cap, "little")


# -- bit packing -------------------------------------------------------------

def bit_width(q: int) -> int:
    return (q - 1).bit_length()


def packed_size(count: int, width: int) -> int:
    return (count * width + 7) // 8


def pack(values, width: int) -> bytes:
    v = np.asarray(values, dtype=np.int64).ravel()
    if v.size and (v.min() < 0 or v.max() >= 1 << width):
        raise ValueOutOfRange(f"values must fit in {width} bits")
    bits = ((v[:, None] >> np.arange(width)) & 1).astype(np.uint8).ravel()
    return np.packbits(bits, bitorder="little").tobytes()


def unpack(data: bytes, width: int, count: int) -> np.ndarray:
    if len(data) < packed_size(count, width):
        raise LengthMismatch(f"need {packed_size(count, width)} bytes for {count} values")
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    bits = bits[: count * width].reshape(count, width).astype(np.int64)
    return bits @ (1 << np.arange(width, dtype=np.int64))


def pack_residues(values, q: int) -> bytes:
    v = np.asarray(values, dtype=np.int64)
    if v.size and (v.min() < 0 or v.max() >= q):
        raise ValueOutOfRange("residue outside [0, q)")
    return pack(v, bit_width(q))


def unpack_residues(data: bytes, q: int, count: int) -> np.ndarray:
    v = unpack(data, bit_width(q), count)
    if v.size and v.max() >= q:
        raise FormatError("residue outside [0, q)")
    return v


# -- file formats ------------------------------------------------------------

def make_header(kind: bytes, params: ParameterSet) -> bytes:
    name = params.name.encode()
    if len(name) > 12:
        raise ValueError("parameter set name too long for header")
    return MAGIC + bytes([VERSION]) + kind + name.ljust(12, b"\0")


def parse_header(data: bytes, kind: bytes) -> ParameterSet:
    if len(data) < HEADER_BYTES or data[:2] != MAGIC:
        raise FormatError("not an EHT file")
    if data[2] != VERSION:
        raise FormatError(f"unsupported version {data[2]}")
    if data[3:4] != kind:
        raise FormatError(f"expected kind {kind!r}, found {data[3:4]!r}")
    name = data[4:16].rstrip(b"\0").decode("ascii", errors="replace")
    try:
        return get_params(name)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def _take(data: bytes, pos: int, size: int) -> tuple[bytes, int]:
    if pos + size > len(data):
        raise FormatError("file truncated")
    return data[pos:pos + size], pos + size


def public_key_body_size(params: ParameterSet) -> int:
    return packed_size(params.kn * params.n, params.bits)


def private_key_body_size(params: ParameterSet) -> int:
    perm_bits = (params.kn - 1).bit_length()
    return (packed_size(params.n * params.n, params.bits)
            + packed_size(params.kn, params.bits)
            + 2 * packed_size(params.kn, perm_bits))


def plaintext_size(params: ParameterSet) -> int:
    return packed_size(params.n, params.bits)


def ciphertext_size(params: ParameterSet) -> int:
    return packed_size(params.kn, params.bits)


def dump_public_key(pk) -> bytes:
    """header | code seed (32) | A packed row-major."""
    p = pk.params
    return make_header(KIND_PUBLIC, p) + pk.code.seed + pack_residues(pk.A, p.q)


def load_public_key(data: bytes):
    from .keygen import PublicKey

    params = parse_header(data, KIND_PUBLIC)
    pos = HEADER_BYTES
    seed, pos = _take(data, pos, SEED_BYTES)
    body, pos = _take(data, pos, public_key_body_size(params))
    if pos != len(data):
        raise FormatError("trailing bytes")
    A = unpack_residues(body, params.q, params.kn * params.n).reshape(params.kn, params.n)
    return PublicKey(params, A, RedundancyCode.from_seed(params.n, params.q, seed))


def dump_private_key(sk) -> bytes:
    """header | code seed (32) | B | t (column-major, k per column) | P* | Q.

    B^{-1} is not stored; it is recomputed on load.
    """
    p = sk.params
    perm_bits = (p.kn - 1).bit_length()
    return b"".join([
        make_header(KIND_PRIVATE, p),
        sk.code.seed,
        pack_residues(sk.B, p.q),
        pack_residues(sk.t.T, p.q),
        pack(sk.p_star, perm_bits),
        pack(sk.q_perm, perm_bits),
    ])


def load_private_key(data: bytes):
    from .keygen import PrivateKey
    from .modmath import NotInvertible, matrix_inverse

    params = parse_header(data, KIND_PRIVATE)
    n, kn, q = params.n, params.kn, params.q
    perm_bits = (kn - 1).bit_length()
    pos = HEADER_BYTES
    seed, pos = _take(data, pos, SEED_BYTES)
    raw_B, pos = _take(data, pos, packed_size(n * n, params.bits))
    raw_t, pos = _take(data, pos, packed_size(kn, params.bits))
    raw_p, pos = _take(data, pos, packed_size(kn, perm_bits))
    raw_q, pos = _take(data, pos, packed_size(kn, perm_bits))
    if pos != len(data):
        raise FormatError("trailing bytes")
    B = unpack_residues(raw_B, q, n * n).reshape(n, n)
    t = unpack_residues(raw_t, q, kn).reshape(n, params.k).T.copy()
    p_star = unpack(raw_p, perm_bits, kn)
    q_perm = unpack(raw_q, perm_bits, kn)
    for perm in (p_star, q_perm):
        if not np.array_equal(np.sort(perm), np.arange(kn)):
            raise FormatError("invalid permutation")
    try:
        B_inv = matrix_inverse(B, q)
    except NotInvertible:
        raise FormatError("stored B is singular") from None
    code = RedundancyCode.from_seed(n, q, seed)
    return PrivateKey(params, B, B_inv, t, p_star, q_perm, code)


def dump_ciphertext(ct, params: ParameterSet) -> bytes:
    return make_header(KIND_CIPHERTEXT, params) + pack_residues(ct.y, params.q)


def load_ciphertext(data: bytes):
    from .cipher import Ciphertext

    params = parse_header(data, KIND_CIPHERTEXT)
    body, pos = _take(data, HEADER_BYTES, ciphertext_size(params))
    if pos != len(data):
        raise FormatError("trailing bytes")
    return params, Ciphertext(unpack_residues(body, params.q, params.kn))


def code_seed_from(master: bytes) -> bytes:
    return hashlib.sha256(b"eht-code-seed" + master).digest()
