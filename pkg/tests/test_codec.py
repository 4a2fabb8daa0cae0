import numpy as np
import pytest

from eht import codec
from eht.codec import (CodeReject, FormatError, LengthMismatch, RedundancyCode, ValueOutOfRange,
                       check_and_decode, encode_plaintext, message_capacity, pack, pack_residues,
                       unpack, unpack_residues)
from eht.params import NAMED_PRESETS, get_params
from eht.sampling import Rng


@pytest.fixture(scope="module")
def code():
    return RedundancyCode.from_seed(256, 1021, bytes(32))


def test_capacity():
    assert message_capacity(get_params("EHT-light-A")) == 317
    for name in NAMED_PRESETS:
        p = get_params(name)
        assert 256 ** message_capacity(p) <= p.q ** (p.n - 2)


def test_zero_message(code):
    x = encode_plaintext(bytes(317), code)
    assert not x.any()
    assert check_and_decode(np.zeros(256, dtype=int), code) == bytes(317)


def test_round_trip(code):
    rng = Rng(bytes(32))
    for _ in range(1000):
        m = rng.token_bytes(317)
        x = encode_plaintext(m, code)
        assert code.is_codeword(x)
        assert check_and_decode(x, code) == m


def test_linearity(code):
    rng = Rng(bytes(32))
    x1 = encode_plaintext(rng.token_bytes(317), code)
    x2 = encode_plaintext(rng.token_bytes(317), code)
    assert code.is_codeword((x1 + x2) % 1021)


def test_single_perturbation_rejected(code):
    x = encode_plaintext(Rng(bytes(32)).token_bytes(317), code)
    for i in range(254):
        y = x.copy()
        y[i] = (y[i] + 1) % 1021
        with pytest.raises(CodeReject):
            check_and_decode(y, code)


def test_length_errors(code):
    with pytest.raises(LengthMismatch):
        encode_plaintext(bytes(316), code)
    with pytest.raises(LengthMismatch):
        check_and_decode(np.zeros(255, dtype=int), code)


def test_pack_examples():
    assert len(pack([1, 2, 3, 1020], 10)) == 5
    assert len(pack_residues(np.zeros(4096, dtype=int), 1021)) == 5120
    with pytest.raises(ValueOutOfRange):
        pack([1024], 10)
    with pytest.raises(ValueOutOfRange):
        pack_residues([1021], 1021)
    with pytest.raises(FormatError):
        unpack_residues(pack([1023], 10), 1021, 1)


def test_pack_round_trips():
    gen = np.random.default_rng(0)
    for width in (1, 7, 10, 11, 12, 13):
        v = gen.integers(0, 1 << width, 40)
        assert np.array_equal(unpack(pack(v, width), width, 40), v)
        data = gen.integers(0, 256, 5 * width, dtype=np.uint8).tobytes()
        assert pack(unpack(data, width, 40), width) == data
    with pytest.raises(LengthMismatch):
        unpack(b"\0", 10, 4)


@pytest.mark.parametrize("name", NAMED_PRESETS)
def test_size_formulas(name):
    p = get_params(name)
    assert codec.public_key_body_size(p) * 8 == p.kn * p.n * p.bits
    assert codec.plaintext_size(p) * 8 == p.n * p.bits
    assert codec.ciphertext_size(p) * 8 == p.kn * p.bits


def test_file_round_trip(toy_keys):
    sk, pk = toy_keys
    p = sk.params
    pk2 = codec.load_public_key(codec.dump_public_key(pk))
    assert np.array_equal(pk2.A, pk.A) and np.array_equal(pk2.code.parity, pk.code.parity)
    sk2 = codec.load_private_key(codec.dump_private_key(sk))
    for f in ("B", "B_inv", "t", "p_star", "q_perm"):
        assert np.array_equal(getattr(sk2, f), getattr(sk, f))
    y = np.arange(p.kn) % p.q
    from eht.cipher import Ciphertext
    params, ct = codec.load_ciphertext(codec.dump_ciphertext(Ciphertext(y), p))
    assert params == p and np.array_equal(ct.y, y)


def test_malformed_files(toy_keys):
    sk, pk = toy_keys
    data = codec.dump_public_key(pk)
    with pytest.raises(FormatError):
        codec.load_public_key(data[:-1])
    with pytest.raises(FormatError):
        codec.load_public_key(data + b"\0")
    with pytest.raises(FormatError):
        codec.load_private_key(data)
    with pytest.raises(FormatError):
        codec.load_public_key(b"XX" + data[2:])
    bad = bytearray(data)
    bad[4:16] = b"unknown".ljust(12, b"\0")
    with pytest.raises(FormatError):
        codec.load_public_key(bytes(bad))
