import numpy as np
import pytest

from eht import codec
from eht.keygen import (PrivateKey, build_p_star, check_key_pair, chunk_spread_ok, column_margin,
                        column_ok, derive_public_key, generate_B, generate_T, keygen)
from eht.modmath import det_mod, matmul_mod, matrix_inverse
from eht.params import InvalidParams
from eht.sampling import Rng


def test_p_star_table_example():
    mapping = np.array([1, 2, 3, 4, 5, 6, 7, 8, 1, 3, 5, 7, 2, 4, 6, 8]) - 1
    p = build_p_star(8, 2, 4, mapping=mapping)
    assert list(p + 1) == [1, 3, 5, 7, 9, 11, 13, 15, 2, 6, 10, 14, 4, 8, 12, 16]


def test_p_star_rejects_bad_input():
    with pytest.raises(InvalidParams):
        build_p_star(12, 2, 8, Rng(bytes(32)))
    with pytest.raises(InvalidParams):
        build_p_star(8, 2, 4, mapping=np.array([0, 0, 1, 2] + list(range(8)) + [3, 4, 5, 6]))


@pytest.mark.parametrize("n,k,l2", [(8, 2, 4), (64, 5, 16), (256, 16, 32)])
def test_p_star_spreads(n, k, l2):
    for i in range(5):
        p = build_p_star(n, k, l2, Rng(bytes([i]) * 32))
        assert np.array_equal(np.sort(p), np.arange(n * k))
        assert chunk_spread_ok(p, k, l2)


def test_T_conditions(light_a):
    t = generate_T(light_a, Rng(bytes(32)))
    assert t.shape == (16, 256)
    assert (t > 0).all() and (t < light_a.q).all()
    for i in range(0, 256, 17):
        col = t[:, i]
        assert len(set(col.tolist())) == 16
        assert column_margin(col, light_a.q) >= light_a.delta_sq


def test_column_margin_oracle():
    q = 97
    col = np.array([3, 10])
    brute = min(sum(((a * c + q // 2) % q - q // 2) ** 2 for c in col) for a in range(1, q))
    assert column_margin(col, q) == brute


def test_random_columns_usually_pass(light_a):
    gen = np.random.default_rng(5)
    ok = sum(column_ok(gen.integers(1, light_a.q, 16), light_a) for _ in range(1000))
    assert ok / 1000 > 0.5


def test_generate_B():
    B, B_inv = generate_B(16, 97, Rng(bytes(32)))
    assert det_mod(B, 97) != 0
    assert np.array_equal(matmul_mod(B, B_inv, 97), np.eye(16, dtype=np.int64))
    B, B_inv = generate_B(2, 2, Rng(bytes(32)))
    assert np.array_equal(matmul_mod(B, B_inv, 2), np.eye(2, dtype=np.int64))


def test_public_key_dense_oracle(toy_keys):
    sk, pk = toy_keys
    p = sk.params
    C = sk.C.dense()
    A = matmul_mod(matrix_inverse(C % p.q, p.q), matmul_mod(sk.T_dense(), sk.B, p.q), p.q)
    assert np.array_equal(pk.A, A)
    assert check_key_pair(sk, pk)


def test_zero_T_gives_zero_A(toy_keys):
    sk, _ = toy_keys
    fake = PrivateKey(sk.params, sk.B, sk.B_inv, np.zeros_like(sk.t), sk.p_star, sk.q_perm, sk.code)
    assert not derive_public_key(fake).A.any()


def test_light_a_key(light_a_keys):
    sk, pk = light_a_keys
    assert check_key_pair(sk, pk)
    assert chunk_spread_ok(sk.p_star, 16, 32)
    assert len(codec.dump_public_key(pk)) == codec.HEADER_BYTES + 32 + 1_310_720


def test_keygen_deterministic(toy):
    a_sk, a_pk = keygen(toy, bytes(range(32)))
    b_sk, b_pk = keygen(toy, bytes(range(32)))
    assert codec.dump_public_key(a_pk) == codec.dump_public_key(b_pk)
    assert codec.dump_private_key(a_sk) == codec.dump_private_key(b_sk)
    _, c_pk = keygen(toy, bytes(32))
    assert codec.dump_public_key(c_pk) != codec.dump_public_key(a_pk)
