import numpy as np
import pytest

from eht.hadamard import CTransform, fwht_blocks, hadamard_matrix
from eht.modmath import DimensionMismatch, matmul_mod
from eht.sampling import Rng, sample_permutation


@pytest.mark.parametrize("size", [1, 2, 4, 32])
def test_hadamard_square(size):
    H = hadamard_matrix(size)
    assert np.array_equal(H @ H, size * np.eye(size, dtype=int))
    assert np.array_equal(H, H.T)


def test_fwht_matches_dense():
    rng = np.random.default_rng(0)
    x = rng.integers(-50, 50, (64, 3))
    H = hadamard_matrix(16)
    expected = np.concatenate([H @ x[i:i + 16] for i in range(0, 64, 16)])
    assert np.array_equal(fwht_blocks(x, 16), expected)
    with pytest.raises(DimensionMismatch):
        fwht_blocks(np.zeros(10), 4)


def test_two_by_two():
    c = CTransform(np.arange(2), np.arange(2), 2, 97)
    assert list(c.apply(np.array([5, 3]))) == [8, 2]
    assert list(c.apply(np.array([3, 5]))) == [8, 95]


def _random_c(kn, block, q, seed):
    rng = Rng(bytes([seed]) * 32)
    return CTransform(sample_permutation(kn, rng), sample_permutation(kn, rng), block, q)


def test_square_law():
    c = _random_c(64, 8, 97, 1)
    v = np.random.default_rng(1).integers(0, 97, 64)
    assert np.array_equal(c.apply(c.apply_transpose(v)), 8 * v % 97)
    assert np.array_equal(c.apply(c.apply_inverse(v)), v)
    assert np.array_equal(c.apply_inverse(c.apply(v)), v)


def test_dense_oracle_toy():
    c = _random_c(16, 4, 97, 2)
    C = c.dense()
    v = np.random.default_rng(2).integers(0, 97, (16, 4))
    assert np.array_equal(c.apply(v), C @ v % 97)
    assert np.array_equal(c.apply_transpose(v), C.T @ v % 97)


def test_dense_structure():
    c = _random_c(32, 8, 97, 3)
    C = c.dense()
    assert set(np.unique(C)) <= {-1, 0, 1}
    assert np.all((C != 0).sum(axis=1) == 8)
    assert np.array_equal(C @ C.T, 8 * np.eye(32, dtype=int))


def test_dense_oracle_light_a_shape():
    # kn = 4096, block 32: materialised as int8 to keep memory small
    c = _random_c(4096, 32, 1021, 4)
    C = c.dense(np.int8)
    v = np.random.default_rng(4).integers(0, 1021, 4096)
    assert np.array_equal(c.apply(v), matmul_mod(C.astype(np.int64), v, 1021))
