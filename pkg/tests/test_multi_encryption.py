import numpy as np
import pytest

from eht.analysis.multi_encryption import Insufficient, averaged_rows, multiple_encryption_attack
from eht.cipher import Ciphertext, encrypt, encrypt_batch
from eht.codec import encode_plaintext
from eht.sampling import Rng


def test_averaging_wraps():
    Y = np.array([[1020, 5], [1, 5], [0, 6]])
    est, dist = averaged_rows(Y, 1021)
    assert est[0] == 0
    assert dist[0] == pytest.approx(0.0)


def test_noise_free_single_sample(light_a_keys):
    _, pk = light_a_keys
    m = Rng(bytes(32)).token_bytes(317)
    x = multiple_encryption_attack([encrypt(pk, m, zero_noise=True)], pk)
    assert np.array_equal(x, encode_plaintext(m, pk.code))


def test_single_noisy_sample_fails(light_a_keys):
    _, pk = light_a_keys
    rng = Rng(bytes(32))
    with pytest.raises(Insufficient):
        multiple_encryption_attack([encrypt(pk, rng.token_bytes(317), rng)], pk)
    with pytest.raises(Insufficient):
        multiple_encryption_attack([], pk)


def test_many_samples_recover(light_a_keys):
    _, pk = light_a_keys
    rng = Rng(bytes(range(32)))
    x = encode_plaintext(rng.token_bytes(317), pk.code)
    Y = encrypt_batch(pk, np.tile(x, (1560, 1)), rng)
    got = multiple_encryption_attack([Ciphertext(y) for y in Y], pk)
    assert np.array_equal(got, x)
