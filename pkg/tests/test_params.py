import math

import pytest

from eht.params import NAMED_PRESETS, PRESETS, InvalidParams, ParameterSet, get_params

TABLE_ROWS = {
    "EHT-light-A": (256, 16, 1021, 32, 8.8),
    "EHT-light-B": (256, 25, 2039, 32, 14.5),
    "EHT-medium-A": (384, 14, 2039, 32, 13.5),
    "EHT-medium-B": (384, 24, 2039, 32, 13.5),
    "EHT-high-A": (448, 17, 2039, 32, 17.5),
    "EHT-high-B": (448, 24, 4091, 32, 27.0),
}


@pytest.mark.parametrize("name", NAMED_PRESETS)
def test_named_presets(name):
    p = get_params(name)
    assert (p.n, p.k, p.q, p.lambda_sq, p.sigma) == TABLE_ROWS[name]
    assert p.is_conforming
    assert p.log_const > 0


def test_toy_preset():
    p = get_params("toy")
    assert (p.n, p.k, p.q, p.lambda_sq, p.sigma) == (8, 2, 97, 4, 1.2)
    assert p.insecure and not p.is_conforming


def test_derived_quantities():
    p = PRESETS["EHT-light-A"]
    assert p.kn == 4096 and p.r == 128 and p.s == 5 and p.bits == 10
    assert p.sigma_lambda == pytest.approx(8.8 * math.sqrt(32))
    assert p.delta_sq == pytest.approx(2 * 16 * p.sigma_lambda**2 * math.log(1021 / (p.sigma_lambda * math.sqrt(2 * math.pi))))


@pytest.mark.parametrize("args", [
    (2, 2, 97, 2, 1.0),      # n too small
    (8, 1, 97, 4, 1.0),      # k = 1
    (8, 2, 91, 4, 1.0),      # q composite
    (8, 2, 2, 4, 0.1),       # q = 2
    (8, 2, 65537, 4, 1.0),   # q too large
    (8, 2, 97, 3, 1.0),      # lambda^2 not a power of two
    (12, 2, 97, 8, 1.0),     # lambda^2 does not divide n
    (8, 2, 97, 4, 0.0),      # sigma = 0
    (8, 2, 97, 4, 13.0),     # sigma >= q/8
    (16, 2, 97, 16, 8.0),    # q <= sigma lambda sqrt(2 pi e)
])
def test_validation_rejects(args):
    with pytest.raises(InvalidParams):
        ParameterSet("bad", *args)


def test_unknown_preset():
    with pytest.raises(InvalidParams):
        get_params("nope")
