import math

import pytest

from eht.analysis import DivergenceNonpositive, estimate_failure, estimate_k_asymptotic, k_asymptotic
from eht.params import ParameterSet, get_params


def test_light_a_estimate():
    est = estimate_failure(get_params("EHT-light-A"))
    assert 7.4e-6 / 1.5 <= est.reject_correct <= 7.4e-6 * 1.5
    assert est.beta1 == pytest.approx(1 - est.reject_correct)
    assert est.accept_incorrect == pytest.approx(est.alpha1 / 1021**2)
    assert 0 < est.alpha < 1


def test_high_b_estimate():
    est = estimate_failure(get_params("EHT-high-B"))
    assert 5.6e-11 / 2 <= est.reject_correct <= 5.6e-11 * 2


def test_tail_monotone_in_k():
    rates = [estimate_failure(ParameterSet("f", 128, k, 1021, 16, 5.105)).reject_correct for k in (7, 8, 9)]
    assert rates[0] > rates[1] > rates[2]


def test_k_asymptotic_unit_divergence():
    q = 1021.0
    sl = q / (math.e * math.sqrt(2 * math.pi * math.e))
    assert k_asymptotic(q, sl) == pytest.approx(math.log(q))


def test_k_asymptotic_monotone_in_sigma():
    p = get_params("EHT-light-A")
    wider = ParameterSet("w", p.n, p.k, p.q, p.lambda_sq, 1.1 * p.sigma)
    assert math.isfinite(estimate_k_asymptotic(p))
    assert estimate_k_asymptotic(wider) > estimate_k_asymptotic(p)


def test_k_asymptotic_large_q_limit():
    values = [k_asymptotic(q, 50.0) for q in (1e6, 1e9, 1e30)]
    assert values[0] > values[1] > values[2] > 1
    assert values[2] < 1.1


def test_k_asymptotic_nonpositive():
    with pytest.raises(DivergenceNonpositive):
        k_asymptotic(100.0, 30.0)
