from eht.analysis import acceptance_experiment, k_sweep_params, round_trip_experiment
from eht.cipher import Status
from eht.params import get_params


def test_k_sweep_params():
    p = k_sweep_params(7)
    assert (p.n, p.k, p.q, p.lambda_sq, p.sigma) == (128, 7, 1021, 16, 5.105)


def test_acceptance_small_is_deterministic():
    p = k_sweep_params(7)
    a = acceptance_experiment(p, 3000, bytes(32), keys=2, batch=1000)
    b = acceptance_experiment(p, 3000, bytes(32), keys=2, threads=2, batch=1000)
    assert a == b
    assert a.trials == 3000 and a.keys == 2
    assert 0 <= a.reject_rate < 0.01
    assert 0 < a.false_accept_rate <= 1
    assert 0 < a.per_candidate_rate < 2 * a.estimate.alpha
    assert set(a.as_dict()) >= {"reject_rate", "false_accept_rate", "per_candidate_rate"}


def test_round_trip_toy():
    stats = round_trip_experiment(get_params("toy"), 500, bytes(32), batch=128)
    assert stats.trials == 500
    assert sum(stats.outcomes.values()) == 500
    assert stats.wrong_plaintext == 0
    assert stats.failures == 500 - stats.outcomes.get(Status.SUCCESS.value, 0)


def test_round_trip_light_a_small():
    stats = round_trip_experiment(get_params("EHT-light-A"), 500, bytes(32))
    assert stats.failures == 0
