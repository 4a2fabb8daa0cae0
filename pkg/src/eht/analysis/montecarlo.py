"""Seeded Monte-Carlo measurements of decryption failures.

Trials are split into fixed-size batches, each with its own derived random
stream, so results do not depend on the number of worker threads.  The
scan kernel releases the GIL, which lets a thread pool overlap batches.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .._kernels import threshold_scan
from ..cipher import Status, encrypt_batch, outcome_from_scan, transform
from ..codec import encode_plaintext, message_capacity
from ..keygen import keygen
from ..modmath import centered, matmul_mod
from ..params import ParameterSet
from ..sampling import Rng, sample_uniform_residue
from .failure import FailureEstimate, estimate_failure

BATCH = 2000


def k_sweep_params(k: int) -> ParameterSet:
    """Small parameter family (n=128, q=1021) for measuring failure rates against k."""
    return ParameterSet(f"sweep-k{k}", 128, k, 1021, 16, 5.105)


def _batches(trials: int, batch: int):
    start = 0
    while start < trials:
        yield start // batch, min(batch, trials - start)
        start += batch


def _map(fn, jobs, threads: int):
    if threads <= 1:
        return [fn(*j) for j in jobs]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(lambda j: fn(*j), jobs))


@dataclass(frozen=True)
class AcceptanceRates:
    """Block-level counts from the ball test, with the closed-form estimate alongside."""

    params: ParameterSet
    trials: int
    keys: int
    reject_correct: int  # blocks where some true b_i failed the ball test
    false_accept: int  # blocks where some wrong residue passed it
    wrong_accepts: int  # wrong (coordinate, residue) pairs that passed, over all blocks
    estimate: FailureEstimate

    @property
    def reject_rate(self) -> float:
        return self.reject_correct / self.trials

    @property
    def false_accept_rate(self) -> float:
        return self.false_accept / self.trials

    @property
    def per_candidate_rate(self) -> float:
        """Fraction of wrong hypotheses b_i = a accepted; compare with alpha."""
        p = self.params
        return self.wrong_accepts / (self.trials * p.n * (p.q - 1))

    def as_dict(self) -> dict:
        return {"params": self.params.name, "k": self.params.k, "trials": self.trials, "keys": self.keys,
                "reject_rate": self.reject_rate, "reject_estimate": self.estimate.reject_correct,
                "false_accept_rate": self.false_accept_rate, "false_accept_estimate": self.estimate.alpha1,
                "per_candidate_rate": self.per_candidate_rate, "alpha": self.estimate.alpha}


def _acceptance_batch(sk, pk, rng: Rng, size: int) -> tuple[int, int, int]:
    p = sk.params
    X = sample_uniform_residue(p.q, rng, (size, p.n))
    Z = transform(sk, encrypt_batch(pk, X, rng))
    count, _ = threshold_scan(Z, sk.t, p.q, p.delta_sq)
    b = matmul_mod(X, sk.B.T, p.q)
    x = centered(b[:, :, None] * sk.t.T[None, :, :] - Z.reshape(size, p.n, p.k), p.q)
    correct = (x * x).sum(axis=2) < p.delta_sq
    wrong = count - correct
    return int((~correct).any(axis=1).sum()), int((wrong > 0).any(axis=1).sum()), int(wrong.sum())


def acceptance_experiment(params: ParameterSet, trials: int, seed: bytes, keys: int = 1,
                          threads: int = 1, batch: int = BATCH) -> AcceptanceRates:
    """Measure the two per-block events behind 1 - beta1 and alpha1.

    Trials are spread evenly over ``keys`` independently generated key
    pairs, since the closed form averages over the secret multipliers.
    """
    root = Rng(seed)
    per_key = -(-trials // keys)
    jobs = []
    done = 0
    for kk in range(keys):
        n_here = min(per_key, trials - done)
        if n_here <= 0:
            break
        sk, pk = keygen(params, root.derive(f"key/{kk}").seed)
        jobs += [(sk, pk, root.derive(f"trials/{kk}/{bi}"), size) for bi, size in _batches(n_here, batch)]
        done += n_here
    results = _map(_acceptance_batch, jobs, threads)
    rej = sum(r[0] for r in results)
    fa = sum(r[1] for r in results)
    wa = sum(r[2] for r in results)
    return AcceptanceRates(params, trials, keys, rej, fa, wa, estimate_failure(params))


@dataclass(frozen=True)
class RoundTripStats:
    params: ParameterSet
    trials: int
    outcomes: dict = field(default_factory=dict)  # Status value -> count
    wrong_plaintext: int = 0

    @property
    def failures(self) -> int:
        return self.trials - self.outcomes.get(Status.SUCCESS.value, 0) + self.wrong_plaintext

    @property
    def failure_rate(self) -> float:
        return self.failures / self.trials


def _round_trip_batch(sk, pk, rng: Rng, size: int) -> tuple[Counter, int]:
    p = sk.params
    cap = message_capacity(p)
    msgs = [rng.token_bytes(cap) for _ in range(size)]
    X = np.stack([encode_plaintext(m, pk.code) for m in msgs])
    Z = transform(sk, encrypt_batch(pk, X, rng))
    count, first = threshold_scan(Z, sk.t, p.q, p.delta_sq)
    tally: Counter = Counter()
    wrong = 0
    for i, m in enumerate(msgs):
        out = outcome_from_scan(sk, Z[i], count[i], first[i])
        tally[out.status.value] += 1
        wrong += out.ok and out.plaintext != m
    return tally, wrong


def round_trip_experiment(params: ParameterSet, trials: int, seed: bytes, threads: int = 1,
                          batch: int = BATCH) -> RoundTripStats:
    """Encrypt and decrypt ``trials`` random messages under one seeded key pair."""
    root = Rng(seed)
    sk, pk = keygen(params, root.derive("key").seed)
    jobs = [(sk, pk, root.derive(f"trials/{bi}"), size) for bi, size in _batches(trials, batch)]
    tally: Counter = Counter()
    wrong = 0
    for t, w in _map(_round_trip_batch, jobs, threads):
        tally.update(t)
        wrong += w
    return RoundTripStats(params, trials, dict(tally), wrong)
