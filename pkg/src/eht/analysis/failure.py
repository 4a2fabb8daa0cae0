"""Closed-form decryption failure estimates."""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import gammaincc, gammaln

from ..params import ParameterSet


class DivergenceNonpositive(ValueError):
    """q <= sigma*lambda*sqrt(2 pi e): the smoothed error is already close to uniform."""


@dataclass(frozen=True)
class FailureEstimate:
    beta: float
    beta1: float
    reject_correct: float  # 1 - beta1, computed without cancellation
    alpha: float
    alpha1: float
    accept_incorrect: float
    failure: float

    def as_dict(self) -> dict:
        return {"beta": self.beta, "beta1": self.beta1, "reject_correct": self.reject_correct,
                "alpha": self.alpha, "alpha1": self.alpha1,
                "accept_incorrect": self.accept_incorrect, "failure": self.failure}


def _log_ball_volume(k: int, radius: float) -> float:
    return 0.5 * k * math.log(math.pi) + k * math.log(radius) - gammaln(k / 2 + 1)


def estimate_failure(params: ParameterSet) -> FailureEstimate:
    """Per-coordinate and per-block acceptance probabilities of the ball test.

    beta = Pr(chi2_k < delta^2 / (sigma lambda)^2) and
    alpha = Vol_k(delta) / q^k.  The upper tail 1 - beta comes straight from
    the regularized upper incomplete gamma function so that 1e-11 scale
    block failures keep full relative precision.
    """
    k, n, q = params.k, params.n, params.q
    x = params.delta_sq / (2 * params.sigma_lambda**2)
    miss = float(gammaincc(k / 2, x))
    beta = 1.0 - miss
    reject = -math.expm1(n * math.log1p(-miss))
    log_alpha = _log_ball_volume(k, params.delta) - k * math.log(q)
    alpha = min(1.0, math.exp(log_alpha))
    alpha1 = min(1.0, n * q * alpha)
    accept_incorrect = alpha1 / q**2
    return FailureEstimate(beta, 1.0 - reject, reject, alpha, alpha1, accept_incorrect,
                           reject + accept_incorrect)


def estimate_k_asymptotic(params: ParameterSet) -> float:
    """ln q / Div, with Div ~ ln(q / (sigma lambda sqrt(2 pi e))).

    This is the argument of an O(.) statement: a guide to how k scales, not
    a bound.
    """
    return k_asymptotic(params.q, params.sigma_lambda)


def k_asymptotic(q: float, sigma_lambda: float) -> float:
    """Same quantity from raw (q, sigma*lambda), for values no preset can hold."""
    div = math.log(q / (sigma_lambda * math.sqrt(2 * math.pi * math.e)))
    if div <= 0:
        raise DivergenceNonpositive(f"divergence {div:.3g} is not positive")
    return math.log(q) / div
