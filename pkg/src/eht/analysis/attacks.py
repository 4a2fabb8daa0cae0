"""Cost models for lattice and combinatorial attacks.

Costs are reported as log2 of the operation count under three sieve
exponents: classical 0.292, quantum 0.265 and a plausible floor 0.2075.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from ..params import ParameterSet

SIEVE_EXPONENTS = {"classical": 0.292, "quantum": 0.265, "plausible": 0.2075}
MIN_BLOCK = 50
LN2 = math.log(2)


class NoFeasibleBlock(RuntimeError):
    pass


@dataclass(frozen=True)
class CostReport:
    attack: str
    log2_classical: float
    log2_quantum: float
    log2_plausible: float
    search: dict = field(default_factory=dict)

    def floored(self) -> tuple[int, int, int]:
        return (math.floor(self.log2_classical), math.floor(self.log2_quantum),
                math.floor(self.log2_plausible))

    def as_dict(self) -> dict:
        c, qu, p = self.floored()
        return {"attack": self.attack, **self.search, "classical": c, "quantum": qu, "plausible": p,
                "log2_classical": self.log2_classical, "log2_quantum": self.log2_quantum,
                "log2_plausible": self.log2_plausible}


def log_root_hermite(b):
    """ln of the BKZ-b root Hermite factor ((pi b)^(1/b) b / (2 pi e))^(1/(2(b-1)))."""
    b = np.asarray(b, dtype=np.float64)
    return (np.log(np.pi * b) / b + np.log(b / (2 * np.pi * np.e))) / (2 * (b - 1))


def log2_binom(a, b):
    return (gammaln(a + 1) - gammaln(b + 1) - gammaln(a - b + 1)) / LN2


def _sieve_report(attack: str, base: float, b: int, search: dict) -> CostReport:
    c, qu, p = (base + e * b for e in SIEVE_EXPONENTS.values())
    return CostReport(attack, c, qu, p, search)


def primal_attack_cost(params: ParameterSet) -> CostReport:
    """Smallest BKZ block size recovering the error by a unique-SVP embedding.

    The secret is a codeword, so after eliminating the two parity residues
    the embedded secret has dimension n' = n - 2.  With m samples the
    lattice has dimension d = m + n' and volume q^m, and BKZ-b succeeds when

        sigma * sqrt(b) < delta_b^(2b - d - 1) * q^(m/d).

    Block sizes are tried in increasing order; for the first feasible b the
    smallest feasible m in [n, kn] is reported.
    """
    n_sec = params.n - 2
    m = np.arange(params.n, params.kn + 1, dtype=np.float64)
    d = m + n_sec
    lhs_const = math.log(params.sigma)
    volume_term = m * math.log(params.q) / d
    for b in range(MIN_BLOCK, int(d.max()) + 1):
        ok = lhs_const + 0.5 * math.log(b) < (2 * b - d - 1) * log_root_hermite(b) + volume_term
        ok &= d >= b
        if ok.any():
            m_best = int(m[np.argmax(ok)])
            return _sieve_report("primal", 0.0, b, {"m": m_best, "b": b, "d": m_best + n_sec})
    raise NoFeasibleBlock(f"no block size up to {int(d.max())} succeeds")


def brute_force_cost(params: ParameterSet) -> CostReport:
    """Guess the signed supports of two rows of C: 2^(2 lambda^2) C(kn, l2) C(kn - l2, l2) trials."""
    l2, kn = params.lambda_sq, params.kn
    bits = 2 * l2 + log2_binom(kn, l2) + log2_binom(kn - l2, l2)
    return CostReport("brute-force", bits, bits, bits, {})


def tmto_cost(params: ParameterSet) -> CostReport:
    """Tabulate V = 2^(l2) C(kn, l2) scaled row images; cost V log2 V."""
    l2, kn = params.lambda_sq, params.kn
    log_v = l2 + log2_binom(kn, l2)
    bits = log_v + math.log2(log_v)
    return CostReport("tmto", bits, bits, bits, {"log2_memory": float(log_v)})


def lattice_block_size(h: int, params: ParameterSet) -> int | None:
    """Smallest b in [50, 2h] that finds a weight-2 lambda^2 row pair in the dimension 2h lattice.

    The lattice has volume q^n.  The target has norm lambda*sqrt(2); the
    condition compares its projection onto the last b Gram-Schmidt vectors,
    lambda*sqrt(2)*sqrt(b/d), with delta_b^(2b - d) * q^(n/d).
    """
    d = 2 * h
    if d < MIN_BLOCK:
        return None
    b = np.arange(MIN_BLOCK, d + 1, dtype=np.float64)
    target = math.log(math.sqrt(2 * params.lambda_sq)) + 0.5 * np.log(b / d)
    ok = target <= (2 * b - d) * log_root_hermite(b) + params.n * math.log(params.q) / d
    if not ok.any():
        return None
    return int(b[np.argmax(ok)])


def lattice_key_recovery_cost(params: ParameterSet) -> CostReport:
    """Restrict to h columns, hoping they cover the supports of two rows of C.

    Cost per h: log2 q + 2 [log2 C(kn, h) - log2 C(kn - l2, h - l2)] for the
    expected number of BKZ runs, plus the sieve cost of b(h).  The h with
    the lowest classical cost is reported.
    """
    l2, kn = params.lambda_sq, params.kn
    exp_c = SIEVE_EXPONENTS["classical"]
    best = None
    for h in range(l2, kn + 1):
        runs = math.log2(params.q) + 2 * (log2_binom(kn, h) - log2_binom(kn - l2, h - l2))
        b = lattice_block_size(h, params)
        if b is None:
            continue
        if best is not None and math.log2(params.q) + exp_c * b >= best[0]:
            break  # runs fall towards log2 q while b(h) only grows
        cost = runs + exp_c * b
        if best is None or cost < best[0]:
            best = (cost, h, b, runs)
    if best is None:
        raise NoFeasibleBlock("no h admits a feasible block size")
    _, h, b, runs = best
    return _sieve_report("lattice", runs, b, {"h": h, "b": b})


def key_recovery_costs(params: ParameterSet) -> tuple[CostReport, CostReport, CostReport]:
    return brute_force_cost(params), tmto_cost(params), lattice_key_recovery_cost(params)
