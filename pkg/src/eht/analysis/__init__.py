"""Failure estimates, attack cost models and attack demonstrations."""
from .attacks import (CostReport, NoFeasibleBlock, brute_force_cost, key_recovery_costs,
                      lattice_key_recovery_cost, primal_attack_cost, tmto_cost)
from .failure import (DivergenceNonpositive, FailureEstimate, estimate_failure,
                      estimate_k_asymptotic, k_asymptotic)
from .lemma import CollinearityVerdict, EnumerationTooLarge, lemma1_collinearity_check
from .montecarlo import acceptance_experiment, k_sweep_params, round_trip_experiment
from .multi_encryption import Insufficient, SingularSubmatrix, multiple_encryption_attack

__all__ = [
    "CostReport", "NoFeasibleBlock", "brute_force_cost", "key_recovery_costs",
    "lattice_key_recovery_cost", "primal_attack_cost", "tmto_cost",
    "DivergenceNonpositive", "FailureEstimate", "estimate_failure", "estimate_k_asymptotic",
    "k_asymptotic", "CollinearityVerdict", "EnumerationTooLarge", "lemma1_collinearity_check",
    "acceptance_experiment", "k_sweep_params", "round_trip_experiment",
    "Insufficient", "SingularSubmatrix", "multiple_encryption_attack",
]
