"""Parameter sets and the preset registry."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .modmath import is_prime


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class ParameterSet:
    """EHT parameters (n, k, q, lambda^2, sigma).

    ``lambda_sq`` is the row weight of C and must be a power of two; the
    Hadamard block size is ``lambda_sq`` and the number of blocks is ``r``.
    """

    name: str
    n: int
    k: int
    q: int
    lambda_sq: int
    sigma: float
    insecure: bool = field(default=False, compare=False)

    def __post_init__(self):
        self.validate()

    def validate(self):
        n, k, q, l2 = self.n, self.k, self.q, self.lambda_sq
        if n < 3:
            raise InvalidParams("n must be at least 3 (two residues go to parity)")
        if k < 2:
            # with k = 1 the column condition on T can never hold: a = t^-1 gives x = 1
            raise InvalidParams("k must be at least 2")
        if not is_prime(q) or q == 2:
            raise InvalidParams(f"q={q} must be an odd prime")
        if q >= 2**16:
            raise InvalidParams("q must be below 2**16")
        if l2 < 2 or l2 & (l2 - 1):
            raise InvalidParams(f"lambda^2={l2} must be a power of two")
        if n % l2:
            raise InvalidParams(f"lambda^2={l2} must divide n={n}")
        if not self.sigma > 0 or not self.sigma < q / 8:
            raise InvalidParams("need 0 < sigma < q/8")
        if not q > self.sigma_lambda * math.sqrt(2 * math.pi * math.e):
            raise InvalidParams("need q > sigma*lambda*sqrt(2*pi*e)")

    @property
    def lam(self) -> float:
        return math.sqrt(self.lambda_sq)

    @property
    def s(self) -> int:
        return self.lambda_sq.bit_length() - 1

    @property
    def kn(self) -> int:
        return self.k * self.n

    @property
    def r(self) -> int:
        return self.kn // self.lambda_sq

    @property
    def sigma_lambda(self) -> float:
        return self.sigma * math.sqrt(self.lambda_sq)

    @property
    def log_const(self) -> float:
        """ln(q / (sigma*lambda*sqrt(2 pi)))."""
        return math.log(self.q / (self.sigma_lambda * math.sqrt(2 * math.pi)))

    @property
    def delta_sq(self) -> float:
        return 2 * self.k * self.sigma_lambda**2 * self.log_const

    @property
    def delta(self) -> float:
        return math.sqrt(self.delta_sq)

    @property
    def bits(self) -> int:
        """Bits per packed residue, ceil(log2 q)."""
        return (self.q - 1).bit_length()

    @property
    def is_conforming(self) -> bool:
        """Deployment constraints of the proposed parameter sets (n multiple of 64)."""
        return self.n % 64 == 0 and not self.insecure

    def as_dict(self) -> dict:
        return {"name": self.name, "n": self.n, "k": self.k, "q": self.q,
                "lambda_sq": self.lambda_sq, "sigma": self.sigma}


PRESETS: dict[str, ParameterSet] = {
    p.name: p
    for p in [
        ParameterSet("EHT-light-A", 256, 16, 1021, 32, 8.8),
        ParameterSet("EHT-light-B", 256, 25, 2039, 32, 14.5),
        ParameterSet("EHT-medium-A", 384, 14, 2039, 32, 13.5),
        ParameterSet("EHT-medium-B", 384, 24, 2039, 32, 13.5),
        ParameterSet("EHT-high-A", 448, 17, 2039, 32, 17.5),
        ParameterSet("EHT-high-B", 448, 24, 4091, 32, 27.0),
        ParameterSet("toy", 8, 2, 97, 4, 1.2, insecure=True),
    ]
}

NAMED_PRESETS = [name for name in PRESETS if name != "toy"]


def get_params(name: str) -> ParameterSet:
    try:
        return PRESETS[name]
    except KeyError:
        raise InvalidParams(f"unknown parameter set {name!r}; choose from {', '.join(PRESETS)}") from None
