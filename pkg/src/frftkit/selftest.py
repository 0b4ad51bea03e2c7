"""Symbol-level identity suite: fast internal consistency checks runnable
from the CLI/service without the full test harness."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SelfTestCheck", "run_selftest"]


@dataclass(frozen=True)
class SelfTestCheck:
    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance


def _random_scaled_bins(rng, count):
    # nonzero scaled-frequency points spread over several decades
    mag = 10.0 ** rng.uniform(-2, 2, size=(count, 2))
    u = mag * rng.choice([-1.0, 1.0], size=(count, 2))
    return u[:, 0], u[:, 1]


def run_selftest(bins: int = 10_000, seed: int = 0, _perturb: float = 0.0) -> list[SelfTestCheck]:
    """Run the multiplier identity suite on random nonzero frequency bins.

    ``_perturb`` is a test hook: a nonzero value biases the potential symbol
    so the negative-control path can confirm failures are detected.
    """
    rng = np.random.default_rng(seed)
    u1, u2 = _random_scaled_bins(rng, bins)
    r = np.hypot(u1, u2)

    def potential(beta):
        return (2 * np.pi * r) ** (-beta) + _perturb

    checks = []

    semigroup = np.abs(potential(0.3) * potential(0.4) / potential(0.7) - 1.0).max()
    checks.append(SelfTestCheck("symbol semigroup (0.3 * 0.4 = 0.7)", float(semigroup), 1e-12))

    recip = np.abs(potential(0.75) * (1.0 / (2 * np.pi * r) ** (-0.75)) - 1.0).max()
    checks.append(SelfTestCheck("potential x Laplacian reciprocal", float(recip), 1e-15))

    unit = np.abs((u1 / r) ** 2 + (u2 / r) ** 2 - 1.0).max()
    checks.append(SelfTestCheck("Riesz component unit sum", float(unit), 1e-14))

    decomp = np.abs(
        potential(1.0) * ((-1j * u1 / r) * (2j * np.pi * u1) + (-1j * u2 / r) * (2j * np.pi * u2)) - 1.0
    ).max()
    checks.append(SelfTestCheck("derivative decomposition product-sum", float(decomp), 1e-12))

    return checks
