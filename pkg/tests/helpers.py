"""Shared draw helpers for the property suites.

The random-parameter distributions keep the diagonal couplings well away
from zero and the off-diagonal couplings moderate, so most draws land in
the RealSimple regime with healthy eigenvalue gaps.
"""

import os

import numpy as np

from pseudoboson import ModelParameters, Regime, analytic_eigenvalues

SEED = int(os.environ.get("PSEUDOBOSON_SEED", "20240817"))


def make_rng(offset: int = 0) -> np.random.Generator:
    return np.random.default_rng(SEED + offset)


def random_parameters(rng, moderate: bool = False) -> ModelParameters:
    """One unfiltered draw; ``moderate`` keeps couplings within 0.4*min(alpha)."""
    a11, a22 = rng.uniform(0.5, 3.0, size=2)
    if moderate:
        cap = 0.4 * min(a11, a22)
        a12 = rng.uniform(-cap, cap)
        b11, b22, b12 = rng.uniform(-cap, cap, size=3)
    else:
        a12 = rng.uniform(-0.3, 0.3)
        b11, b22, b12 = rng.uniform(-0.4, 0.4, size=3)
    return ModelParameters(
        alpha11=a11, alpha22=a22, alpha12=a12, beta11=b11, beta22=b22, beta12=b12
    )


def real_simple_draws(rng, count: int, moderate: bool = False):
    """Yield ``count`` RealSimple parameter draws."""
    produced = 0
    attempts = 0
    while produced < count:
        attempts += 1
        if attempts > 100 * count:
            raise RuntimeError("draw distribution rejected too many samples")
        params = random_parameters(rng, moderate=moderate)
        _, _, regime = analytic_eigenvalues(params)
        if regime is Regime.REAL_SIMPLE:
            produced += 1
            yield params
