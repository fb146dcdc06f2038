"""Grand-canonical thermodynamics of the diagonalized model.

With H = e0 + l1 n1 + l2 n2 and the pseudo-boson number operator
N = n1 + n2, the partition function Z = Tr exp(-beta H + zeta N)
factorizes into geometric series,

    Z = exp(-beta e0) * prod_k (1 - exp(-beta*l_k + zeta))**-1,

convergent iff beta*l_k - zeta > 0 for both modes.  Z is real and
positive even though H and N are non-Hermitian operators.  All
exponentials are evaluated in log space; Z is exposed alongside log Z.

zeta = beta * mu with chemical potential mu <= 0 on the physical branch;
raw zeta is accepted anywhere in the convergent region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DivergenceError, TruncationError, ValidationError

FIGURE1_BETAS = (0.125, 0.25, 0.5, 1.0, 4.0)


@dataclass(frozen=True)
class SpectrumSpec:
    """Ground energy and the two positive mode frequencies.

    No ordering between lambda1 and lambda2 is assumed.
    """

    e0: float
    lambda1: float
    lambda2: float

    def __post_init__(self):
        for name in ("e0", "lambda1", "lambda2"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
                raise ValidationError(f"{name} must be a finite real number, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.lambda1 <= 0 or self.lambda2 <= 0:
            raise ValidationError(
                f"mode frequencies must be positive: ({self.lambda1}, {self.lambda2})"
            )


@dataclass(frozen=True)
class ThermoPoint:
    """All equilibrium quantities at one (beta, zeta)."""

    beta: float
    zeta: float
    mu: float
    occupation1: float
    occupation2: float
    log_z: float
    z: float
    energy: float
    number: float
    entropy: float


class TraceResult(NamedTuple):
    z: float
    energy: float
    number: float
    entropy: float


def _mode_exponents(spec: SpectrumSpec, beta: float, zeta: float) -> tuple[float, float]:
    """Per-mode exponents x_k = beta*lambda_k - zeta, checking convergence."""
    if beta <= 0:
        raise ValidationError(f"beta must be positive, got {beta}")
    for mode, lam in ((1, spec.lambda1), (2, spec.lambda2)):
        if beta * lam - zeta <= 0:
            raise DivergenceError(
                f"geometric series of mode {mode} diverges: "
                f"beta*lambda{mode} - zeta = {beta * lam - zeta:.6g} <= 0"
            )
    return beta * spec.lambda1 - zeta, beta * spec.lambda2 - zeta


def log_partition_function(spec: SpectrumSpec, beta: float, zeta: float) -> float:
    """log Z, computed without under/overflow."""
    x1, x2 = _mode_exponents(spec, beta, zeta)
    return -beta * spec.e0 - math.log1p(-math.exp(-x1)) - math.log1p(-math.exp(-x2))


def partition_function(spec: SpectrumSpec, beta: float, zeta: float) -> float:
    """Z = exp(-beta e0) / prod_k (1 - exp(-beta*lambda_k + zeta))."""
    return math.exp(log_partition_function(spec, beta, zeta))


def occupations(spec: SpectrumSpec, beta: float, zeta: float) -> tuple[float, float]:
    """Bose occupations n_k = 1 / (exp(beta*lambda_k - zeta) - 1).

    Evaluated as exp(-x) / (1 - exp(-x)), which underflows to zero
    gracefully for large exponents instead of overflowing.
    """
    x1, x2 = _mode_exponents(spec, beta, zeta)
    return (
        math.exp(-x1) / -math.expm1(-x1),
        math.exp(-x2) / -math.expm1(-x2),
    )


def expected_energy_number(spec: SpectrumSpec, beta: float, zeta: float) -> tuple[float, float]:
    """Expected energy and particle number.

    E = e0 + sum_k lambda_k n_k = -d(log Z)/d(beta) and
    N = sum_k n_k = d(log Z)/d(zeta).
    """
    n1, n2 = occupations(spec, beta, zeta)
    return spec.e0 + spec.lambda1 * n1 + spec.lambda2 * n2, n1 + n2


def entropy_from_occupations(*occ: float) -> float:
    """Per-mode Bose entropy sum_k [(1+n)log(1+n) - n log n]."""
    total = 0.0
    for n in occ:
        if n < 0:
            raise ValidationError(f"occupation must be nonnegative, got {n}")
        if n > 0:
            total += (1.0 + n) * math.log1p(n) - n * math.log(n)
    return total


def entropy(spec: SpectrumSpec, beta: float, zeta: float) -> float:
    """Von Neumann entropy S = beta(E - e0) - zeta N + log(Z e^{beta e0}).

    Agrees with the per-mode Bose form :func:`entropy_from_occupations`.
    """
    x1, x2 = _mode_exponents(spec, beta, zeta)
    energy_part, number = expected_energy_number(spec, beta, zeta)
    return (
        beta * (energy_part - spec.e0)
        - zeta * number
        - math.log1p(-math.exp(-x1))
        - math.log1p(-math.exp(-x2))
    )


def thermo_point(
    spec: SpectrumSpec,
    beta: float,
    zeta: float | None = None,
    mu: float | None = None,
) -> ThermoPoint:
    """Evaluate all quantities at one state point.

    Exactly one of ``zeta`` and ``mu`` must be given.  The ``mu`` path
    enforces mu <= 0 (the physical branch); the raw ``zeta`` path only
    requires convergence.
    """
    if (zeta is None) == (mu is None):
        raise ValidationError("provide exactly one of zeta and mu")
    if mu is not None:
        if mu > 0:
            raise ValidationError(f"chemical potential must satisfy mu <= 0, got {mu}")
        zeta = beta * mu
    else:
        mu = zeta / beta if beta != 0 else math.nan
    n1, n2 = occupations(spec, beta, zeta)
    log_z = log_partition_function(spec, beta, zeta)
    energy_val = spec.e0 + spec.lambda1 * n1 + spec.lambda2 * n2
    return ThermoPoint(
        beta=beta,
        zeta=zeta,
        mu=mu,
        occupation1=n1,
        occupation2=n2,
        log_z=log_z,
        z=math.exp(log_z),
        energy=energy_val,
        number=n1 + n2,
        entropy=entropy(spec, beta, zeta),
    )


def oracle_trace(
    spec: SpectrumSpec,
    beta: float,
    zeta: float,
    n_max: int,
    tail_tol: float = 1e-12,
) -> TraceResult:
    """Brute-force trace over occupation pairs 0 <= n1, n2 <= n_max.

    Sums exp(-beta E_{n1,n2} + zeta (n1+n2)) directly and derives E, N and
    the entropy -sum p log p from the same weights.  Raises TruncationError
    via the tail bound when n_max is too small: the neglected relative mass
    of each geometric series (with an occupation-weight safety factor) must
    stay below ``tail_tol``.
    """
    x1, x2 = _mode_exponents(spec, beta, zeta)
    r1, r2 = math.exp(-x1), math.exp(-x2)
    tail = 0.0
    for r in (r1, r2):
        tail += (n_max + 2) * r ** (n_max + 1) / (1.0 - r) ** 2
    if tail > tail_tol:
        raise TruncationError(
            f"trace tail estimate {tail:.3g} exceeds {tail_tol:.3g}; increase n_max"
        )

    n = np.arange(n_max + 1)
    # log-space weights, peeled off a common factor to avoid underflow
    log_w = (
        -beta * spec.e0
        - x1 * n[:, None]
        - x2 * n[None, :]
    )
    shift = log_w.max()
    w = np.exp(log_w - shift)
    total = w.sum()
    z = float(math.exp(shift) * total)
    occupation_sum = np.add.outer(n, n)
    energy_field = spec.e0 + np.add.outer(spec.lambda1 * n, spec.lambda2 * n)
    p = w / total
    energy_val = float((p * energy_field).sum())
    number_val = float((p * occupation_sum).sum())
    entropy_val = float(-(p * (log_w - shift - math.log(total))).sum())
    return TraceResult(z=z, energy=energy_val, number=number_val, entropy=entropy_val)


@dataclass(frozen=True)
class SweepPoint:
    beta: float
    mu: float
    zeta: float
    number: float
    energy: float
    log_z: float
    entropy: float


@dataclass(frozen=True)
class RangeBoundary:
    """The two boundary rays of the attainable (number, energy) region.

    Polylines in the (N, E) plane: lower edge E = e0 + min(lambda) * t,
    upper edge E = e0 + max(lambda) * t, both through (0, e0).
    """

    lower: np.ndarray
    upper: np.ndarray


def default_mu_grid(points: int = 200, neg_min: float = 1e-4, neg_max: float = 1e2) -> list[float]:
    """Logarithmic grid in -mu from neg_max down to neg_min, ascending in mu."""
    if points < 1:
        raise ValidationError(f"mu grid needs at least one point, got {points}")
    if not (0 < neg_min <= neg_max):
        raise ValidationError(f"invalid -mu range [{neg_min}, {neg_max}]")
    if points == 1:
        return [-neg_min]
    mags = np.logspace(math.log10(neg_max), math.log10(neg_min), points)
    return [-float(m) for m in mags]


def sweep_figure1(
    spec: SpectrumSpec,
    beta_list=FIGURE1_BETAS,
    mu_grid=None,
    zeta_grid=None,
) -> tuple[list[SweepPoint], list[dict]]:
    """Evaluate the thermodynamic curves, one per beta.

    Exactly one grid may be supplied; with neither, the default mu grid is
    used.  Points are ordered by beta then ascending mu (or zeta).
    Divergent points are skipped and reported in the second return value
    as {"beta", "mu"|"zeta", "reason"} records.
    """
    if mu_grid is not None and zeta_grid is not None:
        raise ValidationError("provide at most one of mu_grid and zeta_grid")
    if mu_grid is None and zeta_grid is None:
        mu_grid = default_mu_grid()
    if not list(mu_grid if mu_grid is not None else zeta_grid):
        raise ValidationError("sweep grid is empty")

    rows: list[SweepPoint] = []
    skipped: list[dict] = []
    for beta in sorted(beta_list):
        if mu_grid is not None:
            pairs = [("mu", mu) for mu in sorted(mu_grid)]
        else:
            pairs = [("zeta", z) for z in sorted(zeta_grid)]
        for kind, value in pairs:
            try:
                if kind == "mu":
                    point = thermo_point(spec, beta, mu=value)
                else:
                    point = thermo_point(spec, beta, zeta=value)
            except (DivergenceError, ValidationError) as exc:
                skipped.append({"beta": beta, kind: value, "reason": str(exc)})
                continue
            rows.append(
                SweepPoint(
                    beta=beta,
                    mu=point.mu,
                    zeta=point.zeta,
                    number=point.number,
                    energy=point.energy,
                    log_z=point.log_z,
                    entropy=point.entropy,
                )
            )
    return rows, skipped


def numerical_range_boundary(spec: SpectrumSpec, t_max: float, samples: int = 100) -> RangeBoundary:
    """Boundary rays of the attainable (number, energy) wedge.

    Both rays start at (0, e0); slopes are the smaller and larger mode
    frequency.  Sampled uniformly on t in [0, t_max].
    """
    if t_max <= 0:
        raise ValidationError(f"t_max must be positive, got {t_max}")
    if samples < 2:
        raise ValidationError(f"need at least 2 samples, got {samples}")
    t = np.linspace(0.0, t_max, samples)
    lo, hi = sorted((spec.lambda1, spec.lambda2))
    lower = np.column_stack([t, spec.e0 + lo * t])
    upper = np.column_stack([t, spec.e0 + hi * t])
    return RangeBoundary(lower=lower, upper=upper)


def wedge_violation(spec: SpectrumSpec, number: float, energy: float) -> float:
    """How far (number, energy) falls outside the attainable wedge.

    Zero or negative means inside; the value is the larger of the two
    one-sided boundary violations.
    """
    lo, hi = sorted((spec.lambda1, spec.lambda2))
    below = (spec.e0 + lo * number) - energy
    above = energy - (spec.e0 + hi * number)
    return max(below, above)
