"""Symplectic diagonalization of the two-mode boson model.

An operator Theta = x1 a1* + x2 a2* + y1 a1 + y2 a2 satisfies
[H, Theta] = lambda Theta exactly when its coefficient vector
(x1, x2, y1, y2) is an eigenvector of a real 4x4 dynamical matrix A.
For a real simple spectrum the eigenvalues come in pairs (l1, l2, -l1, -l2)
with l1 > l2 > 0, and the four eigenvectors can be scaled so that the row
matrix U lies in the symplectic group: U Omega U^T = Omega.  The rows of U
are then the coefficients of two pseudo-boson creation operators and their
companion annihilators, which satisfy the canonical commutation table and
bring H to the diagonal form E0 + l1 n1 + l2 n2.

The bilinear form v^T Omega w equals the operator commutator
[Theta_v, Theta_w], with

    Omega = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]].
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import PairingError, RegimeError
from .model import ModelParameters

OMEGA = np.array(
    [
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
    ]
)

#: Swap of the creation and annihilation coefficient blocks,
#: (x1, x2, y1, y2) -> (y1, y2, x1, x2).  For real coefficients this is the
#: operator adjoint at coefficient level.
BLOCK_SWAP = np.array(
    [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
    ]
)

REALITY_TOL = 1e-9
DEGENERACY_TOL = 1e-8


class Regime(enum.Enum):
    """Classification of the dynamical-matrix spectrum."""

    REAL_SIMPLE = "RealSimple"
    DEGENERATE = "Degenerate"
    COMPLEX = "Complex"


class LadderKind(enum.Enum):
    CREATION = "creation"
    ANNIHILATION = "annihilation"


@dataclass(frozen=True)
class DynamicalMatrix:
    """The 4x4 equation-of-motion matrix together with the symplectic form."""

    entries: np.ndarray
    omega: np.ndarray


@dataclass(frozen=True)
class CharacteristicCoefficients:
    """Coefficients of the even quartic det(A - l*I) = l^4 - b*l^2 + c."""

    b: float
    c: float


@dataclass(frozen=True)
class LadderCoefficients:
    """Coefficient 4-vector (x1, x2, y1, y2) of one pseudo-boson operator."""

    coeffs: np.ndarray
    kind: LadderKind
    mode: int


@dataclass(frozen=True)
class SymplecticEigenbasis:
    """Normalized eigenbasis of the dynamical matrix.

    Rows of ``u`` are the eigenvector coefficients for eigenvalues
    (lambda1, lambda2, -lambda1, -lambda2); the first two rows are the
    creation operators, the last two the matching annihilators.
    """

    lambda1: float
    lambda2: float
    u: np.ndarray
    regime: Regime

    def ladder(self, kind: LadderKind, mode: int) -> LadderCoefficients:
        """Coefficient vector of one ladder operator (mode is 1 or 2)."""
        if mode not in (1, 2):
            raise ValueError(f"mode must be 1 or 2, got {mode}")
        row = mode - 1 if kind is LadderKind.CREATION else mode + 1
        return LadderCoefficients(self.u[row].copy(), kind, mode)


def build_dynamical_matrix(params: ModelParameters) -> DynamicalMatrix:
    """Assemble the equation-of-motion matrix A for [H, Theta] = lambda Theta.

    Omega*A is symmetric for every parameter choice, which forces the
    eigenvalues to be real or to occur in conjugate pairs.
    """
    a11, a22, a12 = params.alpha11, params.alpha22, params.alpha12
    b11, b22, b12 = params.beta11, params.beta22, params.beta12
    entries = np.array(
        [
            [a11, a12, -b11, -b12],
            [-a12, a22, -b12, -b22],
            [-b11, -b12, -a11, a12],
            [-b12, -b22, -a12, -a22],
        ]
    )
    return DynamicalMatrix(entries=entries, omega=OMEGA.copy())


def build_adjoint_dynamical_matrix(params: ModelParameters) -> DynamicalMatrix:
    """Equation-of-motion matrix of the adjoint Hamiltonian H*.

    Taking the adjoint flips the sign of every anti-Hermitian coupling, so
    the result equals A with (alpha12, beta) negated, or equivalently
    -P A P with P the creation/annihilation block swap.  Its spectrum
    coincides with the spectrum of A.
    """
    a11, a22, a12 = params.alpha11, params.alpha22, params.alpha12
    b11, b22, b12 = params.beta11, params.beta22, params.beta12
    entries = np.array(
        [
            [a11, -a12, b11, b12],
            [a12, a22, b12, b22],
            [b11, b12, -a11, -a12],
            [b12, b22, a12, -a22],
        ]
    )
    return DynamicalMatrix(entries=entries, omega=OMEGA.copy())


def characteristic_coefficients(params: ModelParameters) -> CharacteristicCoefficients:
    """Closed-form coefficients of the characteristic quartic of A.

    det(A - l*I) = l^4 - b*l^2 + c; the odd powers vanish identically.
    """
    a11, a22, a12 = params.alpha11, params.alpha22, params.alpha12
    b11, b22, b12 = params.beta11, params.beta22, params.beta12
    b = a11**2 + a22**2 + 2 * b12**2 - 2 * a12**2 + b11**2 + b22**2
    c = (
        a11**2 * a22**2
        + 2 * a11 * a22 * b12**2
        + b12**4
        + 2 * a11 * a22 * a12**2
        - 2 * b12**2 * a12**2
        + a12**4
        + a22**2 * b11**2
        - 2 * b12**2 * b11 * b22
        + 2 * a12**2 * b11 * b22
        + a11**2 * b22**2
        + b11**2 * b22**2
    )
    return CharacteristicCoefficients(b=b, c=c)


def analytic_eigenvalues(
    params: ModelParameters,
    degeneracy_tol: float = DEGENERACY_TOL,
) -> tuple[float | None, float | None, Regime]:
    """Eigenvalue pair of A from the quartic root formula.

    Solves l^2 = (b +/- sqrt(b^2 - 4c)) / 2.  Returns (lambda1, lambda2,
    regime) with lambda1 >= lambda2 > 0 when both squared roots are real
    and positive; otherwise (None, None, Regime.COMPLEX).  A Complex
    result is a first-class classification, not an error.
    """
    quartic = characteristic_coefficients(params)
    b, c = quartic.b, quartic.c
    disc = b * b - 4.0 * c
    if disc < 0.0 or c <= 0.0 or b <= 0.0:
        return None, None, Regime.COMPLEX
    root = np.sqrt(disc)
    lam1 = float(np.sqrt((b + root) / 2.0))
    lam2 = float(np.sqrt((b - root) / 2.0))
    if lam2 <= 0.0:
        return None, None, Regime.COMPLEX
    if lam1 - lam2 <= degeneracy_tol * (1.0 + lam1):
        return lam1, lam2, Regime.DEGENERATE
    return lam1, lam2, Regime.REAL_SIMPLE


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Scale so the largest-magnitude component is real and positive."""
    k = int(np.argmax(np.abs(v)))
    phase = v[k] / abs(v[k])
    return v / phase


def compute_eigenbasis(
    params: ModelParameters,
    tol: float = 1e-10,
    reality_tol: float = REALITY_TOL,
) -> SymplecticEigenbasis:
    """Symplectically normalized eigenbasis of the dynamical matrix.

    Eigenvalues come from the quartic formula (authoritative); the dense
    eigensolver supplies eigenvectors only, matched to the analytic values
    by nearness.  Each positive-eigenvalue eigenvector is scaled so its
    largest component is real positive, and its negative partner is scaled
    to make the pairing products v3.Omega.v1 = v4.Omega.v2 = +1.  The
    resulting row matrix satisfies U Omega U^T = Omega (so the ladder
    commutator table is canonical) and U^{-1} = Omega U^T Omega^T.

    Raises RegimeError outside the RealSimple regime and PairingError when
    a pairing product is numerically too small to scale by.
    """
    lam1, lam2, regime = analytic_eigenvalues(params)
    if regime is not Regime.REAL_SIMPLE:
        raise RegimeError(f"eigenbasis requires RealSimple regime, got {regime.value}")

    dyn = build_dynamical_matrix(params)
    scale = 1.0 + float(np.abs(dyn.entries).max())
    eigvals, eigvecs = np.linalg.eig(dyn.entries.astype(complex))
    if np.abs(eigvals.imag).max() > reality_tol * scale:
        raise RegimeError(
            "numeric eigenvalues have nonnegligible imaginary parts; "
            "regime classification disagrees with the eigensolver"
        )

    targets = (lam1, lam2, -lam1, -lam2)
    rows = []
    used: set[int] = set()
    for target in targets:
        dist = np.abs(eigvals.real - target)
        dist[list(used)] = np.inf
        k = int(np.argmin(dist))
        runner_up = np.partition(dist, 1)[1]
        if runner_up - dist[k] <= reality_tol * scale:
            raise PairingError(
                f"ambiguous eigenvalue match for target {target:.6g}: "
                f"two numeric eigenvalues are equally close"
            )
        used.add(k)
        rows.append(eigvecs[:, k])

    v1 = _fix_phase(rows[0])
    v2 = _fix_phase(rows[1])
    pair13 = rows[2] @ OMEGA @ v1
    pair24 = rows[3] @ OMEGA @ v2
    if min(abs(pair13), abs(pair24)) < tol:
        raise PairingError(
            f"symplectic pairing product below tolerance "
            f"({abs(pair13):.3g}, {abs(pair24):.3g} < {tol:.3g})"
        )
    v3 = rows[2] / pair13
    v4 = rows[3] / pair24

    u = np.vstack([v1, v2, v3, v4])
    if np.abs(u.imag).max() > reality_tol * scale:
        raise PairingError("normalized eigenvectors are not real in the RealSimple regime")
    return SymplecticEigenbasis(lambda1=lam1, lambda2=lam2, u=u.real.copy(), regime=regime)


def symplectic_product(v: np.ndarray, w: np.ndarray) -> complex:
    """The bilinear form v^T Omega w (no conjugation)."""
    v = np.asarray(v)
    w = np.asarray(w)
    out = v @ OMEGA @ w
    return complex(out)


def commutator(v: LadderCoefficients, w: LadderCoefficients) -> complex:
    """Commutator [Theta_v, Theta_w] evaluated at coefficient level.

    Equals v^T Omega w under the Weyl-Heisenberg relations; for a
    normalized eigenbasis the table is canonical:
    [Theta_i, Theta_j^ddag] = delta_ij, all same-kind commutators zero.
    """
    return symplectic_product(v.coeffs, w.coeffs)


def adjoint_coefficients(v: np.ndarray) -> np.ndarray:
    """Swap the creation and annihilation blocks: (x, y) -> (y, x).

    At operator level this is the adjoint of Theta_v for real coefficients.
    It also intertwines the two dynamical matrices: if v is an eigenvector
    of the adjoint matrix with eigenvalue lambda, the swapped vector is an
    eigenvector of A with eigenvalue -lambda (A P = -P A~).  Applying the
    swap twice returns the input.
    """
    return BLOCK_SWAP @ np.asarray(v)


# Alias emphasising the eigenvector-exchange role of the block swap.
adjoint_eigenvector_map = adjoint_coefficients


def diagonal_form(params: ModelParameters) -> tuple[float, float, float]:
    """Ground energy and mode frequencies of the diagonalized Hamiltonian.

    Returns (e0, lambda1, lambda2) with e0 = (lambda1 + lambda2
    - alpha11 - alpha22) / 2, the lowest eigenvalue of H.
    """
    lam1, lam2, regime = analytic_eigenvalues(params)
    if regime is not Regime.REAL_SIMPLE:
        raise RegimeError(f"diagonal form requires RealSimple regime, got {regime.value}")
    e0 = 0.5 * (lam1 + lam2 - params.alpha11 - params.alpha22)
    return e0, lam1, lam2


def level_table(
    e0: float, lambda1: float, lambda2: float, n_cap: int
) -> list[tuple[int, int, float]]:
    """All levels e0 + n1*lambda1 + n2*lambda2 for 0 <= n1, n2 <= n_cap.

    Sorted ascending by energy, ties broken lexicographically by (n1, n2).
    """
    if n_cap < 0:
        raise ValueError(f"n_cap must be nonnegative, got {n_cap}")
    levels = [
        (n1, n2, e0 + n1 * lambda1 + n2 * lambda2)
        for n1 in range(n_cap + 1)
        for n2 in range(n_cap + 1)
    ]
    levels.sort(key=lambda item: (item[2], item[0], item[1]))
    return levels


def energy_levels(params: ModelParameters, n_cap: int) -> list[tuple[int, int, float]]:
    """Analytic spectrum of H up to n_cap quanta per pseudo-boson mode."""
    e0, lam1, lam2 = diagonal_form(params)
    return level_table(e0, lam1, lam2, n_cap)
