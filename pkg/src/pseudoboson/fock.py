"""Brute-force verification layer on a truncated two-mode Fock space.

Every operator is represented as a dense matrix on the occupation basis
|n1, n2> with 0 <= n1, n2 <= n_max, flat index n1*(n_max+1) + n2.  The
ladder rules hold exactly below the cutoff shell, so spectral and
biorthogonality claims are only trusted for states whose occupation stays
well below n_max (the families enforce 2*n_cap <= n_max).

The standard inner product is the numpy one, conjugate-linear in the
first argument (np.vdot).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DegenerateFamilyError, TruncationError
from .model import ModelParameters
from .symplectic import LadderKind, compute_eigenbasis, diagonal_form

VACUUM_TOL = 1e-8


@dataclass(frozen=True)
class TruncatedSpace:
    """Dense annihilation matrices and the occupation index map."""

    n_max: int
    dim: int
    a1: np.ndarray
    a2: np.ndarray

    def index(self, n1: int, n2: int) -> int:
        """Flat basis index of |n1, n2>."""
        if not (0 <= n1 <= self.n_max and 0 <= n2 <= self.n_max):
            raise IndexError(f"occupation ({n1}, {n2}) outside cutoff {self.n_max}")
        return n1 * (self.n_max + 1) + n2

    def occupations(self, k: int) -> tuple[int, int]:
        """Inverse of :meth:`index`."""
        if not 0 <= k < self.dim:
            raise IndexError(f"flat index {k} outside dimension {self.dim}")
        return divmod(k, self.n_max + 1)

    def number_operator(self, mode: int) -> np.ndarray:
        a = self.a1 if mode == 1 else self.a2
        return a.T @ a

    def block_indices(self, total_max: int) -> np.ndarray:
        """Flat indices of basis states with n1 + n2 <= total_max."""
        keep = [
            self.index(n1, n2)
            for n1 in range(min(total_max, self.n_max) + 1)
            for n2 in range(min(total_max - n1, self.n_max) + 1)
        ]
        return np.array(sorted(keep), dtype=int)


def build_space(n_max: int) -> TruncatedSpace:
    """Construct the truncated space; n_max must be at least 1."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    d = n_max + 1
    a = np.zeros((d, d))
    for n in range(1, d):
        a[n - 1, n] = math.sqrt(n)
    eye = np.eye(d)
    return TruncatedSpace(n_max=n_max, dim=d * d, a1=np.kron(a, eye), a2=np.kron(eye, a))


def assemble_hamiltonian(params: ModelParameters, space: TruncatedSpace) -> np.ndarray:
    """Dense Hamiltonian matrix, assembled term by term from the couplings."""
    a1, a2 = space.a1, space.a2
    c1, c2 = a1.T, a2.T
    h = params.alpha11 * (c1 @ a1) + params.alpha22 * (c2 @ a2)
    if params.alpha12:
        h += params.alpha12 * (c1 @ a2 - c2 @ a1)
    if params.beta11:
        h += 0.5 * params.beta11 * (c1 @ c1 - a1 @ a1)
    if params.beta22:
        h += 0.5 * params.beta22 * (c2 @ c2 - a2 @ a2)
    if params.beta12:
        h += params.beta12 * (c1 @ c2 - a2 @ a1)
    return h


def ladder_matrix(coeffs, space: TruncatedSpace) -> np.ndarray:
    """Dense matrix of x1 a1* + x2 a2* + y1 a1 + y2 a2.

    Accepts a LadderCoefficients instance or a raw 4-vector.
    """
    vec = np.asarray(getattr(coeffs, "coeffs", coeffs))
    x1, x2, y1, y2 = vec
    return x1 * space.a1.T + x2 * space.a2.T + y1 * space.a1 + y2 * space.a2


def oracle_spectrum(params: ModelParameters, n_max: int, k: int) -> np.ndarray:
    """The k lowest eigenvalues (by real part) of the truncated Hamiltonian."""
    space = build_space(n_max)
    if k > space.dim:
        raise ValueError(f"requested {k} eigenvalues from a dimension-{space.dim} space")
    h = assemble_hamiltonian(params, space)
    eigvals = np.linalg.eigvals(h)
    return eigvals[np.argsort(eigvals.real)][:k]


def vacuum_state(
    theta1_mat: np.ndarray,
    theta2_mat: np.ndarray,
    tol: float = VACUUM_TOL,
) -> tuple[np.ndarray, float]:
    """Joint kernel vector of two annihilators, with its residual.

    Returns the unit vector minimizing |T1 psi|^2 + |T2 psi|^2, extracted
    as the smallest right singular vector of the stacked matrix; the
    residual is the smallest singular value.  The phase is fixed so the
    largest-magnitude component is real positive.  Raises TruncationError
    when the residual exceeds ``tol``.
    """
    stacked = np.vstack([theta1_mat, theta2_mat])
    _, sigma, vh = scipy.linalg.svd(stacked, full_matrices=False)
    residual = float(sigma[-1])
    if residual > tol:
        raise TruncationError(
            f"vacuum residual {residual:.3g} exceeds tolerance {tol:.3g}; "
            f"increase n_max"
        )
    psi = vh[-1].conj()
    k = int(np.argmax(np.abs(psi)))
    psi = psi / (psi[k] / abs(psi[k]))
    if np.abs(psi.imag).max() < 1e-14:
        psi = psi.real.copy()
    return psi, residual


@dataclass(frozen=True)
class BiorthogonalFamily:
    """Eigenvector families of H (columns of v) and of H* (columns of w).

    Column order is n1-major: column n1*(n_cap+1) + n2 holds the state with
    n1 quanta of the first pseudo-boson mode and n2 of the second.  The
    gram matrix w^dag v is diagonal; raw families have diagonal entries
    n1! n2! <psi0, psi0~>, rescaled families have gram = identity.
    ``levels`` holds the eigenvalue of each column.
    """

    v: np.ndarray
    w: np.ndarray
    n_cap: int
    gram: np.ndarray
    vacuum_overlap: float
    levels: np.ndarray
    rescaled: bool

    def column(self, n1: int, n2: int) -> int:
        if not (0 <= n1 <= self.n_cap and 0 <= n2 <= self.n_cap):
            raise IndexError(f"family index ({n1}, {n2}) outside cap {self.n_cap}")
        return n1 * (self.n_cap + 1) + n2


def _apply_tower(seed: np.ndarray, op1: np.ndarray, op2: np.ndarray, n_cap: int) -> np.ndarray:
    cols = {(0, 0): seed}
    for n2 in range(1, n_cap + 1):
        cols[(0, n2)] = op2 @ cols[(0, n2 - 1)]
    for n1 in range(1, n_cap + 1):
        for n2 in range(n_cap + 1):
            cols[(n1, n2)] = op1 @ cols[(n1 - 1, n2)]
    return np.column_stack(
        [cols[(n1, n2)] for n1 in range(n_cap + 1) for n2 in range(n_cap + 1)]
    )


def build_families(
    params: ModelParameters,
    space: TruncatedSpace,
    n_cap: int,
    vacuum_tol: float = VACUUM_TOL,
) -> BiorthogonalFamily:
    """Construct the biorthogonal eigenvector families up to n_cap quanta.

    Columns of v are built by repeated application of the two creation
    operators to the vacuum of the annihilators; columns of w apply the
    adjoints of the annihilators to the vacuum of the adjoint creators
    (which is the ground state of H*).  Requires 2*n_cap <= n_max so all
    columns stay in the trusted lower shells.
    """
    if n_cap < 0:
        raise ValueError(f"n_cap must be nonnegative, got {n_cap}")
    if 2 * n_cap > space.n_max:
        raise ValueError(
            f"n_cap={n_cap} too large for n_max={space.n_max}; need 2*n_cap <= n_max"
        )
    basis = compute_eigenbasis(params)
    e0, lam1, lam2 = diagonal_form(params)

    create1 = ladder_matrix(basis.ladder(LadderKind.CREATION, 1), space)
    create2 = ladder_matrix(basis.ladder(LadderKind.CREATION, 2), space)
    annih1 = ladder_matrix(basis.ladder(LadderKind.ANNIHILATION, 1), space)
    annih2 = ladder_matrix(basis.ladder(LadderKind.ANNIHILATION, 2), space)

    psi0, _ = vacuum_state(annih1, annih2, tol=vacuum_tol)
    # Vacuum of H*: annihilated by the adjoints of the creation operators.
    psi0_adj, _ = vacuum_state(create1.conj().T, create2.conj().T, tol=vacuum_tol)

    v = _apply_tower(psi0, create1, create2, n_cap)
    w = _apply_tower(psi0_adj, annih1.conj().T, annih2.conj().T, n_cap)
    gram = w.conj().T @ v
    overlap = float(np.vdot(psi0_adj, psi0).real)
    levels = np.array(
        [e0 + n1 * lam1 + n2 * lam2 for n1 in range(n_cap + 1) for n2 in range(n_cap + 1)]
    )
    return BiorthogonalFamily(
        v=v, w=w, n_cap=n_cap, gram=gram, vacuum_overlap=overlap,
        levels=levels, rescaled=False,
    )


def rescale_family(family: BiorthogonalFamily) -> BiorthogonalFamily:
    """Divide each column pair by sqrt(n1! n2! <psi0, psi0~>).

    Afterwards the gram matrix is the identity up to truncation noise.
    Raises DegenerateFamilyError when the vacuum overlap is not positive.
    """
    if family.rescaled:
        return family
    if family.vacuum_overlap <= 0.0:
        raise DegenerateFamilyError(
            f"vacuum overlap {family.vacuum_overlap:.3g} is not positive"
        )
    cap = family.n_cap
    scale = np.array(
        [
            math.sqrt(math.factorial(n1) * math.factorial(n2) * family.vacuum_overlap)
            for n1 in range(cap + 1)
            for n2 in range(cap + 1)
        ]
    )
    v = family.v / scale
    w = family.w / scale
    return BiorthogonalFamily(
        v=v, w=w, n_cap=cap, gram=w.conj().T @ v,
        vacuum_overlap=family.vacuum_overlap, levels=family.levels.copy(),
        rescaled=True,
    )


@dataclass(frozen=True)
class MetricOperator:
    """Positive-definite metric on the subspace spanned by the family.

    ``eta`` maps each family eigenvector of H to the matching eigenvector
    of H*, so it intertwines them (eta H = H^dag eta on the span) and the
    physical inner product <eta psi, phi> makes H Hermitian.  As a full
    matrix eta has rank equal to the family size; positivity holds on the
    spanned subspace, whose orthonormal basis is ``basis``.
    """

    eta: np.ndarray
    basis: np.ndarray

    def restricted(self) -> np.ndarray:
        """eta compressed to the spanned subspace (Hermitian part)."""
        m = self.basis.conj().T @ self.eta @ self.basis
        return 0.5 * (m + m.conj().T)


def build_metric(family: BiorthogonalFamily, gram_tol: float = 1e-6) -> MetricOperator:
    """Metric operator eta = w w^dag from a rescaled family."""
    fam = rescale_family(family)
    m = fam.gram.shape[0]
    gram_err = float(np.abs(fam.gram - np.eye(m)).max())
    if gram_err > gram_tol:
        raise DegenerateFamilyError(
            f"rescaled gram deviates from identity by {gram_err:.3g}; "
            f"family is not usable for a metric"
        )
    eta = fam.w @ fam.w.conj().T
    eta = 0.5 * (eta + eta.conj().T)
    q, _ = np.linalg.qr(fam.v)
    return MetricOperator(eta=eta, basis=q)


def physical_inner_product(psi: np.ndarray, phi: np.ndarray, metric) -> complex:
    """The physical inner product <eta psi, phi>.

    Conjugate-symmetric and positive definite on the family span; under it
    the two ladder operators of each mode are mutually adjoint.
    """
    eta = getattr(metric, "eta", metric)
    return complex(np.vdot(eta @ psi, phi))


@dataclass(frozen=True)
class ExpansionResult:
    """Superposition data of a state over the family eigenvectors.

    ``coefficients[n1, n2]`` reproduces psi = sum c * Psi_{n1,n2};
    ``amplitudes`` are the probability amplitudes whose squared moduli sum
    to the physical norm <eta psi, psi>.  ``residual`` is the norm of the
    part of psi outside the family span, relative to |psi|.
    """

    coefficients: np.ndarray
    amplitudes: np.ndarray
    residual: float


def expansion_coefficients(
    psi: np.ndarray, family: BiorthogonalFamily, metric: MetricOperator
) -> ExpansionResult:
    """Expand a state over the family via the physical inner product.

    c_{n1,n2} = <eta psi, Psi_{n1,n2}>* / <eta Psi_{n1,n2}, Psi_{n1,n2}>
    evaluated with the biorthogonal structure; the reconstruction residual
    reports how far psi is from the span.  Coefficients refer to the family
    columns exactly as given (raw or rescaled); the formula is covariant
    under column rescaling.
    """
    fam = family
    eta = metric.eta
    cap = fam.n_cap
    diag = np.einsum("ij,ij->j", fam.v.conj(), eta @ fam.v).real
    coeff = (fam.v.conj().T @ (eta @ psi)) / diag
    amps = coeff * np.sqrt(diag)
    recon = fam.v @ coeff
    scale = float(np.linalg.norm(psi))
    residual = float(np.linalg.norm(psi - recon)) / (scale if scale > 0 else 1.0)
    shape = (cap + 1, cap + 1)
    return ExpansionResult(
        coefficients=coeff.reshape(shape),
        amplitudes=amps.reshape(shape),
        residual=residual,
    )


def physical_hamiltonian(family: BiorthogonalFamily) -> np.ndarray:
    """Deflation of H onto the trusted eigenfamily: v diag(E) w^dag.

    Truncating a non-Hermitian quadratic Hamiltonian produces spurious
    complex eigenvalues at the cutoff boundary whose imaginary parts grow
    with n_max; exponentiating the raw matrix amplifies any overlap with
    them like exp(|Im E| t).  The deflated matrix keeps the physical
    low-lying dynamics exactly and freezes everything outside the span,
    which makes long-time propagation well conditioned.
    """
    fam = rescale_family(family)
    return (fam.v * fam.levels) @ fam.w.conj().T


def evolve(
    psi0: np.ndarray, h_mat: np.ndarray, t_final: float, steps: int
) -> tuple[np.ndarray, np.ndarray]:
    """Propagate i d/dt psi = H psi over [0, t_final].

    Uses the dense step propagator exp(-i H dt) applied repeatedly, so
    there is no time-integration error beyond roundoff.  Returns (times,
    states) with states of shape (steps + 1, dim).  For non-Hermitian H
    pass the deflated matrix from :func:`physical_hamiltonian`; the raw
    truncated matrix has unstable cutoff artifacts.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    dt = t_final / steps
    prop = scipy.linalg.expm(-1j * h_mat * dt)
    states = np.empty((steps + 1, len(psi0)), dtype=complex)
    states[0] = psi0
    for k in range(steps):
        states[k + 1] = prop @ states[k]
    times = np.linspace(0.0, t_final, steps + 1)
    return times, states
