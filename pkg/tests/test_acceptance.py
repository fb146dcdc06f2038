"""Acceptance suite: every exit criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.  The derived model is (alpha11, alpha22, beta12) = (2, 1, 0.5);
the thermodynamic reproduction uses the spectrum (e0, l1, l2) = (1, 1, 3)
with beta in {0.125, 0.25, 0.5, 1, 4}.
"""

import math
import time

import numpy as np
import pytest

from helpers import make_rng, real_simple_draws

from pseudoboson import (
    OMEGA,
    ModelParameters,
    SpectrumSpec,
    analytic_eigenvalues,
    assemble_hamiltonian,
    build_dynamical_matrix,
    build_families,
    build_metric,
    build_space,
    compute_eigenbasis,
    default_mu_grid,
    diagonal_form,
    entropy,
    evolve,
    expected_energy_number,
    level_table,
    log_partition_function,
    numerical_range_boundary,
    oracle_trace,
    partition_function,
    physical_hamiltonian,
    physical_inner_product,
    rescale_family,
    sweep_figure1,
)

DERIVED = ModelParameters(alpha11=2.0, alpha22=1.0, beta12=0.5)
FIG1 = SpectrumSpec(e0=1.0, lambda1=1.0, lambda2=3.0)
N_DRAWS = 1000


def report(number: int, name: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"criterion {number} [{name}]: {status}{suffix}")
    assert ok, f"criterion {number} [{name}] failed{suffix}"


@pytest.fixture(scope="module")
def draws():
    rng = make_rng(offset=1)
    started = time.perf_counter()
    collected = list(real_simple_draws(rng, N_DRAWS))
    return collected, time.perf_counter() - started


def test_criterion_1_symplectic_normalization(draws):
    params_list, draw_time = draws
    started = time.perf_counter()
    worst = 0.0
    for params in params_list:
        u = compute_eigenbasis(params).u
        worst = max(worst, np.abs(u @ OMEGA @ u.T @ OMEGA.T - np.eye(4)).max())
    elapsed = draw_time + (time.perf_counter() - started)
    report(
        1,
        "symplectic normalization",
        worst < 1e-10 and elapsed < 5.0,
        f"max residual {worst:.3e}, {elapsed:.2f}s for {N_DRAWS} draws",
    )


def test_criterion_2_quartic_vs_eigensolver(draws):
    params_list, _ = draws
    worst = 0.0
    for params in params_list:
        lam1, lam2, _ = analytic_eigenvalues(params)
        numeric = np.sort(np.linalg.eigvals(build_dynamical_matrix(params).entries).real)
        worst = max(worst, abs(numeric[3] - lam1) / lam1, abs(numeric[2] - lam2) / lam2)
    report(2, "quartic vs eigensolver", worst < 1e-10, f"max rel error {worst:.3e}")


def test_criterion_3_oracle_spectrum():
    started = time.perf_counter()
    space = build_space(20)
    h = assemble_hamiltonian(DERIVED, space)
    eigs = np.linalg.eigvals(h)
    eigs = eigs[np.argsort(eigs.real)][:6]
    e0, lam1, lam2 = diagonal_form(DERIVED)
    expected = np.array([e for _, _, e in level_table(e0, lam1, lam2, 6)][:6])
    elapsed = time.perf_counter() - started
    residual = max(np.abs(eigs.real - expected).max(), np.abs(eigs.imag).max())
    values_ok = (
        abs(e0 - 0.0811388) < 1e-6
        and abs(lam1 - 2.0811388) < 1e-6
        and abs(lam2 - 1.0811388) < 1e-6
    )
    report(
        3,
        "oracle spectrum",
        residual < 1e-6 and values_ok and elapsed < 10.0,
        f"max deviation {residual:.3e}, {elapsed:.2f}s",
    )


@pytest.fixture(scope="module")
def fock_stack():
    space = build_space(20)
    h = assemble_hamiltonian(DERIVED, space)
    family = build_families(DERIVED, space, 3)
    metric = build_metric(family)
    return space, h, family, metric


def test_criterion_4_biorthogonality(fock_stack):
    _, _, family, _ = fock_stack
    diag = np.diag(family.gram)
    expected = np.array(
        [
            math.factorial(n1) * math.factorial(n2) * family.vacuum_overlap
            for n1 in range(4)
            for n2 in range(4)
        ]
    )
    diag_err = np.abs(diag / expected - 1.0).max()
    off_err = np.abs(family.gram - np.diag(diag)).max() / np.abs(diag).max()
    report(
        4,
        "biorthogonality",
        diag_err < 1e-6 and off_err < 1e-8,
        f"diag rel {diag_err:.3e}, offdiag rel {off_err:.3e}",
    )


def test_criterion_5_metric(fock_stack):
    _, h, _, metric = fock_stack
    herm = np.abs(metric.eta - metric.eta.conj().T).max()
    min_eig = np.linalg.eigvalsh(metric.restricted()).min()
    intertwine = np.linalg.norm((metric.eta @ h - h.conj().T @ metric.eta) @ metric.basis, 2)
    report(
        5,
        "metric operator",
        herm < 1e-10 and min_eig > 0 and intertwine < 1e-8,
        f"hermiticity {herm:.3e}, min eig {min_eig:.3e}, intertwining {intertwine:.3e}",
    )


def test_criterion_6_evolution(fock_stack):
    _, _, family, metric = fock_stack
    fam = rescale_family(family)
    psi = fam.v[:, fam.column(0, 0)] + fam.v[:, fam.column(1, 1)]
    psi = psi / math.sqrt(physical_inner_product(psi, psi, metric).real)
    _, states = evolve(psi.astype(complex), physical_hamiltonian(fam), 5.0, 100)
    phys = np.array([physical_inner_product(s, s, metric).real for s in states])
    std = np.einsum("ij,ij->i", states.conj(), states).real
    phys_drift = np.abs(phys / phys[0] - 1.0).max()
    std_drift = np.abs(std / std[0] - 1.0).max()
    report(
        6,
        "evolution norms",
        phys_drift < 1e-8 and std_drift > 1e-3,
        f"physical drift {phys_drift:.3e}, standard drift {std_drift:.3e}",
    )


def test_criterion_7_thermodynamics_vs_trace():
    beta, zeta = 1.0, -1.0
    trace = oracle_trace(FIG1, beta, zeta, n_max=60)
    z = partition_function(FIG1, beta, zeta)
    energy_val, number_val = expected_energy_number(FIG1, beta, zeta)
    entropy_val = entropy(FIG1, beta, zeta)
    errs = (
        abs(z / trace.z - 1.0),
        abs(energy_val / trace.energy - 1.0),
        abs(number_val / trace.number - 1.0),
        abs(entropy_val / trace.entropy - 1.0),
    )
    spots = abs(number_val - 0.175175) < 1e-6 and abs(energy_val - 1.212489) < 1e-6
    report(
        7,
        "closed form vs truncated trace",
        max(errs) < 1e-10 and spots,
        f"max rel err {max(errs):.3e}, N={number_val:.6f}, E={energy_val:.6f}",
    )


def test_criterion_8_figure_reproduction():
    rows, skipped = sweep_figure1(FIG1, mu_grid=default_mu_grid())
    betas = sorted({row.beta for row in rows})
    curves_ok = betas == [0.125, 0.25, 0.5, 1.0, 4.0] and not skipped
    wedge_ok = all(
        1.0 + row.number <= row.energy + 1e-12
        and row.energy <= 1.0 + 3.0 * row.number + 1e-12
        for row in rows
    )
    endpoint_ok = True
    for beta in betas:
        first = [row for row in rows if row.beta == beta][0]  # most negative mu
        endpoint_ok &= abs(first.number) < 1e-4 and abs(first.energy - 1.0) < 1e-4
    boundary = numerical_range_boundary(FIG1, t_max=10.0, samples=11)
    boundary_ok = np.allclose(
        boundary.lower[:, 1], 1.0 + boundary.lower[:, 0]
    ) and np.allclose(boundary.upper[:, 1], 1.0 + 3.0 * boundary.upper[:, 0])
    report(
        8,
        "figure reproduction",
        curves_ok and wedge_ok and endpoint_ok and boundary_ok,
        f"{len(rows)} points on {len(betas)} curves, wedge and limits verified",
    )


def test_criterion_9_finite_difference_consistency():
    # mu values keep N well above the finite-difference noise floor
    # eps*|log Z| / (2*step), where a relative comparison is meaningful
    step = 1e-5
    worst = 0.0
    for beta in (0.125, 0.25, 0.5, 1.0, 4.0):
        for mu in (-1.0, -0.5, -0.2, -0.01):
            zeta = beta * mu
            energy_val, number_val = expected_energy_number(FIG1, beta, zeta)
            de = -(
                log_partition_function(FIG1, beta + step, zeta)
                - log_partition_function(FIG1, beta - step, zeta)
            ) / (2 * step)
            dn = (
                log_partition_function(FIG1, beta, zeta + step)
                - log_partition_function(FIG1, beta, zeta - step)
            ) / (2 * step)
            worst = max(worst, abs(de / energy_val - 1.0), abs(dn / number_val - 1.0))
    report(9, "finite-difference consistency", worst < 1e-6, f"max rel err {worst:.3e}")
