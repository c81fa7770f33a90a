import numpy as np
import pytest

from conformal_rigidity import (
    NearDisconnectionWarning,
    build_graph,
    eigendecompose,
    eigenspace,
    lambda2,
    lambdaN,
    laplacian,
    load_fixture,
    rayleigh_witness_check,
)
from conformal_rigidity._kernels import jacobi_eigh
from conformal_rigidity.errors import NoConvergence, NoSuchEigenvalue, NotAnEigenvector


def spectrum_pairs(g):
    spec = eigendecompose(laplacian(g))
    return [(round(c.value, 6), c.multiplicity) for c in spec.clusters]


def test_known_spectra():
    assert spectrum_pairs(load_fixture("c4")) == [(0.0, 1), (2.0, 2), (4.0, 1)]
    assert spectrum_pairs(load_fixture("petersen")) == [(0.0, 1), (2.0, 5), (5.0, 4)]
    assert spectrum_pairs(load_fixture("hoffman")) == [
        (0.0, 1), (2.0, 4), (4.0, 6), (6.0, 4), (8.0, 1)]
    assert spectrum_pairs(load_fixture("c6_complement")) == [
        (0.0, 1), (2.0, 1), (3.0, 2), (5.0, 2)]


def test_eigendecompose_reconstructs(rng):
    for _ in range(20):
        A = rng.normal(size=(7, 7))
        A = (A + A.T) / 2
        spec = eigendecompose(A, laplacian_mode=False)
        V = spec.vectors
        R = V @ np.diag(spec.values) @ V.T
        assert np.max(np.abs(R - A)) < 1e-10
        assert np.max(np.abs(V.T @ V - np.eye(7))) < 1e-10


def test_eigenvalues_sorted_and_zero_snapped(petersen):
    spec = eigendecompose(laplacian(petersen))
    assert spec.values[0] == 0.0
    assert all(a <= b + 1e-12 for a, b in zip(spec.values, spec.values[1:]))
    # first column is the constant vector for Laplacian input
    assert np.allclose(spec.vectors[:, 0], 1 / np.sqrt(10))


def test_lambda2_lambdaN(petersen):
    assert lambda2(petersen) == pytest.approx(2.0, abs=1e-9)
    assert lambdaN(petersen) == pytest.approx(5.0, abs=1e-9)
    # weighting moves both
    w = [1.0] * 15
    w[0] = 0.5
    assert lambda2(petersen, w) < 2.0 + 1e-9


def test_eigenspace_extraction(petersen):
    spec = eigendecompose(laplacian(petersen))
    basis = eigenspace(spec, 2.0)
    assert basis.multiplicity == 5
    L = laplacian(petersen)
    assert np.max(np.abs(L @ basis.vectors - 2.0 * basis.vectors)) < 1e-8
    with pytest.raises(NoSuchEigenvalue):
        eigenspace(spec, 3.7)


def test_near_disconnection_warning():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    w = [1.0, 1e-14, 1.0]
    with pytest.warns(NearDisconnectionWarning):
        eigendecompose(laplacian(g, w))


def test_rayleigh_witness_check(c4):
    L = laplacian(c4)
    x = np.array([1.0, 0.0, -1.0, 0.0])
    rho = rayleigh_witness_check(L, x)
    assert rho == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(NotAnEigenvector):
        rayleigh_witness_check(L, np.array([1.0, 2.0, 3.0, 4.0]))


def test_jacobi_backends_agree(rng):
    A = rng.normal(size=(9, 9))
    A = A + A.T
    evals_np, _ = jacobi_eigh(A, force_backend="numpy")
    ref = np.linalg.eigvalsh(A)
    assert np.max(np.abs(evals_np - ref)) < 1e-10


def test_jacobi_raises_on_sweep_exhaustion(rng):
    A = rng.normal(size=(12, 12))
    A = A + A.T
    with pytest.raises(NoConvergence):
        jacobi_eigh(A, max_sweeps=1)


def test_cluster_tolerance_groups_close_values():
    # eigenvalues 0, 1, 1 + tiny, 3 should form three clusters
    d = np.diag([0.0, 1.0, 1.0 + 1e-12, 3.0])
    spec = eigendecompose(d, laplacian_mode=False)
    assert [c.multiplicity for c in spec.clusters] == [1, 2, 1]
