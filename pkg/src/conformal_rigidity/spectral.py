"""Eigendecomposition and eigenvalue queries tuned for graph Laplacians.

The solver is the cyclic Jacobi kernel from _kernels. On top of it this
module adds the Laplacian-specific post-processing: snapping the zero
eigenvalue, clustering near-equal eigenvalues, and re-orthogonalizing
positive eigenspaces against the all-ones kernel vector.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NearDisconnectionWarning, NoSuchEigenvalue, NotAnEigenvector
from .graphs import Graph, laplacian

ZERO_SNAP = 1e-9
CLUSTER_REL_TOL = 1e-8


@dataclass(frozen=True)
class Cluster:
    """A group of numerically equal eigenvalues."""

    value: float
    indices: tuple

    @property
    def multiplicity(self):
        return len(self.indices)


@dataclass(frozen=True)
class Spectrum:
    """Full eigendecomposition: ascending values, orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray
    clusters: tuple
    laplacian_mode: bool

    @property
    def n(self):
        return len(self.values)


def _looks_like_laplacian(L):
    scale = max(1.0, float(np.abs(L).max()))
    if float(np.abs(L - L.T).max()) > 1e-10 * scale:
        return False
    return float(np.abs(L.sum(axis=1)).max()) <= 1e-8 * scale


def _cluster(values):
    tol = CLUSTER_REL_TOL * max(1.0, abs(float(values[-1])))
    groups = []
    start = 0
    for i in range(1, len(values)):
        if values[i] - values[i - 1] > tol:
            groups.append((start, i))
            start = i
    groups.append((start, len(values)))
    return groups, tol


def eigendecompose(L, max_sweeps=_kernels.DEFAULT_MAX_SWEEPS,
                   rel_tol=_kernels.DEFAULT_REL_TOL, laplacian_mode=None):
    """Jacobi eigendecomposition with Laplacian post-processing.

    laplacian_mode=None auto-detects (symmetric, zero row sums). In that mode
    the smallest eigenvalue is snapped to 0 and kept as its own cluster of
    multiplicity one, the kernel vector is replaced by the exact normalized
    all-ones vector, and every other eigenvector is re-orthogonalized against
    it. A second near-zero eigenvalue triggers NearDisconnectionWarning.
    """
    L = np.asarray(L, dtype=np.float64)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise DimensionMismatch(f"square matrix required, got shape {L.shape}")
    values, vectors = _kernels.jacobi_eigh(L, max_sweeps=max_sweeps, rel_tol=rel_tol)
    if laplacian_mode is None:
        laplacian_mode = _looks_like_laplacian(L)
    n = len(values)
    if laplacian_mode and abs(values[0]) <= ZERO_SNAP:
        values = values.copy()
        values[0] = 0.0
        if n > 1 and values[1] <= ZERO_SNAP:
            warnings.warn(
                "second eigenvalue is numerically zero; the graph is close to "
                "disconnected and results may be unreliable",
                NearDisconnectionWarning,
            )
        ones = np.ones(n) / np.sqrt(n)
        vectors = vectors.copy()
        vectors[:, 0] = ones
        rest = vectors[:, 1:]
        rest -= np.outer(ones, ones @ rest)
        # QR restores orthonormality lost to the projection
        q, r = np.linalg.qr(rest)
        q *= np.where(np.diag(r) < 0, -1.0, 1.0)[np.newaxis, :]
        for c in range(q.shape[1]):
            col = q[:, c]
            if col[int(np.argmax(np.abs(col)))] < 0:
                q[:, c] = -col
        vectors[:, 1:] = q
    groups, _ = _cluster(values)
    clusters = []
    for a, b in groups:
        if laplacian_mode and a == 0 and values[0] == 0.0 and b > 1:
            # zero stays a simple eigenvalue for connected graphs
            clusters.append(Cluster(value=0.0, indices=(0,)))
            clusters.append(Cluster(
                value=float(np.mean(values[1:b])), indices=tuple(range(1, b))))
            continue
        clusters.append(Cluster(
            value=float(np.mean(values[a:b])), indices=tuple(range(a, b))))
    return Spectrum(values=values, vectors=vectors, clusters=tuple(clusters),
                    laplacian_mode=bool(laplacian_mode))


def _as_laplacian(g, w):
    if isinstance(g, Graph):
        return laplacian(g, w)
    if w is not None:
        raise DimensionMismatch("weights only apply when a Graph is given")
    return np.asarray(g, dtype=np.float64)


def lambda2(g, w=None):
    """Second-smallest Laplacian eigenvalue (algebraic connectivity)."""
    spec = eigendecompose(_as_laplacian(g, w))
    if spec.n < 2:
        raise DimensionMismatch("need at least two vertices")
    return float(spec.values[1])


def lambdaN(g, w=None):
    """Largest Laplacian eigenvalue."""
    spec = eigendecompose(_as_laplacian(g, w))
    return float(spec.values[-1])


def eigenspace(spec, value, tol=None):
    """Orthonormal basis of the eigenspace nearest `value`.

    The requested value must land inside a cluster (within the clustering
    tolerance, or `tol` when given), else NoSuchEigenvalue is raised.
    """
    if tol is None:
        tol = CLUSTER_REL_TOL * max(1.0, abs(float(spec.values[-1])))
    best = None
    for cl in spec.clusters:
        d = abs(cl.value - value)
        if d <= tol and (best is None or d < abs(best.value - value)):
            best = cl
    if best is None:
        raise NoSuchEigenvalue(f"no eigenvalue within {tol:.2e} of {value}")
    return EigenspaceBasis(
        value=best.value,
        vectors=spec.vectors[:, list(best.indices)].copy(),
    )


@dataclass(frozen=True)
class EigenspaceBasis:
    """Orthonormal columns spanning one eigenspace."""

    value: float
    vectors: np.ndarray

    @property
    def multiplicity(self):
        return self.vectors.shape[1]


def rayleigh_witness_check(L, x, tol=1e-8):
    """Rayleigh quotient of x, validated as a numerical eigenvector.

    Returns x^T L x / x^T x after checking the relative residual
    ||Lx - rho x|| / ||x|| <= tol * max(1, |rho|); raises NotAnEigenvector
    otherwise.
    """
    L = np.asarray(L, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    nx = float(np.linalg.norm(x))
    if nx == 0.0:
        raise NotAnEigenvector("zero vector")
    rho = float(x @ L @ x) / (nx * nx)
    resid = float(np.linalg.norm(L @ x - rho * x)) / nx
    if resid > tol * max(1.0, abs(rho)):
        raise NotAnEigenvector(
            f"residual {resid:.3e} exceeds tolerance for quotient {rho:.6g}"
        )
    return rho
