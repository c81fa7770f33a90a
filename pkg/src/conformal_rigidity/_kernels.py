"""Hot numeric kernels, in matched numba and numpy variants.

Two pieces of the pipeline dominate runtime: dense symmetric eigensolves
(thousands of them inside the weight-optimization loops) and the loops
themselves. Both live here. The numba variants are compiled lazily on first
use; the numpy variants implement the same algorithms with vectorized row and
column operations. `backend.selected()` decides which variant runs.

The eigensolver is a cyclic Jacobi iteration: rotations sweep the strict upper
triangle until the off-diagonal Frobenius norm falls below rel_tol times the
Frobenius norm of the input, capped at max_sweeps full sweeps.
"""
import math

import numpy as np

from . import backend
from .errors import NoConvergence

DEFAULT_MAX_SWEEPS = 100
DEFAULT_REL_TOL = 1e-12


# ---------------------------------------------------------------- jacobi core


def _jacobi_core_impl(a, v, max_sweeps, tol):
    """Diagonalize symmetric a in place, accumulating rotations into v.

    Returns (sweeps_done, final_off). Convergence when final_off <= tol.
    Written in the numba-compatible subset of python/numpy.
    """
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        off = math.sqrt(2.0 * off)
        if off <= tol:
            return sweep, off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                app = a[p, p]
                aqq = a[q, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[p, k] = a[k, p]
                        a[k, q] = s * akp + c * akq
                        a[q, k] = a[k, q]
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    off = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            off += a[p, q] * a[p, q]
    off = math.sqrt(2.0 * off)
    return max_sweeps, off


def _jacobi_numpy(a, v, max_sweeps, tol):
    """Same iteration as _jacobi_core_impl with vectorized row/col updates."""
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off <= tol:
            return sweep, off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
    return max_sweeps, off


# ------------------------------------------------------- simplex projection


def _simplex_impl(v, total):
    """Euclidean projection onto {w >= 0, sum w = total}. Sort-based, O(m log m)."""
    n = v.shape[0]
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - total
    k = np.arange(1, n + 1).astype(np.float64)
    rho = -1
    for i in range(n):
        if u[i] * k[i] > css[i]:
            rho = i
    theta = css[rho] / (rho + 1.0)
    out = v - theta
    return np.maximum(out, 0.0)


project_simplex = _simplex_impl


# ------------------------------------------------------------- ascent loops

# Projected supergradient iteration on w -> lambda_index(L_w) over the scaled
# simplex. maximize=True ascends (lambda2 side), False descends (lambdaN side).
# Step total/(dmax*sqrt(t)). Returns the best iterate plus three candidates
# that tame subgradient tail oscillation: last iterate, full running average,
# and the average over the last half of the trajectory. The caller re-verifies
# every candidate with a fresh eigendecomposition.


def _ascent_impl(ei, ej, dmax, n, w0, total, iters, eig_index, maximize,
                 max_sweeps, jtol_rel):
    m = ei.shape[0]
    w = w0.copy()
    best_obj = -1e300
    best_w = w0.copy()
    runsum = np.zeros(m)
    tail = np.zeros(m)
    tail_count = 0
    for t in range(1, iters + 1):
        A = np.zeros((n, n))
        for k in range(m):
            i = ei[k]
            j = ej[k]
            wk = w[k]
            A[i, j] -= wk
            A[j, i] -= wk
            A[i, i] += wk
            A[j, j] += wk
        fro = 0.0
        for i in range(n):
            for j in range(n):
                fro += A[i, j] * A[i, j]
        V = np.eye(n)
        _jacobi_njit(A, V, max_sweeps, jtol_rel * math.sqrt(fro))
        evals = np.empty(n)
        for i in range(n):
            evals[i] = A[i, i]
        order = np.argsort(evals)
        idx = order[eig_index]
        val = evals[idx]
        obj = val if maximize else -val
        if obj > best_obj:
            best_obj = obj
            for k in range(m):
                best_w[k] = w[k]
        step = total / (dmax * math.sqrt(t))
        if not maximize:
            step = -step
        for k in range(m):
            d = V[ei[k], idx] - V[ej[k], idx]
            w[k] = w[k] + step * d * d
        w = _simplex_njit(w, total)
        for k in range(m):
            runsum[k] += w[k]
        if t > iters // 2:
            for k in range(m):
                tail[k] += w[k]
            tail_count += 1
    return best_w, w, runsum / iters, tail / max(tail_count, 1)


def _ascent_numpy(ei, ej, dmax, n, w0, total, iters, eig_index, maximize):
    """Numpy twin of the ascent loop; uses LAPACK eigh for the inner solves.

    The reported weights are always re-verified by the caller through the
    package eigensolver, so the inner solver only steers the search.
    """
    m = ei.shape[0]
    w = w0.copy()
    best_obj = -np.inf
    best_w = w0.copy()
    runsum = np.zeros(m)
    tail = np.zeros(m)
    tail_count = 0
    for t in range(1, iters + 1):
        A = np.zeros((n, n))
        np.add.at(A, (ei, ej), -w)
        np.add.at(A, (ej, ei), -w)
        np.add.at(A, (ei, ei), w)
        np.add.at(A, (ej, ej), w)
        evals, V = np.linalg.eigh(A)
        val = evals[eig_index]
        obj = val if maximize else -val
        if obj > best_obj:
            best_obj = obj
            best_w = w.copy()
        f = V[:, eig_index]
        g = (f[ei] - f[ej]) ** 2
        step = total / (dmax * math.sqrt(t))
        w = _simplex_impl(w + (step if maximize else -step) * g, total)
        runsum += w
        if t > iters // 2:
            tail += w
            tail_count += 1
    return best_w, w, runsum / iters, tail / max(tail_count, 1)


# ----------------------------------------------------------- numba plumbing

_jacobi_njit = None
_simplex_njit = None
_ascent_njit = None


def _ensure_numba():
    global _jacobi_njit, _simplex_njit, _ascent_njit
    if _ascent_njit is not None:
        return
    import numba

    _jacobi_njit = numba.njit(cache=True)(_jacobi_core_impl)
    _simplex_njit = numba.njit(cache=True)(_simplex_impl)
    # _ascent_impl calls the two dispatchers through module globals, so they
    # must exist before this compiles.
    _ascent_njit = numba.njit(cache=False)(_ascent_impl)


# ---------------------------------------------------------------- dispatch


def jacobi_eigh(A, max_sweeps=DEFAULT_MAX_SWEEPS, rel_tol=DEFAULT_REL_TOL,
                force_backend=None):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, eigenvector columns). Each eigenvector is
    sign-normalized so its largest-magnitude entry is positive. Raises
    NoConvergence if the off-diagonal norm is still above threshold after
    max_sweeps sweeps.
    """
    A = np.array(A, dtype=np.float64, copy=True, order="C")
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("square matrix required")
    if n == 1:
        return np.array([A[0, 0]]), np.ones((1, 1))
    tol = rel_tol * float(np.linalg.norm(A))
    V = np.eye(n)
    which = force_backend or backend.selected()
    if which == "numba":
        _ensure_numba()
        sweeps, off = _jacobi_njit(A, V, max_sweeps, tol)
    else:
        sweeps, off = _jacobi_numpy(A, V, max_sweeps, tol)
    if off > tol:
        raise NoConvergence(
            f"jacobi sweep limit hit: off-diagonal {off:.3e} > {tol:.3e} after {sweeps} sweeps"
        )
    evals = np.diag(A).copy()
    order = np.argsort(evals, kind="stable")
    evals = evals[order]
    V = V[:, order]
    for c in range(n):
        col = V[:, c]
        if col[int(np.argmax(np.abs(col)))] < 0:
            V[:, c] = -col
    return evals, V


def ascent(ei, ej, dmax, n, w0, total, iters, eig_index, maximize,
           force_backend=None):
    """Run the projected supergradient loop on the selected backend.

    Returns (best_iterate, last_iterate, running_average, tail_average).
    """
    ei = np.asarray(ei, dtype=np.int64)
    ej = np.asarray(ej, dtype=np.int64)
    w0 = np.asarray(w0, dtype=np.float64)
    which = force_backend or backend.selected()
    if which == "numba":
        _ensure_numba()
        return _ascent_njit(ei, ej, float(dmax), n, w0, float(total),
                            iters, eig_index, maximize,
                            DEFAULT_MAX_SWEEPS, DEFAULT_REL_TOL)
    return _ascent_numpy(ei, ej, float(dmax), n, w0, float(total),
                         iters, eig_index, maximize)
