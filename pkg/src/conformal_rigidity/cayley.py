"""The group-sum sufficient test for rigidity of Cayley graphs.

For a Cayley graph and an eigenvector phi of an extreme eigenvalue, constancy
of the generator sums sum_g phi(g) phi(g*s) over the connection set certifies
optimality on that side. The test is sufficient only: failing to find such an
eigenvector proves nothing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact as ex
from .errors import DimensionMismatch, NoSuchEigenvalue
from .graphs import cayley_graph, laplacian
from .spectral import eigendecompose, rayleigh_witness_check

SPREAD_TOL = 1e-8
THETA_GRID = 360
DEFAULT_BUDGET = 5000


@dataclass(frozen=True)
class CayleySumProfile:
    """Generator sums for one test vector, in connection-set order."""

    sums: tuple  # of (generator, value) pairs

    @property
    def values(self):
        return tuple(v for _, v in self.sums)

    @property
    def spread(self):
        vals = [float(v) for v in self.values]
        return max(vals) - min(vals)

    def as_dict(self):
        return dict(self.sums)


def _is_integral(phi):
    out = []
    for x in phi:
        if isinstance(x, (int, Fraction)):
            out.append(Fraction(x))
        elif isinstance(x, float) and float(x).is_integer():
            out.append(Fraction(int(x)))
        elif hasattr(x, "item") and float(x).is_integer():
            out.append(Fraction(int(float(x))))
        else:
            return None
    return out


def cayley_sums(pres, phi):
    """Profile of sum_g phi(g) phi(g*s) per connection element s.

    Exact when phi is integral (or Fraction-valued), float otherwise. phi is
    indexed by position in pres.elements.
    """
    elems = pres.elements
    if len(phi) != len(elems):
        raise DimensionMismatch(
            f"vector has {len(phi)} entries for a group of order {len(elems)}"
        )
    index = {x: i for i, x in enumerate(elems)}
    exact_phi = _is_integral(phi)
    sums = []
    for s in pres.connection:
        if exact_phi is not None:
            acc = Fraction(0)
            for i, x in enumerate(elems):
                acc += exact_phi[i] * exact_phi[index[pres.multiply(x, s)]]
        else:
            acc = 0.0
            for i, x in enumerate(elems):
                acc += float(phi[i]) * float(phi[index[pres.multiply(x, s)]])
        sums.append((s, acc))
    return CayleySumProfile(sums=tuple(sums))


def criterion_check(pres, phi2, phiN, tol=SPREAD_TOL):
    """True when both extreme eigenvectors have constant generator sums.

    phi2 and phiN must be eigenvectors of the smallest positive and the
    largest Laplacian eigenvalue respectively (residual at most 1e-8), else
    NoSuchEigenvalue is raised. Integral vectors are tested exactly.
    """
    g = cayley_graph(pres)
    L = laplacian(g)
    spectrum = eigendecompose(L)
    lam2 = float(spectrum.values[1])
    lamN = float(spectrum.values[-1])
    for phi, lam, name in ((phi2, lam2, "second-smallest"),
                           (phiN, lamN, "largest")):
        rho = rayleigh_witness_check(L, np.asarray(phi, dtype=np.float64))
        if abs(rho - lam) > 1e-6 * max(1.0, abs(lam)):
            raise NoSuchEigenvalue(
                f"vector belongs to eigenvalue {rho:.6g}, not the {name} {lam:.6g}"
            )
    p2 = cayley_sums(pres, phi2)
    pN = cayley_sums(pres, phiN)
    return p2.spread <= tol and pN.spread <= tol


def _looks_like_cyclic(pres):
    n = len(pres.elements)
    if pres.elements != tuple(range(n)):
        return False
    probes = [(1, 1), (n - 1, 1), (n - 1, n - 1), (2, 3 % n)]
    return all(pres.multiply(a, b) == (a + b) % n for a, b in probes)


def _spread_of(pres, phi):
    return cayley_sums(pres, phi).spread


def _norm2(phi):
    return float(np.dot(phi, phi))


def _integerize(vec, cap=60):
    """Scale a float vector to small integers when that is exact enough."""
    fracs = [ex.rationalize_float(x, cap) for x in vec]
    if any(abs(x - float(f)) > 1e-8 * max(1.0, float(np.abs(vec).max()))
           for x, f in zip(vec, fracs)):
        return None
    den = 1
    for f in fracs:
        den = den * f.denominator // math.gcd(den, f.denominator)
    ints = np.array([float(f * den) for f in fracs])
    if np.abs(ints).max() == 0:
        return None
    return ints


def search_eigenvector(pres, basis, budget=DEFAULT_BUDGET, seed=0,
                       tol=SPREAD_TOL):
    """Search one eigenspace for a vector with constant generator sums.

    Tries, in order: the basis columns themselves; small-integer rescalings
    of columns and of pairwise column combinations; for cyclic groups the
    sampled-cosine vectors over a 360-step phase grid; random unit
    combinations refined by local spread descent until the evaluation budget
    runs out. Returns the first vector whose spread is at most tol times its
    squared norm, or None.
    """
    U = basis.vectors if hasattr(basis, "vectors") else np.asarray(basis)
    n, k = U.shape
    rng = np.random.default_rng(seed)

    def good(phi):
        return _spread_of(pres, phi) <= tol * max(1.0, _norm2(phi))

    for c in range(k):
        phi = U[:, c]
        if good(phi):
            return phi
    candidates = []
    for c in range(k):
        iv = _integerize(U[:, c])
        if iv is not None:
            candidates.append(iv)
    for a in range(k):
        for b in range(a + 1, k):
            for sign in (1.0, -1.0):
                iv = _integerize((U[:, a] + sign * U[:, b]) / math.sqrt(2))
                if iv is not None:
                    candidates.append(iv)
    for phi in candidates:
        if good(phi):
            return phi
    if _looks_like_cyclic(pres):
        lam = None
        L = laplacian(cayley_graph(pres))
        try:
            lam = rayleigh_witness_check(L, U[:, 0])
        except Exception:
            lam = None
        if lam is not None:
            steps = [s for s in pres.connection if s <= n // 2]
            freqs = [
                j for j in range(1, n)
                if abs(circulant_eigenvalue(n, steps, j) - lam)
                <= 1e-8 * max(1.0, abs(lam))
            ]
            v = np.arange(n)
            for j in freqs:
                for step in range(THETA_GRID):
                    theta = 2 * math.pi * step / THETA_GRID
                    phi = np.cos(2 * math.pi * j * v / n + theta)
                    if _norm2(phi) < 1e-12:
                        continue
                    if good(phi):
                        return phi
    evals = 0
    while evals < budget:
        c = rng.normal(size=k)
        c /= np.linalg.norm(c)
        phi = U @ c
        best = _spread_of(pres, phi)
        evals += 1
        if best <= tol * max(1.0, _norm2(phi)):
            return phi
        step = 0.25
        while step > 1e-4 and evals < budget:
            improved = False
            for d in range(k):
                for sign in (1.0, -1.0):
                    c2 = c.copy()
                    c2[d] += sign * step
                    c2 /= np.linalg.norm(c2)
                    phi2 = U @ c2
                    s2 = _spread_of(pres, phi2)
                    evals += 1
                    if s2 < best:
                        best, c, improved = s2, c2, True
                        if best <= tol * max(1.0, _norm2(phi2)):
                            return U @ c
                    if evals >= budget:
                        break
                if evals >= budget:
                    break
            if not improved:
                step /= 2
    return None


def circulant_eigenvalue(n, steps, j):
    """Closed-form Laplacian eigenvalue of a circulant at frequency j.

    Steps are folded like the circulant constructor folds them; a diameter
    step n/2 contributes a single edge per vertex and therefore half the
    generic cosine term, which keeps the formula consistent with the
    numerical eigendecomposition.
    """
    if not 0 <= j < n:
        raise DimensionMismatch(f"frequency {j} out of range for n={n}")
    folded = sorted({min(int(s) % n, (n - int(s)) % n) for s in steps})
    lam = 0.0
    for s in folded:
        if s == 0:
            continue
        if 2 * s == n:
            lam += 1.0 - math.cos(math.pi * j)
        else:
            lam += 2.0 - 2.0 * math.cos(2.0 * math.pi * j * s / n)
    return lam
