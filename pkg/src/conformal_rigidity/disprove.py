"""Constructive refutation: weights that beat the constant weighting.

Non-rigidity is witnessed by normalized nonnegative weights that raise the
smallest positive Laplacian eigenvalue or lower the largest one. The search
is projected supergradient ascent over the weight simplex (the hot loop in
_kernels), with closed-form and orbit-reduced alternatives for structured
graphs.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NearDisconnectionWarning, OutOfRange, TooManyOrbits
from .graphs import WeightVector, laplacian, normalize_weights
from .spectral import eigendecompose
from .structure import edge_orbits

DEFAULT_ITERS = 3000
DEFAULT_RESTARTS = 5
IMPROVEMENT_REL = 1e-6
ORBIT_CAP = 4
GRID_RESOLUTION = 200
REFINE_TOL = 1e-9


@dataclass(frozen=True)
class Witness:
    """Normalized weights that strictly improve one extreme eigenvalue."""

    side: str  # "lambda2" or "lambdaN"
    weights: WeightVector
    achieved: float
    baseline: float

    @property
    def margin(self):
        if self.side == "lambda2":
            return self.achieved - self.baseline
        return self.baseline - self.achieved

    def to_json_dict(self):
        return {
            "side": self.side,
            "weights": list(self.weights.values),
            "achieved": self.achieved,
            "baseline": self.baseline,
            "margin": self.margin,
        }


@dataclass(frozen=True)
class NoImprovement:
    """The search did not beat the constant weighting (not a rigidity proof)."""

    side: str
    baseline: float
    best_seen: float


def _eig_at(g, w, index):
    spec = eigendecompose(laplacian(g, w))
    return float(spec.values[index])


def _ascend(g, index, maximize, iters, restarts, seed):
    """Run the kernel ascent loop and re-verify every candidate it returns."""
    ei = np.array([e[0] for e in g.edges], dtype=np.int64)
    ej = np.array([e[1] for e in g.edges], dtype=np.int64)
    dmax = float(max(g.degrees()))
    total = float(g.m)
    rng = np.random.default_rng(seed)
    best_w = None
    best_val = -math.inf if maximize else math.inf
    for restart in range(restarts):
        if restart == 0:
            w0 = np.ones(g.m)
        else:
            w0 = _kernels.project_simplex(rng.random(g.m) * total, total)
        out = _kernels.ascent(ei, ej, dmax, g.n, w0, total, iters, index,
                              maximize)
        for cand in out:
            w = np.maximum(np.asarray(cand, dtype=np.float64), 0.0)
            s = w.sum()
            if s <= 0:
                continue
            w = w * (total / s)
            val = _eig_at(g, w, index)
            if (maximize and val > best_val) or (not maximize and val < best_val):
                best_val = val
                best_w = w
    return best_w, best_val


def maximize_lambda2(g, iters=DEFAULT_ITERS, restarts=DEFAULT_RESTARTS, seed=0):
    """Witness with lambda2(w) above the constant-weight value, if found.

    The returned weights are exactly renormalized and the achieved value is
    re-verified by a fresh eigendecomposition.
    """
    baseline = _eig_at(g, None, 1)
    best_w, best_val = _ascend(g, 1, True, iters, restarts, seed)
    if best_w is None or best_val <= baseline + IMPROVEMENT_REL * baseline:
        return NoImprovement(side="lambda2", baseline=baseline,
                             best_seen=best_val)
    wv = normalize_weights(g, best_w)
    return Witness(side="lambda2", weights=wv,
                   achieved=_eig_at(g, wv, 1), baseline=baseline)


def minimize_lambdaN(g, iters=DEFAULT_ITERS, restarts=DEFAULT_RESTARTS, seed=0):
    """Witness with lambdaN(w) below the constant-weight value, if found."""
    baseline = _eig_at(g, None, g.n - 1)
    best_w, best_val = _ascend(g, g.n - 1, False, iters, restarts, seed)
    if best_w is None or best_val >= baseline - IMPROVEMENT_REL * baseline:
        return NoImprovement(side="lambdaN", baseline=baseline,
                             best_seen=best_val)
    wv = normalize_weights(g, best_w)
    return Witness(side="lambdaN", weights=wv,
                   achieved=_eig_at(g, wv, g.n - 1), baseline=baseline)


def circulant12_family(n, eps):
    """Closed-form spectrum of the step-{1,2} circulant under an eps tilt.

    The tilt puts weight 1 - eps/2 on step-1 edges and 1 + eps/2 on step-2
    edges, which keeps the total weight normalized exactly. Returns the n
    eigenvalues lambda_j = 4 - (2 - eps) cos(2 pi j / n) - (2 + eps) cos(4 pi j / n).
    """
    if n < 5:
        raise OutOfRange(f"family needs n >= 5, got {n}")
    if not abs(eps) < 1:
        raise ValueError("tilt must satisfy |eps| < 1")
    out = []
    for j in range(n):
        a = 2.0 * math.pi * j / n
        out.append(4.0 - (2.0 - eps) * math.cos(a) - (2.0 + eps) * math.cos(2 * a))
    return out


def circulant12_weights(g):
    """Map eps to the weight vector realizing circulant12_family on g.

    g must be the step-{1,2} circulant with canonical edge order; step-1
    edges get 1 - eps/2 and step-2 edges 1 + eps/2.
    """
    n = g.n

    def weights_for(eps):
        w = np.empty(g.m)
        for k, (i, j) in enumerate(g.edges):
            diff = min((j - i) % n, (i - j) % n)
            w[k] = 1.0 - eps / 2.0 if diff == 1 else 1.0 + eps / 2.0
        return WeightVector(values=tuple(w.tolist()))

    return weights_for


def _orbit_laplacians(g, orbits):
    parts = []
    for orbit in orbits.orbits:
        L = np.zeros((g.n, g.n))
        for k in orbit:
            i, j = g.edges[k]
            L[i, j] -= 1.0
            L[j, i] -= 1.0
            L[i, i] += 1.0
            L[j, j] += 1.0
        parts.append(L)
    return parts


def _simplex_grid(sizes, total, resolution):
    """Orbit-weight tuples (w_1..w_k) with sum sizes_i w_i = total on a grid."""
    k = len(sizes)
    if k == 1:
        yield (total / sizes[0],)
        return

    def rec(prefix, remaining, depth):
        if depth == k - 1:
            w = remaining / sizes[depth]
            yield prefix + (w,)
            return
        cap = remaining / sizes[depth]
        for step in range(resolution + 1):
            w = cap * step / resolution
            yield from rec(prefix + (w,), remaining - sizes[depth] * w,
                           depth + 1)

    yield from rec((), float(total), 0)


def vertex_values(g, orbits, orbit_weights, index):
    """Eigenvalue at the weights obtained by spreading orbit values to edges."""
    w = np.empty(g.m)
    for ow, orbit in zip(orbit_weights, orbits.orbits):
        for k in orbit:
            w[k] = ow
    with warnings.catch_warnings():
        # scans probe the boundary where an orbit weight hits zero
        warnings.simplefilter("ignore", NearDisconnectionWarning)
        return _eig_at(g, w, index)


def symmetry_reduced_scan(g, orbits=None, side="lambda2", resolution=GRID_RESOLUTION):
    """Optimize over orbit-constant weights by grid search plus refinement.

    Restriction to orbit-constant weights loses nothing for the rigidity
    question, because averaging any weighting over the automorphism group
    only improves both objectives. Returns (best orbit weights, best value,
    constant-weight value). Raises TooManyOrbits beyond 4 orbits.
    """
    if orbits is None:
        orbits = edge_orbits(g)
    k = orbits.count
    if k > ORBIT_CAP:
        raise TooManyOrbits(f"{k} orbits exceed the grid cap of {ORBIT_CAP}")
    index = 1 if side == "lambda2" else g.n - 1
    maximize = side == "lambda2"
    sizes = [float(len(o)) for o in orbits.orbits]
    total = float(g.m)
    baseline = vertex_values(g, orbits, (1.0,) * k, index)
    best_w = (1.0,) * k
    best_val = baseline
    for w in _simplex_grid(sizes, total, resolution):
        val = vertex_values(g, orbits, w, index)
        if (maximize and val > best_val) or (not maximize and val < best_val):
            best_val = val
            best_w = w
    if k >= 2:
        best_w, best_val = _coordinate_refine(
            g, orbits, sizes, total, list(best_w), best_val, index, maximize)
    return best_w, best_val, baseline


def _coordinate_refine(g, orbits, sizes, total, w, val, index, maximize):
    """Golden-section sweeps along single coordinates, rebalanced on the last."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    k = len(w)

    def rebalance(trial, moved):
        # absorb the change into the largest other coordinate
        other = max((d for d in range(k) if d != moved),
                    key=lambda d: sizes[d] * trial[d])
        slack = total - sum(s * x for s, x in zip(sizes, trial)) + sizes[other] * trial[other]
        if slack < 0:
            return None
        trial = list(trial)
        trial[other] = slack / sizes[other]
        return trial

    for _ in range(40):
        improved = False
        for d in range(k):
            lo, hi = 0.0, total / sizes[d]
            a, b = lo, hi
            c1 = b - invphi * (b - a)
            c2 = a + invphi * (b - a)

            def value_at(x):
                trial = list(w)
                trial[d] = x
                trial = rebalance(trial, d)
                if trial is None or min(trial) < 0:
                    return -math.inf if maximize else math.inf
                return vertex_values(g, orbits, tuple(trial), index)

            f1, f2 = value_at(c1), value_at(c2)
            while b - a > REFINE_TOL * max(1.0, hi):
                if (f1 > f2) == maximize:
                    b, c2, f2 = c2, c1, f1
                    c1 = b - invphi * (b - a)
                    f1 = value_at(c1)
                else:
                    a, c1, f1 = c1, c2, f2
                    c2 = a + invphi * (b - a)
                    f2 = value_at(c2)
            x = (a + b) / 2
            trial = rebalance([x if i == d else w[i] for i in range(k)], d)
            if trial is None:
                continue
            v = vertex_values(g, orbits, tuple(trial), index)
            if (maximize and v > val + 1e-12) or (not maximize and v < val - 1e-12):
                w, val, improved = trial, v, True
        if not improved:
            break
    return tuple(w), val
