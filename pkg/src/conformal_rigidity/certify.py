"""Dual certificates of spectral optimality, their search, and verification.

A graph is conformally rigid exactly when constant weights are optimal for
both extreme-eigenvalue problems, and optimality on each side is witnessed by
a symmetric PSD matrix living in the corresponding eigenspace whose entries
satisfy one linear equation per edge. This module constructs such witnesses
(rank-one, projector-rescaling, and affine search in the eigenspace
parametrization), verifies them numerically or in exact rational arithmetic,
and converts them to vertex embeddings with equal edge lengths.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact as ex
from .errors import (
    DimensionMismatch,
    MultiplicityNotOne,
    NotPSD,
    NotRegular,
)
from .graphs import Graph, complement, laplacian
from .spectral import eigendecompose, eigenspace
from .structure import distance_regular_check, edge_orbits

TARGET_LAMBDA2 = "lambda2"
TARGET_LAMBDAN = "lambdaN"

EDGE_EQ_TOL = 1e-8
EIG_RESID_TOL = 1e-8
PSD_MIN_EIG = -1e-9
TRACE_REL_TOL = 1e-9
INFEASIBLE_RESIDUAL = 1e-6
RANK_TOL = 1e-10
ASCENT_ITERS = 2000
ASCENT_RESTARTS = 5

# denominator caps tried, in order, when upgrading a float solution to exact
_DENOMINATOR_LADDER = (1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 16, 20, 24, 27, 32,
                       48, 64, 100, 200, 384, 768, 1000, 10 ** 4)


@dataclass(frozen=True)
class Certificate:
    """A dual optimality witness for one side of the weight problem.

    matrix is the float view; exact_entries/exact_value, when present, carry
    the same certificate in rational arithmetic and make exact verification
    possible.
    """

    target: str  # TARGET_LAMBDA2 or TARGET_LAMBDAN
    value: float
    matrix: np.ndarray
    method: str  # RankOne | UUT | CSSearch | Rationalized | Projected | External
    claimed_trace: float
    exact_value: Fraction = None
    exact_entries: ex.RationalMatrix = None

    @property
    def is_exact(self):
        return self.exact_value is not None and self.exact_entries is not None

    def to_json(self):
        if self.is_exact:
            lam = str(self.exact_value)
            entries = [[str(v) for v in row] for row in self.exact_entries.entries]
        else:
            lam = repr(float(self.value))
            entries = [[repr(float(v)) for v in row] for row in self.matrix]
        return json.dumps(
            {"target": self.target, "lambda": lam, "entries": entries,
             "method": self.method},
            indent=1,
        )


def _parse_number(s):
    """A "p/q" or integer string parses exactly; decimals fall back to float."""
    s = str(s).strip()
    if any(ch in s for ch in ".eE") and "/" not in s:
        return float(s)
    return Fraction(s)


def certificate_from_json(text, method_default="External"):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DimensionMismatch(f"unreadable certificate: {e}") from e
    target = obj.get("target")
    if target not in (TARGET_LAMBDA2, TARGET_LAMBDAN):
        raise DimensionMismatch(f"unknown target {target!r}")
    lam = _parse_number(obj["lambda"])
    entries = [[_parse_number(v) for v in row] for row in obj["entries"]]
    n = len(entries)
    if any(len(row) != n for row in entries):
        raise DimensionMismatch("certificate entries are not square")
    all_exact = isinstance(lam, Fraction) and all(
        isinstance(v, Fraction) for row in entries for v in row
    )
    matrix = np.array([[float(v) for v in row] for row in entries])
    lam_f = float(lam)
    method = obj.get("method", method_default)
    if all_exact:
        exact = ex.RationalMatrix(entries=tuple(tuple(row) for row in entries))
        return Certificate(target=target, value=lam_f, matrix=matrix,
                           method=method, claimed_trace=float(np.trace(matrix)),
                           exact_value=lam, exact_entries=exact)
    return Certificate(target=target, value=lam_f, matrix=matrix, method=method,
                       claimed_trace=float(np.trace(matrix)))


@dataclass(frozen=True)
class VerificationReport:
    """Per-condition outcome of certificate verification."""

    ok: bool
    exact: bool
    checks: tuple  # of (name, passed, residual)

    def failed(self):
        return tuple(name for name, passed, _ in self.checks if not passed)

    def to_json(self):
        return json.dumps({
            "ok": self.ok,
            "exact": self.exact,
            "checks": [
                {"condition": name, "pass": passed, "residual": resid}
                for name, passed, resid in self.checks
            ],
        }, indent=1)


def _laplacian_fractions(g):
    L = [[Fraction(0)] * g.n for _ in range(g.n)]
    for i, j in g.edges:
        L[i][j] -= 1
        L[j][i] -= 1
        L[i][i] += 1
        L[j][j] += 1
    return L


def _verify_exact(g, cert):
    X = [list(row) for row in cert.exact_entries.entries]
    lam = cert.exact_value
    n = g.n
    checks = []
    sym = all(X[i][j] == X[j][i] for i in range(n) for j in range(i + 1, n))
    checks.append(("symmetry", sym, 0.0))
    total = sum(sum(row, Fraction(0)) for row in X)
    checks.append(("ones_balance", total == 0, float(abs(total))))
    worst = Fraction(0)
    for i, j in g.edges:
        gap = X[i][i] + X[j][j] - 2 * X[i][j] - 1
        if abs(gap) > worst:
            worst = abs(gap)
    checks.append(("edge_equalities", worst == 0, float(worst)))
    L = _laplacian_fractions(g)
    LX = ex.mat_mul(L, X)
    resid = Fraction(0)
    for i in range(n):
        for j in range(n):
            gap = abs(LX[i][j] - lam * X[i][j])
            if gap > resid:
                resid = gap
    checks.append(("eigen_relation", resid == 0, float(resid)))
    checks.append(("psd", ex.ldlt_psd(X), 0.0))
    tr = sum(X[i][i] for i in range(n))
    target_tr = Fraction(g.m) / lam
    checks.append(("trace", tr == target_tr, float(abs(tr - target_tr))))
    ok = all(passed for _, passed, _ in checks)
    return VerificationReport(ok=ok, exact=True, checks=tuple(checks))


def verify_certificate(g, cert):
    """Check every optimality condition; exact when the certificate is exact.

    Conditions: symmetry, balance against the all-ones vector, unit edge
    equalities, membership in the target eigenspace, positive
    semidefiniteness, and the trace identity trace = m / lambda.
    """
    X = np.asarray(cert.matrix, dtype=np.float64)
    if X.shape != (g.n, g.n):
        raise DimensionMismatch(
            f"certificate is {X.shape}, graph needs ({g.n}, {g.n})"
        )
    if cert.is_exact:
        return _verify_exact(g, cert)
    lam = float(cert.value)
    L = laplacian(g)
    checks = []
    xscale = max(1.0, float(np.abs(X).max()))
    r = float(np.abs(X - X.T).max())
    checks.append(("symmetry", r <= 1e-8 * xscale, r))
    r = abs(float(X.sum()))
    checks.append(("ones_balance", r <= 1e-8 * xscale * g.n, r))
    r = max(
        abs(X[i, i] + X[j, j] - 2 * X[i, j] - 1.0) for i, j in g.edges
    )
    checks.append(("edge_equalities", r <= EDGE_EQ_TOL, r))
    r = float(np.abs(L @ X - lam * X).max())
    checks.append(("eigen_relation", r <= EIG_RESID_TOL * max(1.0, float(np.abs(L).max())), r))
    evals = eigendecompose((X + X.T) / 2, laplacian_mode=False).values
    min_eig = float(evals[0])
    checks.append(("psd", min_eig >= PSD_MIN_EIG, min_eig))
    target_tr = g.m / lam
    r = abs(float(np.trace(X)) - target_tr)
    checks.append(("trace", r <= TRACE_REL_TOL * max(1.0, abs(target_tr)), r))
    ok = all(passed for _, passed, _ in checks)
    return VerificationReport(ok=ok, exact=False, checks=tuple(checks))


# ------------------------------------------------------------- constructors


def _target_value(spectrum, target):
    if target == TARGET_LAMBDA2:
        return float(spectrum.values[1])
    if target == TARGET_LAMBDAN:
        return float(spectrum.values[-1])
    raise DimensionMismatch(f"unknown target {target!r}")


def rank_one_certificate(g, target, u, spectrum=None):
    """Certificate (m/lambda) * uu^T for a simple target eigenvalue.

    u may be given unnormalized; it is normalized internally. Raises
    MultiplicityNotOne when the target eigenvalue has a larger eigenspace.
    """
    if spectrum is None:
        spectrum = eigendecompose(laplacian(g))
    lam = _target_value(spectrum, target)
    basis = eigenspace(spectrum, lam)
    if basis.multiplicity != 1:
        raise MultiplicityNotOne(
            f"eigenvalue {lam:.6g} has multiplicity {basis.multiplicity}"
        )
    u = np.asarray(u, dtype=np.float64)
    u = u / np.linalg.norm(u)
    X = (g.m / lam) * np.outer(u, u)
    cert = Certificate(target=target, value=lam, matrix=X, method="RankOne",
                       claimed_trace=g.m / lam)
    return _try_exact_upgrade_rank_one(g, cert, u)


def _try_exact_upgrade_rank_one(g, cert, u):
    """Attach exact entries when u and lambda rationalize and verify exactly."""
    lam_frac = ex.rationalize_float(cert.value)
    if abs(cert.value - float(lam_frac)) > 1e-9 * max(1.0, abs(cert.value)):
        return cert
    fracs = [ex.rationalize_float(x) for x in u]
    if any(abs(x - float(f)) > 1e-9 for x, f in zip(u, fracs)):
        return cert
    L = _laplacian_fractions(g)
    Lv = [ex.frac_dot(row, fracs) for row in L]
    if any(a != lam_frac * b for a, b in zip(Lv, fracs)):
        return cert
    norm2 = ex.frac_dot(fracs, fracs)
    if norm2 == 0:
        return cert
    c = Fraction(g.m) / (lam_frac * norm2)
    entries = tuple(
        tuple(c * fi * fj for fj in fracs) for fi in fracs
    )
    return Certificate(target=cert.target, value=cert.value, matrix=cert.matrix,
                       method=cert.method, claimed_trace=cert.claimed_trace,
                       exact_value=lam_frac,
                       exact_entries=ex.RationalMatrix(entries=entries))


def uut_certificate(g, target, spectrum=None):
    """Rescaled eigenspace projector c * UU^T with c = m / (lambda * mult).

    The trace identity holds by construction; the edge equalities are NOT
    guaranteed, so the result must be fed to verify_certificate.
    """
    if spectrum is None:
        spectrum = eigendecompose(laplacian(g))
    lam = _target_value(spectrum, target)
    basis = eigenspace(spectrum, lam)
    U = basis.vectors
    c = g.m / (lam * basis.multiplicity)
    X = c * (U @ U.T)
    return Certificate(target=target, value=lam, matrix=X, method="UUT",
                       claimed_trace=g.m / lam)


# --------------------------------------------------- eigenspace affine search


@dataclass(frozen=True)
class Infeasible:
    """The edge-equality system has no solution in the target eigenspace.

    By the completeness of the eigenspace parametrization this refutes
    rigidity on that side. exact=True means the contradiction was derived in
    rational arithmetic; otherwise residual carries the least-squares gap.
    """

    target: str
    value: float
    exact: bool
    residual: float
    detail: str


@dataclass(frozen=True)
class Inconclusive:
    """The search ended without a certificate and without a refutation."""

    target: str
    value: float
    reason: str


def _packed_pairs(k):
    return [(a, b) for a in range(k) for b in range(a, k)]


def _unpack_float(x, k, pairs):
    S = np.zeros((k, k))
    for val, (a, b) in zip(x, pairs):
        S[a, b] = val
        S[b, a] = val
    return S


def _unpack_fraction(x, k, pairs):
    S = [[Fraction(0)] * k for _ in range(k)]
    for val, (a, b) in zip(x, pairs):
        S[a][b] = val
        S[b][a] = val
    return S


def _rational_kernel(g, lam):
    """Exact basis of the lambda-eigenspace over the rationals, or None.

    Columns are scaled to integer vectors. Returns None when lam is not an
    eigenvalue in exact arithmetic (so the caller falls back to floats).
    """
    n = g.n
    rows = _laplacian_fractions(g)
    for i in range(n):
        rows[i][i] -= lam
    R, piv = ex.rref(rows, n)
    free = [c for c in range(n) if c not in piv]
    if not free:
        return None
    cols = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -R[r][f]
        den = 1
        for x in v:
            den = den * x.denominator // math.gcd(den, x.denominator)
        cols.append([x * den for x in v])
    return cols


def _edge_rows_from_columns(g, cols):
    """One linear equation per edge in the packed symmetric unknowns."""
    k = len(cols)
    pairs = _packed_pairs(k)
    A = []
    for i, j in g.edges:
        d = [col[i] - col[j] for col in cols]
        A.append([d[a] * d[b] * (1 if a == b else 2) for a, b in pairs])
    return A, pairs


def _min_eig(S):
    return float(np.linalg.eigvalsh(S)[0])


def _psd_point_search(S0, directions, iters, restarts, rng):
    """Supergradient ascent on the concave map t -> min-eig(S0 + sum t_i D_i)."""
    r = len(directions)
    if r == 0:
        return np.zeros(0), _min_eig(S0)
    best_t = np.zeros(r)
    best_val = _min_eig(S0)
    for restart in range(restarts):
        t = np.zeros(r) if restart == 0 else rng.uniform(-1.0, 1.0, r)
        for it in range(1, iters + 1):
            S = S0.copy()
            for ti, D in zip(t, directions):
                S += ti * D
            evals, vecs = np.linalg.eigh(S)
            if evals[0] > best_val:
                best_val = float(evals[0])
                best_t = t.copy()
            if best_val > 1e-6:
                return best_t, best_val
            v = vecs[:, 0]
            grad = np.array([v @ (D @ v) for D in directions])
            t = t + grad / math.sqrt(it)
    return best_t, best_val


def _certificate_from_exact(g, target, lam_frac, lam, cols, S_frac):
    n = g.n
    k = len(cols)
    X = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            acc = Fraction(0)
            for a in range(k):
                for b in range(k):
                    if S_frac[a][b]:
                        acc += cols[a][i] * S_frac[a][b] * cols[b][j]
            X[i][j] = acc
            X[j][i] = acc
    exact = ex.RationalMatrix(entries=tuple(tuple(row) for row in X))
    return Certificate(target=target, value=lam, matrix=exact.as_float(),
                       method="CSSearch", claimed_trace=g.m / lam,
                       exact_value=lam_frac, exact_entries=exact)


def _cs_search_exact(g, target, lam, lam_frac, iters, restarts, rng,
                     max_denominator):
    cols = _rational_kernel(g, lam_frac)
    if cols is None:
        return None
    A, pairs = _edge_rows_from_columns(g, cols)
    k = len(cols)
    ones = [Fraction(1)] * g.m
    sol = ex.solve_affine(A, ones)
    if sol is None:
        _, piv_plain = ex.rref(A, len(pairs))
        aug = [row + [Fraction(1)] for row in A]
        _, piv_aug = ex.rref(aug, len(pairs) + 1)
        return Infeasible(
            target=target, value=lam, exact=True, residual=float("inf"),
            detail=(
                f"edge-equality system inconsistent over the rationals: "
                f"rank {len(piv_plain)} vs augmented rank {len(piv_aug)}"
            ),
        )
    x0, null = sol
    S0_frac = _unpack_fraction(x0, k, pairs)
    if not null:
        if ex.ldlt_psd(S0_frac):
            return _certificate_from_exact(g, target, lam_frac, lam, cols, S0_frac)
        return Infeasible(
            target=target, value=lam, exact=True, residual=float("inf"),
            detail="unique eigenspace solution is not positive semidefinite",
        )
    S0 = np.array([[float(v) for v in row] for row in S0_frac])
    dirs_frac = [_unpack_fraction(v, k, pairs) for v in null]
    dirs = [np.array([[float(x) for x in row] for row in D]) for D in dirs_frac]
    # the least-norm particular solution may already work
    if ex.ldlt_psd(S0_frac):
        return _certificate_from_exact(g, target, lam_frac, lam, cols, S0_frac)
    t_best, val_best = _psd_point_search(S0, dirs, iters, restarts, rng)
    if val_best < -1e-5:
        return Inconclusive(
            target=target, value=lam,
            reason=f"no PSD point found (best min-eig {val_best:.3e})",
        )
    for cap in _DENOMINATOR_LADDER:
        if cap > max_denominator:
            break
        t_frac = [ex.rationalize_float(ti, cap) for ti in t_best]
        S_frac = [row[:] for row in S0_frac]
        for tf, D in zip(t_frac, dirs_frac):
            if tf == 0:
                continue
            for a in range(k):
                for b in range(k):
                    S_frac[a][b] += tf * D[a][b]
        if ex.ldlt_psd(S_frac):
            return _certificate_from_exact(g, target, lam_frac, lam, cols, S_frac)
    # exact upgrade failed; keep the float certificate if it is clean enough
    S = S0.copy()
    for ti, D in zip(t_best, dirs):
        S += ti * D
    cert = _float_certificate_from_basis(
        g, target, lam, np.array([[float(v) for v in col] for col in cols]).T, S)
    if cert is not None:
        return cert
    return Inconclusive(target=target, value=lam,
                        reason="PSD point found numerically but not verifiable")


def _float_certificate_from_basis(g, target, lam, U, S):
    X = U @ S @ U.T
    cert = Certificate(target=target, value=lam, matrix=X, method="CSSearch",
                       claimed_trace=g.m / lam)
    if verify_certificate(g, cert).ok:
        return cert
    return None


def _cs_search_float(g, target, lam, spectrum, iters, restarts, rng):
    basis = eigenspace(spectrum, lam)
    U = basis.vectors
    k = basis.multiplicity
    A, pairs = _edge_rows_from_columns(g, [U[:, a] for a in range(k)])
    A = np.array(A, dtype=np.float64)
    ones = np.ones(g.m)
    x0, _, rank, sv = np.linalg.lstsq(A, ones, rcond=RANK_TOL)
    residual = float(np.linalg.norm(A @ x0 - ones))
    if residual > INFEASIBLE_RESIDUAL * math.sqrt(g.m):
        return Infeasible(
            target=target, value=lam, exact=False, residual=residual,
            detail=(
                f"least-squares residual {residual:.3e} over "
                f"{g.m} edge equations (rank {rank})"
            ),
        )
    # nullspace of A from the SVD
    _, svals, Vt = np.linalg.svd(A, full_matrices=True)
    cutoff = RANK_TOL * (svals[0] if len(svals) else 1.0)
    null = [Vt[r] for r in range(len(pairs))
            if r >= len(svals) or svals[r] <= cutoff]
    S0 = _unpack_float(x0, k, pairs)
    dirs = [_unpack_float(v, k, pairs) for v in null]
    t_best, val_best = _psd_point_search(S0, dirs, iters, restarts, rng)
    S = S0.copy()
    for ti, D in zip(t_best, dirs):
        S += ti * D
    if val_best >= PSD_MIN_EIG:
        cert = _float_certificate_from_basis(g, target, lam, U, S)
        if cert is not None:
            return cert
    return Inconclusive(
        target=target, value=lam,
        reason=f"no PSD point found (best min-eig {val_best:.3e})",
    )


def cs_search(g, target, spectrum=None, seed=0, iters=ASCENT_ITERS,
              restarts=ASCENT_RESTARTS, max_denominator=ex.DEFAULT_MAX_DENOMINATOR):
    """Search the target eigenspace for a dual certificate.

    Writes the unknown certificate as U S U^T over an eigenspace basis U and
    solves the edge equalities for the packed entries of S. An inconsistent
    system refutes rigidity on this side (Infeasible); otherwise the affine
    solution set is searched for a PSD point by supergradient ascent on the
    minimum eigenvalue. Rational eigenvalues go through exact arithmetic:
    exact basis, exact solve, and an exact PSD upgrade of the float optimum.
    """
    if spectrum is None:
        spectrum = eigendecompose(laplacian(g))
    lam = _target_value(spectrum, target)
    rng = np.random.default_rng(seed)
    lam_frac = ex.rationalize_float(lam)
    if abs(lam - float(lam_frac)) <= 1e-9 * max(1.0, abs(lam)):
        out = _cs_search_exact(g, target, lam, lam_frac, iters, restarts, rng,
                               max_denominator)
        if out is not None:
            return out
    return _cs_search_float(g, target, lam, spectrum, iters, restarts, rng)


# ----------------------------------------------------------- rationalization


def rationalize(matrix, denom_cap=ex.DEFAULT_MAX_DENOMINATOR):
    """Entrywise rational cleanup of a float matrix (shared-value clustering)."""
    return ex.rationalize_matrix(matrix, max_denominator=denom_cap)


def _snap_coefficient(x, tol):
    i = round(x)
    if abs(x - i) <= tol * max(1.0, abs(x)):
        return float(i)
    f = ex.rationalize_float(x, 100)
    if abs(x - float(f)) <= tol * max(1.0, abs(x)):
        return float(f)
    return x


def project_rows(matrix, basis, coeff_cleanup=1e-3):
    """Center a matrix, then rebuild each row from the given eigenbasis.

    The matrix is first conjugated by the centering projector (I - J/n); each
    centered row is expanded in the basis columns, the expansion coefficients
    are snapped to nearby integers or small rationals within coeff_cleanup,
    and the row is reconstructed. Cleans one-off numerical certificates into
    matrices whose entries are recognizably rational.
    """
    M = np.asarray(matrix, dtype=np.float64)
    n = M.shape[0]
    U = basis.vectors if hasattr(basis, "vectors") else np.asarray(basis, dtype=np.float64)
    C = np.eye(n) - np.full((n, n), 1.0 / n)
    M = C @ M @ C
    G = U.T @ U
    out = np.empty_like(M)
    for r in range(n):
        raw = U.T @ M[r]
        snapped = np.array([_snap_coefficient(c, coeff_cleanup) for c in raw])
        out[r] = U @ np.linalg.solve(G, snapped)
    return out


# -------------------------------------------------------------- embeddings


@dataclass(frozen=True)
class Embedding:
    """Vertex points from a certificate factorization; centered by design."""

    points: np.ndarray  # n x k, one row per vertex
    source_value: float

    @property
    def dimension(self):
        return self.points.shape[1]

    def radii(self):
        return np.linalg.norm(self.points, axis=1)


def embedding_from_certificate(cert):
    """Rank-revealing Gram factorization of a PSD certificate matrix.

    Returns points whose Gram matrix reproduces the certificate. Raises
    NotPSD when the matrix has a clearly negative eigenvalue.
    """
    X = np.asarray(cert.matrix, dtype=np.float64)
    X = (X + X.T) / 2
    spec = eigendecompose(X, laplacian_mode=False)
    evals, vecs = spec.values, spec.vectors
    scale = max(1.0, float(abs(evals[-1])))
    if evals[0] < -1e-9 * scale:
        raise NotPSD(f"minimum eigenvalue {evals[0]:.3e}")
    keep = [i for i in range(len(evals)) if evals[i] > 1e-8 * scale]
    P = vecs[:, keep] * np.sqrt(np.maximum(evals[keep], 0.0))
    return Embedding(points=P, source_value=float(cert.value))


def _pair_distances(points, pairs):
    return [float(np.linalg.norm(points[i] - points[j])) for i, j in pairs]


def edge_isometry_check(emb, g, validate_scaling=False):
    """Common edge length when all edges agree to relative 1e-8, else None.

    Degenerate all-points-equal embeddings (length below 1e-10) are rejected.
    validate_scaling additionally requires c^2 = lambda * sum ||p_i||^2 / m.
    """
    d = _pair_distances(emb.points, g.edges)
    c = sum(d) / len(d)
    if c <= 1e-10:
        return None
    if max(abs(x - c) for x in d) > 1e-8 * c:
        return None
    if validate_scaling:
        expect = emb.source_value * float(np.sum(emb.points ** 2)) / g.m
        if abs(c * c - expect) > 1e-8 * max(1.0, expect):
            return None
    return c


def edge_nonedge_isometry_check(emb, g):
    """(edge length, non-edge length) when both classes are constant.

    Returns None when either class fails to agree; the non-edge length is
    None for complete graphs (vacuous).
    """
    alpha = edge_isometry_check(emb, g)
    if alpha is None:
        return None
    present = set(g.edges)
    nonedges = [
        (i, j)
        for i in range(g.n)
        for j in range(i + 1, g.n)
        if (i, j) not in present
    ]
    if not nonedges:
        return (alpha, None)
    d = _pair_distances(emb.points, nonedges)
    beta = sum(d) / len(d)
    if beta <= 1e-10:
        return None
    if max(abs(x - beta) for x in d) > 1e-8 * beta:
        return None
    return (alpha, beta)


@dataclass(frozen=True)
class ComplementPairReport:
    """Outcome of the two-distance embedding test for a graph and complement."""

    ok: bool
    edge_length_low: float
    nonedge_length_low: float
    edge_length_high: float
    nonedge_length_high: float
    graph_certificates: tuple  # (X for lambda2, Y for lambdaN) or ()
    complement_certificates: tuple
    complement: Graph


def complement_pair_check(g):
    """Certify g and its complement together via two-distance embeddings.

    Requires g regular with a connected complement. When the bottom and top
    eigenspaces both embed the vertices with constant edge and non-edge
    distances, the four projector certificates (two per graph) follow and are
    verified; otherwise the test is inconclusive for the pair.
    """
    degs = g.degrees()
    if len(set(degs)) != 1:
        raise NotRegular("graph is not regular")
    gc = complement(g)
    spectrum = eigendecompose(laplacian(g))
    lam2 = _target_value(spectrum, TARGET_LAMBDA2)
    lamN = _target_value(spectrum, TARGET_LAMBDAN)
    low = eigenspace(spectrum, lam2)
    high = eigenspace(spectrum, lamN)
    emb_low = Embedding(points=low.vectors.copy(), source_value=lam2)
    emb_high = Embedding(points=high.vectors.copy(), source_value=lamN)
    r_low = edge_nonedge_isometry_check(emb_low, g)
    r_high = edge_nonedge_isometry_check(emb_high, g)
    if r_low is None or r_high is None or r_low[1] is None or r_high[1] is None:
        return ComplementPairReport(
            ok=False,
            edge_length_low=r_low[0] if r_low else float("nan"),
            nonedge_length_low=float("nan"),
            edge_length_high=r_high[0] if r_high else float("nan"),
            nonedge_length_high=float("nan"),
            graph_certificates=(), complement_certificates=(), complement=gc,
        )
    n = g.n
    k2 = low.multiplicity
    kN = high.multiplicity
    U = low.vectors
    V = high.vectors
    X = (g.m / (lam2 * k2)) * (U @ U.T)
    Y = (g.m / (lamN * kN)) * (V @ V.T)
    # complement spectrum: lambda2(gc) = n - lamN, lambdaN(gc) = n - lam2,
    # with the same eigenspaces swapped
    Xc = (gc.m / ((n - lamN) * kN)) * (V @ V.T)
    Yc = (gc.m / ((n - lam2) * k2)) * (U @ U.T)
    certs_g = (
        Certificate(target=TARGET_LAMBDA2, value=lam2, matrix=X, method="UUT",
                    claimed_trace=g.m / lam2),
        Certificate(target=TARGET_LAMBDAN, value=lamN, matrix=Y, method="UUT",
                    claimed_trace=g.m / lamN),
    )
    certs_gc = (
        Certificate(target=TARGET_LAMBDA2, value=n - lamN, matrix=Xc,
                    method="UUT", claimed_trace=gc.m / (n - lamN)),
        Certificate(target=TARGET_LAMBDAN, value=n - lam2, matrix=Yc,
                    method="UUT", claimed_trace=gc.m / (n - lam2)),
    )
    ok = all(verify_certificate(g, c).ok for c in certs_g) and all(
        verify_certificate(gc, c).ok for c in certs_gc
    )
    return ComplementPairReport(
        ok=ok,
        edge_length_low=r_low[0], nonedge_length_low=r_low[1],
        edge_length_high=r_high[0], nonedge_length_high=r_high[1],
        graph_certificates=certs_g, complement_certificates=certs_gc,
        complement=gc,
    )


# ----------------------------------------------------------------- pipeline


@dataclass(frozen=True)
class Verdict:
    """Final classification of one graph, with its supporting evidence."""

    status: str  # Rigid | NumericallyRigid | NotRigid | Inconclusive
    reason: str  # EdgeTransitive | DistanceRegular | CSSearch | Theorem23 |
    #              DisproverWitness | DualInfeasible | None
    certificate_lambda2: Certificate = None
    certificate_lambdaN: Certificate = None
    witness: object = None
    infeasible: Infeasible = None
    log: tuple = ()

    @property
    def exit_code(self):
        if self.status in ("Rigid", "NumericallyRigid"):
            return 0
        if self.status == "NotRigid":
            return 1
        return 2

    def to_json_dict(self):
        out = {
            "status": self.status,
            "reason": self.reason,
            "log": list(self.log),
        }
        for name, cert in (("certificate_lambda2", self.certificate_lambda2),
                           ("certificate_lambdaN", self.certificate_lambdaN)):
            out[name] = json.loads(cert.to_json()) if cert is not None else None
        if self.witness is not None:
            out["witness"] = self.witness.to_json_dict()
        if self.infeasible is not None:
            out["infeasible"] = {
                "target": self.infeasible.target,
                "value": self.infeasible.value,
                "exact": self.infeasible.exact,
                "residual": self.infeasible.residual,
                "detail": self.infeasible.detail,
            }
        return out


def certify_rigidity(g, seed=0, witness_search=True, ascent_iters=3000,
                     ascent_restarts=5):
    """Decide rigidity: structure shortcuts, certificate search, disprover.

    Order: edge-transitivity (rigid by symmetry; certificates attached for
    audit), distance-regularity (projector certificates verified on both
    sides), eigenspace certificate search on both sides, and finally, when
    witness_search is set, the weight-perturbation disprover. Rigid requires
    a combinatorial proof or exact certificates; float-only certificates give
    NumericallyRigid.
    """
    log = []
    spectrum = eigendecompose(laplacian(g))
    orbits = edge_orbits(g)
    log.append(f"edge orbits: {list(orbits.sizes)}")
    if orbits.count == 1:
        certs = {}
        for target in (TARGET_LAMBDA2, TARGET_LAMBDAN):
            got = cs_search(g, target, spectrum=spectrum, seed=seed)
            if isinstance(got, Certificate):
                certs[target] = got
                log.append(f"{target}: certificate attached ({got.method})")
            else:
                certs[target] = None
                log.append(f"{target}: no certificate attached ({type(got).__name__})")
        return Verdict(status="Rigid", reason="EdgeTransitive",
                       certificate_lambda2=certs[TARGET_LAMBDA2],
                       certificate_lambdaN=certs[TARGET_LAMBDAN],
                       log=tuple(log))
    ia = distance_regular_check(g)
    if ia is not None:
        log.append(f"distance-regular, intersection numbers b={ia.b} c={ia.c}")
        X = uut_certificate(g, TARGET_LAMBDA2, spectrum=spectrum)
        Y = uut_certificate(g, TARGET_LAMBDAN, spectrum=spectrum)
        if verify_certificate(g, X).ok and verify_certificate(g, Y).ok:
            return Verdict(status="Rigid", reason="DistanceRegular",
                           certificate_lambda2=X, certificate_lambdaN=Y,
                           log=tuple(log))
        log.append("projector certificates failed verification; continuing")
    results = {}
    infeasible = None
    for target in (TARGET_LAMBDA2, TARGET_LAMBDAN):
        got = cs_search(g, target, spectrum=spectrum, seed=seed)
        results[target] = got
        if isinstance(got, Certificate):
            tag = "exact" if got.is_exact else "float"
            log.append(f"{target}: certificate found ({tag})")
        elif isinstance(got, Infeasible):
            log.append(f"{target}: {got.detail}")
            if infeasible is None:
                infeasible = got
        else:
            log.append(f"{target}: inconclusive ({got.reason})")
    witness = None
    if infeasible is not None:
        if witness_search:
            witness = _search_witness(g, spectrum, seed, ascent_iters,
                                      ascent_restarts, log)
        return Verdict(status="NotRigid", reason="DualInfeasible",
                       witness=witness, infeasible=infeasible, log=tuple(log))
    cert2 = results[TARGET_LAMBDA2]
    certN = results[TARGET_LAMBDAN]
    if isinstance(cert2, Certificate) and isinstance(certN, Certificate):
        if cert2.is_exact and certN.is_exact:
            return Verdict(status="Rigid", reason="CSSearch",
                           certificate_lambda2=cert2, certificate_lambdaN=certN,
                           log=tuple(log))
        return Verdict(status="NumericallyRigid", reason="CSSearch",
                       certificate_lambda2=cert2, certificate_lambdaN=certN,
                       log=tuple(log))
    if witness_search:
        witness = _search_witness(g, spectrum, seed, ascent_iters,
                                  ascent_restarts, log)
        if witness is not None:
            return Verdict(status="NotRigid", reason="DisproverWitness",
                           witness=witness, log=tuple(log))
    return Verdict(status="Inconclusive", reason="None",
                   certificate_lambda2=cert2 if isinstance(cert2, Certificate) else None,
                   certificate_lambdaN=certN if isinstance(certN, Certificate) else None,
                   log=tuple(log))


def _search_witness(g, spectrum, seed, iters, restarts, log):
    from .disprove import maximize_lambda2, minimize_lambdaN

    got = maximize_lambda2(g, iters=iters, restarts=restarts, seed=seed)
    if hasattr(got, "weights"):
        log.append(f"weight perturbation raises the low eigenvalue to {got.achieved:.9g}")
        return got
    got = minimize_lambdaN(g, iters=iters, restarts=restarts, seed=seed)
    if hasattr(got, "weights"):
        log.append(f"weight perturbation lowers the top eigenvalue to {got.achieved:.9g}")
        return got
    log.append("disprover found no improving weights")
    return None
