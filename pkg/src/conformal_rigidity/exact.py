"""Exact rational linear algebra used to upgrade float certificates.

Everything here works over fractions.Fraction in plain lists, sized for the
small dense systems that certificates produce (tens of unknowns). The float
pipeline finds a candidate; these routines re-derive it exactly so the final
verdict never rests on floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

DEFAULT_MAX_DENOMINATOR = 10 ** 4
VALUE_CLUSTER_TOL = 1e-7


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable matrix of Fractions with float export."""

    entries: tuple  # tuple of tuples of Fraction

    @property
    def shape(self):
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def as_float(self):
        return np.array([[float(x) for x in row] for row in self.entries])

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]


def rref(rows, ncols):
    """Reduced row echelon form in place semantics: returns (rows, pivot_cols)."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def solve_affine(A, b):
    """Exact solution set of A x = b over the rationals.

    Returns (particular, nullspace_basis) with Fraction entries, or None when
    the system is inconsistent. nullspace_basis is a list of vectors.
    """
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x0 = [Fraction(0)] * ncols
    for r, c in enumerate(piv):
        x0[c] = R[r][ncols]
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -R[r][f]
        basis.append(v)
    return x0, basis


def ldlt_psd(M):
    """Exact positive-semidefiniteness test via symmetric elimination.

    A zero pivot forces its whole remaining row to vanish; a negative pivot
    ends it. Runs on the Schur complement only, so M is read symmetric.
    """
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)] for i in range(n)]
    for k in range(n):
        d = A[k][k]
        if d < 0:
            return False
        if d == 0:
            for j in range(k + 1, n):
                if A[k][j] != 0:
                    return False
            continue
        for i in range(k + 1, n):
            if A[k][i] == 0:
                continue
            f = A[k][i] / d
            for j in range(i, n):
                A[i][j] -= f * A[k][j]
    return True


def rationalize_float(x, max_denominator=DEFAULT_MAX_DENOMINATOR, tol=1e-12):
    """Best continued-fraction convergent with denominator <= max_denominator.

    Walks the convergents and keeps the last one under the cap, stopping early
    once a convergent matches x to relative tol. Unlike semiconvergent-based
    rounding this always lands on a true convergent, which is what exact
    certificate entries turn out to be.
    """
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise ValueError("cannot rationalize non-finite value")
    p0, q0, p1, q1 = 1, 0, 0, 1  # convergent recurrence seeds
    a = x
    best = Fraction(0)
    for _ in range(64):
        ai = math.floor(a)
        p2 = ai * p0 + p1
        q2 = ai * q0 + q1
        if q2 > max_denominator:
            break
        best = Fraction(p2, q2)
        if abs(x - p2 / q2) <= tol * max(1.0, abs(x)):
            break
        frac = a - ai
        if frac < 1e-15:
            break
        a = 1.0 / frac
        p1, q1, p0, q0 = p0, q0, p2, q2
    return best


def rationalize_matrix(M, max_denominator=DEFAULT_MAX_DENOMINATOR,
                       cluster_tol=VALUE_CLUSTER_TOL):
    """Rationalize a float matrix, forcing near-equal entries to agree.

    Entries within cluster_tol of each other are replaced by one shared
    rational value before conversion, which preserves symmetry and the exact
    repetition patterns certificates rely on.
    """
    M = np.asarray(M, dtype=np.float64)
    flat = M.reshape(-1)
    order = np.argsort(flat)
    mapped = [None] * flat.size
    i = 0
    while i < flat.size:
        j = i
        while j + 1 < flat.size and flat[order[j + 1]] - flat[order[j]] <= cluster_tol:
            j += 1
        rep = float(np.mean(flat[order[i:j + 1]]))
        frac = rationalize_float(rep, max_denominator)
        for k in range(i, j + 1):
            mapped[order[k]] = frac
        i = j + 1
    rows, cols = M.shape
    entries = tuple(
        tuple(mapped[r * cols + c] for c in range(cols)) for r in range(rows)
    )
    return RationalMatrix(entries=entries)


# small Fraction-matrix helpers shared by the exact certificate path

def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a == 0:
                continue
            Bt = B[t]
            row = out[i]
            for j in range(m):
                row[j] += a * Bt[j]
    return out


def mat_T(A):
    return [list(col) for col in zip(*A)]


def mat_scale(A, s):
    s = Fraction(s)
    return [[x * s for x in row] for row in A]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def frac_dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))
