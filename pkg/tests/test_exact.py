from fractions import Fraction as F

import numpy as np
import pytest

from conformal_rigidity.exact import (
    RationalMatrix,
    ldlt_psd,
    rationalize_float,
    rationalize_matrix,
    rref,
    solve_affine,
)


def test_rref_identity():
    rows = [[F(2), F(0)], [F(0), F(3)]]
    mat, pivots = rref(rows, 2)
    assert pivots == [0, 1]
    assert mat[0] == [F(1), F(0)]
    assert mat[1] == [F(0), F(1)]


def test_rref_dependent_rows():
    rows = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]]
    mat, pivots = rref(rows, 3)
    assert pivots == [0, 1]


def test_solve_affine_unique():
    A = [[F(1), F(1)], [F(1), F(-1)]]
    b = [F(4), F(0)]
    x0, basis = solve_affine(A, b)
    assert x0 == [F(2), F(2)]
    assert basis == []


def test_solve_affine_underdetermined():
    A = [[F(1), F(1), F(0)]]
    b = [F(1)]
    x0, basis = solve_affine(A, b)
    assert len(basis) == 2
    # every returned direction is in the kernel
    for v in basis:
        assert sum(a * x for a, x in zip(A[0], v)) == 0
    assert sum(a * x for a, x in zip(A[0], x0)) == F(1)


def test_solve_affine_infeasible():
    A = [[F(1), F(1)], [F(2), F(2)]]
    b = [F(1), F(3)]
    assert solve_affine(A, b) is None


def test_ldlt_psd():
    assert ldlt_psd([[F(2), F(-1)], [F(-1), F(2)]])
    assert ldlt_psd([[F(1), F(1)], [F(1), F(1)]])  # singular but PSD
    assert not ldlt_psd([[F(1), F(2)], [F(2), F(1)]])
    assert not ldlt_psd([[F(0), F(1)], [F(1), F(0)]])
    assert ldlt_psd([[F(0), F(0)], [F(0), F(0)]])


def test_ldlt_matches_float_judgement(rng):
    agree = 0
    for _ in range(60):
        B = rng.integers(-3, 4, size=(4, 4))
        M = B @ B.T - rng.integers(0, 3) * np.eye(4, dtype=int)
        eigmin = float(np.linalg.eigvalsh(M.astype(float)).min())
        if abs(eigmin) < 1e-6:
            continue
        exact = ldlt_psd([[F(int(M[i, j])) for j in range(4)] for i in range(4)])
        assert exact == (eigmin > 0)
        agree += 1
    assert agree > 30


def test_rationalize_float_known_values():
    assert rationalize_float(0.5) == F(1, 2)
    assert rationalize_float(float(F(-167, 384))) == F(-167, 384)
    assert rationalize_float(float(F(217, 384))) == F(217, 384)
    assert rationalize_float(1.0 / 3.0) == F(1, 3)
    assert rationalize_float(0.0) == F(0)
    assert rationalize_float(-2.0) == F(-2)


def test_rationalize_float_respects_cap():
    x = float(F(1, 15590))  # denominator beyond the default cap
    got = rationalize_float(x)
    assert got.denominator <= 10_000
    got2 = rationalize_float(x, max_denominator=20_000)
    assert got2 == F(1, 15590)


def test_rationalize_matrix_clusters_nearby_values():
    a = 1.0 / 3.0
    M = np.array([[a, a + 3e-8], [a - 3e-8, 0.25]])
    R = rationalize_matrix(M)
    assert R[0, 0] == R[0, 1] == R[1, 0] == F(1, 3)
    assert R[1, 1] == F(1, 4)


def test_rational_matrix_as_float():
    R = RationalMatrix(((F(1, 2), F(0)), (F(0), F(1, 4))))
    X = R.as_float()
    assert X[0, 0] == 0.5 and X[1, 1] == 0.25
    assert R.shape == (2, 2)
