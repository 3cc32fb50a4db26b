from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kahlercert.errors import NonSquare, NotSymmetric, Singular
from kahlercert.exactlin import (
    RationalMatrix,
    det,
    inverse,
    kernel_basis,
    ldlt_signature,
    rank,
    rref,
    standard_symplectic,
)


# independent oracles ---------------------------------------------------------

def bareiss_rank(rows):
    """Fraction-free elimination with integer arithmetic only."""
    a = [list(r) for r in rows]
    m, n = len(a), len(a[0])
    r, prev = 0, 1
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == m:
            break
    return r


def cofactor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    return sum(
        (-1) ** j * rows[0][j] * cofactor_det([r[:j] + r[j + 1 :] for r in rows[1:]])
        for j in range(n)
        if rows[0][j]
    )


def leibniz_det(rows):
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= rows[i][p[i]]
        total += sign * prod
    return total


def int_matrices(n, lo=-9, hi=9):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


def rect_matrices(max_dim=5):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


# rref / rank -------------------------------------------------------------------

def test_rref_identity():
    I = RationalMatrix.identity(3)
    assert rref(I) == (I, 3)


def test_rref_rank_one():
    R, r = rref(RationalMatrix([[1, 2], [2, 4]]))
    assert R == RationalMatrix([[1, 2], [0, 0]])
    assert r == 1


def test_rank_matches_bareiss_on_seeded_matrices():
    rng = np.random.default_rng(7)
    for _ in range(50):
        rows = rng.integers(-4, 5, size=(4, 4)).tolist()
        if rng.random() < 0.5:
            rows[3] = [a + 2 * b for a, b in zip(rows[0], rows[1])]
        assert rank(RationalMatrix(rows)) == bareiss_rank(rows)


@given(rect_matrices())
def test_rank_matches_bareiss(rows):
    assert rank(RationalMatrix(rows)) == bareiss_rank(rows)


# kernel ------------------------------------------------------------------------

def test_kernel_of_zero_spans_everything():
    ker = kernel_basis(RationalMatrix.zeros(2))
    assert len(ker) == 2
    assert rank(RationalMatrix(ker)) == 2


def test_kernel_of_identity_is_empty():
    assert kernel_basis(RationalMatrix.identity(3)) == []


def test_kernel_of_row_vector():
    (v,) = kernel_basis(RationalMatrix([[1, 1]]))
    assert v[0] == -v[1] != 0


@given(rect_matrices())
def test_rank_nullity(rows):
    m = RationalMatrix(rows)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.ncols
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in m.rows)
    if ker:
        assert rank(RationalMatrix(ker)) == len(ker)


# det / inverse -----------------------------------------------------------------

def test_det_small_cases():
    assert det(standard_symplectic(2)) == 1
    assert det(RationalMatrix.identity(5)) == 1
    with pytest.raises(NonSquare):
        det(RationalMatrix([[1, 2]]))


def test_det_matches_cofactor_expansion_5x5():
    rng = np.random.default_rng(11)
    for _ in range(10):
        rows = rng.integers(-9, 10, size=(5, 5)).tolist()
        assert det(RationalMatrix(rows)) == cofactor_det(rows)


@given(int_matrices(4))
def test_det_matches_leibniz(rows):
    assert det(RationalMatrix(rows)) == leibniz_det(rows)


@settings(max_examples=50)
@given(int_matrices(3), int_matrices(3))
def test_det_multiplicative(a, b):
    A, B = RationalMatrix(a), RationalMatrix(b)
    assert det(A @ B) == det(A) * det(B)


def test_inverse_examples():
    assert inverse(RationalMatrix.diag([1, Fraction(1, 2)])) == RationalMatrix.diag([1, 2])
    Om = standard_symplectic(2)
    assert inverse(Om) == -Om
    with pytest.raises(Singular):
        inverse(RationalMatrix([[1, 2], [2, 4]]))


@given(int_matrices(4, -6, 6))
def test_inverse_is_exact(rows):
    m = RationalMatrix(rows)
    if det(m) == 0:
        with pytest.raises(Singular):
            inverse(m)
        return
    assert m @ inverse(m) == RationalMatrix.identity(4)
    assert inverse(m) @ m == RationalMatrix.identity(4)


# inertia -----------------------------------------------------------------------

def test_signature_examples():
    assert ldlt_signature(RationalMatrix.identity(4)) == (4, 0, 0)
    assert ldlt_signature(RationalMatrix.diag([1, -1])) == (1, 1, 0)
    R = RationalMatrix([[0, -1], [1, -1]])
    S = sum((g.T @ g for g in (R @ R, R)), RationalMatrix.identity(2))
    assert ldlt_signature(S) == (2, 0, 0)
    assert np.all(np.linalg.eigvalsh(S.to_numpy()) > 0)


def test_signature_zero_diagonal_needs_two_by_two_pivot():
    assert ldlt_signature(RationalMatrix([[0, 1], [1, 0]])) == (1, 1, 0)
    assert ldlt_signature(RationalMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]])) == (1, 1, 1)


def test_signature_rejects_nonsymmetric():
    with pytest.raises(NotSymmetric):
        ldlt_signature(RationalMatrix([[1, 2], [0, 1]]))


def _symmetric(n):
    return st.lists(st.integers(-4, 4), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
        lambda v: _sym_from(v, n)
    )


def _sym_from(v, n):
    rows = [[0] * n for _ in range(n)]
    it = iter(v)
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = next(it)
    return RationalMatrix(rows)


@settings(max_examples=60)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(_symmetric(n), int_matrices(n, -3, 3))))
def test_sylvester_law_of_inertia(pair):
    M, s = pair
    S = RationalMatrix(s)
    if det(S) == 0:
        return
    assert ldlt_signature(S.T @ M @ S) == ldlt_signature(M)


@settings(max_examples=60)
@given(st.integers(1, 6).flatmap(_symmetric))
def test_signature_matches_eigenvalues(M):
    ev = np.linalg.eigvalsh(M.to_numpy())
    tol = 1e-9 * max(1.0, np.abs(ev).max())
    expected = (int(np.sum(ev > tol)), int(np.sum(ev < -tol)), int(np.sum(np.abs(ev) <= tol)))
    assert ldlt_signature(M) == expected
