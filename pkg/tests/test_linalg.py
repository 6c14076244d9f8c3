from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from kahlerobs.linalg import (
    IntegerLattice,
    RationalMatrix,
    Subspace,
    det,
    hermite_normal_form,
    image,
    integer_kernel,
    intersect,
    inverse,
    invariant_factors,
    kernel_basis,
    preimage,
    rank,
    saturate,
    similar,
    smith_form,
    smith_normal_form,
    subspace_sum,
)

small = st.integers(-4, 4)


def int_matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_snf_diag_2_3():
    assert smith_normal_form([[2, 0], [0, 3]]) == (1, 6)


def test_snf_zero_row():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == (2, 6, 12)


@settings(max_examples=40, deadline=None)
@given(int_matrix(3, 4))
def test_smith_form_identity(M):
    sf = smith_form(M)
    D = RationalMatrix(sf.U) @ RationalMatrix(M) @ RationalMatrix(sf.V)
    for i in range(3):
        for j in range(4):
            want = sf.invariants[i] if (i == j and i < len(sf.invariants)) else 0
            assert D[i][j] == want
    nz = [d for d in sf.invariants if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert abs(det(sf.U)) == 1 and abs(det(sf.V)) == 1


@settings(max_examples=40, deadline=None)
@given(int_matrix(4, 4))
def test_det_rank_against_sympy(M):
    S = sympy.Matrix(M)
    assert det(M) == S.det()
    assert rank(M) == S.rank()


@settings(max_examples=40, deadline=None)
@given(int_matrix(3, 5))
def test_kernel(M):
    K = kernel_basis(M, 5)
    assert K.dim == 5 - sympy.Matrix(M).rank()
    for v in K.basis:
        assert all(sum(r[j] * v[j] for j in range(5)) == 0 for r in M)


@settings(max_examples=30, deadline=None)
@given(int_matrix(2, 4), int_matrix(2, 4))
def test_intersection_dimension_formula(a, b):
    A, B = Subspace.span(a, 4), Subspace.span(b, 4)
    assert A.dim + B.dim == subspace_sum(A, B).dim + intersect(A, B).dim
    I = intersect(A, B)
    assert A.contains(I) and B.contains(I)


def test_preimage_image():
    M = [[1, 0, 0], [0, 1, 0]]
    T = Subspace.span([[1, 0]], 2)
    P = preimage(M, T, 3)
    assert P == Subspace.span([[1, 0, 0], [0, 0, 1]], 3)
    assert image(M) == Subspace.full(2)


def test_hnf_canonical():
    a = hermite_normal_form([[2, 4], [1, 3]])
    b = hermite_normal_form([[1, 3], [3, 7]])
    assert a == b


def test_saturation():
    L = IntegerLattice.from_generators([[2, 0, 0], [0, 2, 2]], 3)
    S = saturate(L)
    assert S == IntegerLattice.from_generators([[1, 0, 0], [0, 1, 1]], 3)
    assert L.index_in(S) == 4
    assert S.is_primitive() and not L.is_primitive()


def test_integer_kernel_primitive():
    K = integer_kernel([[2, -2, 0]], 3)
    assert K == IntegerLattice.from_generators([[1, 1, 0], [0, 0, 1]], 3)


def test_inverse():
    M = [[2, 1], [7, 4]]
    assert RationalMatrix(M) @ RationalMatrix(inverse(M)) == RationalMatrix.identity(2)


def test_similarity_and_witness():
    A = [[0, -1], [1, -1]]
    B = [[-1, 1], [-1, 0]]
    res = similar(A, B)
    assert res.similar
    g = res.witness
    assert g @ RationalMatrix(A) == RationalMatrix(B) @ g


def test_not_similar_same_charpoly():
    assert not similar([[1, 1], [0, 1]], [[1, 0], [0, 1]])
    assert invariant_factors([[2, 0], [0, 2]]) != invariant_factors([[2, 1], [0, 2]])


@settings(max_examples=25, deadline=None)
@given(int_matrix(3, 3), st.sampled_from([[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[0, 1, 0], [1, 0, 0], [0, 0, -1]], [[1, 0, 2], [0, 1, -1], [0, 0, 1]]]))
def test_conjugates_are_similar(M, P):
    Pi = inverse(P)
    N = (RationalMatrix(P) @ RationalMatrix(M) @ RationalMatrix(Pi)).rows
    res = similar(M, N)
    assert res.similar
    assert res.witness @ RationalMatrix(M) == RationalMatrix(N) @ res.witness


def test_fractions_accepted():
    assert det([[Fraction(1, 2), 0], [0, 4]]) == 2
