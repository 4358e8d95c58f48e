from fractions import Fraction
from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from filiform.exactfield import GF, QQ
from filiform.exceptions import DimensionMismatch, SingularMatrix, UnsupportedField
from filiform.linalg import (
    Subspace,
    det,
    gaussian_binomial,
    inverse,
    is_invertible,
    kernel,
    matmul,
    rank,
    rref,
    solve,
    subspaces_of_dim,
    superspaces_of,
)


def leibniz_det(M, p):
    """Determinant by the permutation expansion: slow, independent of elimination."""
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inv
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    return total % p if p else total


@st.composite
def square_matrices(draw, max_n=4):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=n, max_size=n))
    return GF(p), np.array(rows, dtype=np.int64)


@st.composite
def matrices(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    r, c = draw(st.integers(1, 5)), draw(st.integers(1, 5))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return GF(p), np.array(rows, dtype=np.int64)


@given(square_matrices())
def test_det_matches_leibniz(data):
    F, M = data
    assert det(M, F) == leibniz_det(M.tolist(), F.p)
    assert is_invertible(M, F) == (det(M, F) != 0)


@given(square_matrices())
def test_inverse_is_two_sided(data):
    F, M = data
    if not is_invertible(M, F):
        with pytest.raises(SingularMatrix):
            inverse(M, F)
        return
    Mi = inverse(M, F)
    assert (matmul(M, Mi, F) == F.eye(len(M))).all()
    assert (matmul(Mi, M, F) == F.eye(len(M))).all()


@given(matrices())
def test_rank_nullity_and_kernel(data):
    F, M = data
    K = kernel(M, F)
    assert K.dim == M.shape[1] - rank(M, F)
    for v in K.basis:
        assert not F.reduce(M @ v).any()


@given(matrices())
def test_rref_is_reduced(data):
    F, M = data
    R, r, piv = rref(M, F)
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert sum(1 for x in R[:, c] if x) == 1
    assert not R[r:].any()
    assert piv == sorted(piv)


@given(matrices(), st.data())
def test_solve_consistent_systems(data, draw):
    F, M = data
    x0 = np.array(draw.draw(st.lists(st.integers(0, F.p - 1), min_size=M.shape[1], max_size=M.shape[1])))
    b = F.reduce(M @ x0)
    sol = solve(M, b, F)
    assert sol is not None
    assert (F.reduce(M @ sol.x) == b).all()


def test_solve_inconsistent():
    F = GF(3)
    assert solve([[1, 0], [1, 0]], [1, 2], F) is None
    with pytest.raises(DimensionMismatch):
        solve([[1, 0]], [1, 2], F)


def test_rational_elimination():
    M = QQ.asarray([[Fraction(1, 2), 1], [1, Fraction(1, 3)]])
    assert det(M, QQ) == Fraction(1, 6) - 1
    Mi = inverse(M, QQ)
    prod = matmul(M, Mi, QQ)
    assert all(prod[i, j] == (1 if i == j else 0) for i in range(2) for j in range(2))
    assert rank([[1, 2], [2, 4]], QQ) == 1


@pytest.mark.parametrize("n,k,q,value", [(4, 2, 2, 35), (3, 1, 3, 13), (6, 3, 2, 1395), (5, 0, 7, 1), (2, 3, 2, 0)])
def test_gaussian_binomial_values(n, k, q, value):
    assert gaussian_binomial(n, k, q) == value


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (2, 5)])
def test_subspace_enumeration_is_complete_and_distinct(p, n):
    F = GF(p)
    for m in range(n + 1):
        keys = [S.key() for S in subspaces_of_dim(m, n, F)]
        assert len(keys) == len(set(keys)) == gaussian_binomial(n, m, p)
        assert all(S.dim == m for S in subspaces_of_dim(m, n, F))


def test_brute_force_subspace_count_f2():
    # every 2-dimensional subspace of F_2^4 is the span of some pair of vectors
    F = GF(2)
    spans = set()
    vecs = [np.array(v) for v in product(range(2), repeat=4)]
    for u, v in product(vecs, repeat=2):
        S = Subspace.span([u, v], 4, F)
        if S.dim == 2:
            spans.add(S.key())
    assert spans == {S.key() for S in subspaces_of_dim(2, 4, F)}


def test_superspaces_contain_the_base():
    F = GF(3)
    base = Subspace.span([[1, 1, 0, 0]], 4, F)
    found = list(superspaces_of(2, base))
    assert len(found) == gaussian_binomial(3, 1, 3)
    assert all(S.contains_subspace(base) for S in found)
    with pytest.raises(UnsupportedField):
        list(superspaces_of(1, Subspace.zero(2, QQ)))


def test_subspace_operations():
    F = GF(5)
    S = Subspace.span([[1, 2, 0], [0, 0, 1]], 3, F)
    T = Subspace.span([[1, 2, 3]], 3, F)
    assert S.contains_subspace(T) and not T.contains_subspace(S)
    assert S.intersection(T) == T
    assert S.contains([2, 4, 1]) and not S.contains([0, 1, 0])
    assert Subspace.full(3, F).dim == 3 and Subspace.zero(3, F).dim == 0
    assert S == Subspace.span([[2, 4, 1], [0, 0, 3]], 3, F)
