import numpy as np
from hypothesis import given, settings, strategies as st

from repdim.xfield import Field, inverse, kernel_basis, rank, rref, solve_right

F5 = Field(5)
Q = Field(None)


def test_kernel_examples():
    assert kernel_basis(F5, F5.eye(2)).shape == (2, 0)
    assert kernel_basis(F5, F5.zeros(2, 2)).tolist() == [[1, 0], [0, 1]]
    K = kernel_basis(F5, F5.array([[1, 2], [2, 4]]))
    assert K.shape == (2, 1)
    # proportional to (3, 1)
    assert (K[0, 0] * 1 - K[1, 0] * 3) % 5 == 0


def test_solve_examples():
    b = F5.array([[1], [4]])
    assert solve_right(F5, F5.eye(2), b).tolist() == b.tolist()
    assert solve_right(F5, F5.zeros(2, 2), F5.zeros(2, 1)).tolist() == [[0], [0]]
    assert solve_right(F5, F5.array([[1, 1]]), F5.array([[3]])).tolist() == [[3], [0]]
    assert solve_right(F5, F5.zeros(1, 1), F5.array([[1]])) is None


def test_rank_examples():
    assert rank(F5, F5.eye(3)) == 3
    assert rank(F5, F5.zeros(2, 3)) == 0
    assert rank(F5, F5.array([[1, 2], [2, 4]])) == 1


def test_rationals():
    A = Q.array([[1, 2], [3, 4]])
    Ainv = inverse(Q, A)
    assert Q.matmul(A, Ainv).tolist() == Q.eye(2).tolist()
    assert rank(Q, Q.array([[2, 4], [1, 2]])) == 1


def test_large_prime_uses_objects():
    F = Field(1_000_003)
    A = F.array([[10 ** 6, 2], [3, 4]])
    assert F.matmul(A, inverse(F, A)).tolist() == F.eye(2).tolist()


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, 4), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_nullity(rows):
    A = F5.array(rows)
    K = kernel_basis(F5, A)
    assert rank(F5, A) + K.shape[1] == A.shape[1]
    assert not np.any(F5.matmul(A, K))


@settings(max_examples=60, deadline=None)
@given(matrices, st.data())
def test_solve_is_exact(rows, data):
    A = F5.array(rows)
    x = F5.array([[data.draw(st.integers(0, 4))] for _ in range(A.shape[1])])
    b = F5.matmul(A, x)
    sol = solve_right(F5, A, b)
    assert sol is not None
    assert F5.matmul(A, sol).tolist() == b.tolist()


def test_deterministic():
    A = F5.array([[1, 2, 3], [2, 4, 1]])
    assert rref(F5, A)[0].tolist() == rref(F5, A)[0].tolist()
    assert kernel_basis(F5, A).tolist() == kernel_basis(F5, A).tolist()
