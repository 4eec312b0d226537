import numpy as np
import pytest

from promc import gf2


def M(rows):
    return np.array(rows, dtype=np.uint8)


def test_rank_and_echelon():
    A = M([[1, 0, 1], [1, 1, 0], [0, 1, 1]])
    assert gf2.rank(A) == 2
    R, piv = gf2.row_echelon(A)
    assert piv == [0, 1]
    assert gf2.rank(gf2.eye(4)) == 4
    assert gf2.rank(gf2.zeros(3, 5)) == 0


def test_solve_consistent_and_inconsistent():
    A = M([[1, 1], [0, 1]])
    b = np.array([1, 1], dtype=np.uint8)
    x = gf2.solve(A, b)
    assert np.array_equal(gf2.matmul(A, x.reshape(-1, 1)).ravel(), b)
    A2 = M([[1, 1], [1, 1]])
    assert gf2.solve(A2, np.array([0, 1], dtype=np.uint8)) is None


def test_solve_underdetermined_is_deterministic():
    A = M([[1, 1, 0]])
    b = np.array([1], dtype=np.uint8)
    x = gf2.solve(A, b)
    # free variables are zeroed: lowest pivot carries the value
    assert list(x) == [1, 0, 0]


def test_null_space():
    A = M([[1, 1, 0], [0, 0, 1]])
    N = gf2.null_space(A)
    assert N.shape == (3, 1)
    assert not gf2.matmul(A, N).any()
    assert gf2.null_space(gf2.eye(3)).shape == (3, 0)


def test_inverse():
    A = M([[1, 1], [0, 1]])
    Ainv = gf2.inverse(A)
    assert gf2.mat_eq(gf2.matmul(A, Ainv), gf2.eye(2))
    assert gf2.inverse(M([[1, 1], [1, 1]])) is None


def test_image_basis():
    A = M([[1, 1, 0], [1, 1, 1]])
    B = gf2.image_basis(A)
    assert B.shape == (2, 2)
    assert gf2.rank(B) == 2


def test_quotient_map():
    U = M([[1], [1], [0]])  # span{(1,1,0)}
    Q, k = gf2.quotient_map(U, 3)
    assert k == 2
    assert not gf2.matmul(Q, U).any()
    assert gf2.rank(Q) == 2
    # kernel of Q is exactly the span
    N = gf2.null_space(Q)
    assert N.shape[1] == 1
    assert gf2.solve(U, N[:, 0]) is not None


@pytest.mark.parametrize("seed", range(8))
def test_quotient_map_random(seed):
    rng = np.random.default_rng(seed)
    dim = int(rng.integers(1, 6))
    U = rng.integers(0, 2, size=(dim, int(rng.integers(0, 4)))).astype(np.uint8)
    Q, k = gf2.quotient_map(U, dim)
    assert k == dim - gf2.rank(U)
    assert not gf2.matmul(Q, U).any()
    assert gf2.rank(Q) == k
