import numpy as np
import pytest

from perslap import sym_eigen, pseudo_inverse, schur_complement, column_reduce
from perslap.spectral import symmetrize


def test_symmetrize_validation():
    with pytest.raises(ValueError, match="square"):
        symmetrize(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="non-finite"):
        symmetrize(np.array([[np.nan, 0.0], [0.0, 1.0]]))
    M = np.array([[1.0, 2.0], [0.0, 1.0]])
    S = symmetrize(M)
    assert np.allclose(S, S.T)
    assert S[0, 1] == 1.0


def test_sym_eigen_known():
    M = np.diag([3.0, 1.0, 2.0])
    dec = sym_eigen(M)
    assert np.allclose(dec.eigenvalues, [1.0, 2.0, 3.0])
    # eigenvector property
    for i in range(3):
        v = dec.eigenvectors[:, i]
        assert np.allclose(M @ v, dec.eigenvalues[i] * v)


def test_sym_eigen_empty():
    dec = sym_eigen(np.zeros((0, 0)))
    assert dec.eigenvalues.shape == (0,)
    assert dec.clusters() == []


def test_clusters_group_degenerate_eigenvalues():
    dec = sym_eigen(np.diag([0.0, 0.0, 1.0, 1.0, 1.0, 5.0]))
    spans = [(b - a) for a, b in dec.clusters()]
    assert spans == [2, 3, 1]


def test_clusters_relative_tolerance():
    # a gap of 1 is a cluster break at scale 1 but not at scale 1e12
    dec = sym_eigen(np.diag([0.0, 1.0]))
    assert len(dec.clusters()) == 2
    dec_big = sym_eigen(np.diag([1e12, 1e12 + 1.0]))
    assert len(dec_big.clusters()) == 1


def test_pseudo_inverse_penrose():
    rng = np.random.default_rng(0)
    A = rng.normal(size=(5, 3))
    M = A @ A.T  # rank 3 PSD
    P = pseudo_inverse(M)
    assert np.allclose(M @ P @ M, M, atol=1e-10)
    assert np.allclose(P @ M @ P, P, atol=1e-10)
    assert np.allclose(P, P.T)


def test_pseudo_inverse_of_invertible_is_inverse():
    M = np.array([[2.0, 1.0], [1.0, 2.0]])
    assert np.allclose(pseudo_inverse(M), np.linalg.inv(M))


def test_column_reduce_properties():
    rng = np.random.default_rng(1)
    for trial in range(20):
        m, n = rng.integers(1, 7, size=2)
        M = rng.normal(size=(m, n))
        if trial % 3 == 0:
            # plant dependent columns
            M[:, -1] = M[:, 0] * 2.0 if n > 1 else M[:, -1]
        R, Y, zero_cols = column_reduce(M)
        assert np.allclose(M @ Y, R, atol=1e-10)
        assert np.isclose(abs(np.linalg.det(Y)), 1.0)
        for j in zero_cols:
            assert np.max(np.abs(R[:, j])) <= 1e-8
        assert len(zero_cols) == n - np.linalg.matrix_rank(M)


def test_column_reduce_kernel_columns_span_kernel():
    M = np.array([[1.0, 1.0, 2.0], [0.0, 1.0, 1.0]])
    R, Y, zero_cols = column_reduce(M)
    assert len(zero_cols) == 1
    k = Y[:, zero_cols[0]]
    assert np.allclose(M @ k, 0.0, atol=1e-12)


def test_schur_complement_against_inverse():
    rng = np.random.default_rng(2)
    A = rng.normal(size=(6, 6))
    M = A @ A.T + 0.5 * np.eye(6)  # PD, so D block invertible
    keep = [0, 2, 5]
    drop = [1, 3, 4]
    S = schur_complement(M, keep)
    direct = (M[np.ix_(keep, keep)]
              - M[np.ix_(keep, drop)]
              @ np.linalg.inv(M[np.ix_(drop, drop)])
              @ M[np.ix_(drop, keep)])
    assert np.allclose(S, direct, atol=1e-10)


def test_schur_complement_keep_all():
    M = np.array([[2.0, -1.0], [-1.0, 2.0]])
    assert np.allclose(schur_complement(M, [0, 1]), M)


def test_schur_complement_bad_index():
    with pytest.raises(ValueError):
        schur_complement(np.eye(2), [0, 5])


def test_kron_reduction_series_rule():
    # path 0-1-2: eliminating the middle vertex leaves the Laplacian of a
    # single edge with conductance 1/2 (series resistors)
    L = np.array([[1.0, -1.0, 0.0],
                  [-1.0, 2.0, -1.0],
                  [0.0, -1.0, 1.0]])
    S = schur_complement(L, [0, 2])
    assert np.allclose(S, np.array([[0.5, -0.5], [-0.5, 0.5]]), atol=1e-12)


def test_kron_reduction_preserves_row_sums():
    rng = np.random.default_rng(3)
    n = 6
    W = np.abs(rng.normal(size=(n, n)))
    W = (W + W.T) / 2
    np.fill_diagonal(W, 0.0)
    L = np.diag(W.sum(axis=1)) - W
    S = schur_complement(L, [0, 1, 2])
    assert np.allclose(S.sum(axis=1), 0.0, atol=1e-9)
    assert np.all(np.linalg.eigvalsh(S) > -1e-9)
