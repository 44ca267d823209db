import numpy as np
import pytest

from perslap import SimplicialComplex, build_complex, boundary_matrix, faces, facets
from perslap.complex import _as_simplex


def test_simplex_normalization():
    assert _as_simplex([2, 0, 1]) == (0, 1, 2)
    assert _as_simplex((5,)) == (5,)


def test_simplex_rejects_repeats_and_negatives():
    with pytest.raises(ValueError):
        _as_simplex([0, 0])
    with pytest.raises(ValueError):
        _as_simplex([-1, 2])
    with pytest.raises(ValueError):
        _as_simplex([])


def test_faces_and_facets_of_triangle():
    t = (0, 1, 2)
    assert set(faces(t)) == {(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)}
    # facet i comes from deleting vertex i
    assert facets(t) == [(1, 2), (0, 2), (0, 1)]


def test_closure_validation():
    with pytest.raises(ValueError, match="not closed"):
        SimplicialComplex([(0,), (1,), (0, 1, 2)])
    with pytest.raises(ValueError, match="duplicate"):
        SimplicialComplex([(0,), (0,)])


def test_build_complex_closes_and_orders():
    K = build_complex([(2, 1, 0), (3,)])
    assert K.simplices(0) == [(0,), (1,), (2,), (3,)]
    assert K.simplices(1) == [(0, 1), (0, 2), (1, 2)]
    assert K.simplices(2) == [(0, 1, 2)]
    assert K.dim == 2
    assert K.n(5) == 0
    assert (0, 1) in K
    assert (1, 3) not in K
    assert K.index_of((0, 2)) == 1


def test_empty_complex():
    K = build_complex([])
    assert K.dim == -1
    assert K.n(0) == 0
    assert list(K.all_simplices()) == []


def test_weights_default_and_validation():
    K = build_complex([(0, 1)])
    assert np.allclose(K.weight_vector(0), [1.0, 1.0])
    with pytest.raises(ValueError, match="non-positive"):
        build_complex([(0, 1)], weight_fn=lambda s: 0.0)
    with pytest.raises(ValueError, match="not in the complex"):
        SimplicialComplex([(0,)], weights={(9,): 1.0})
    K2 = build_complex([(0, 1)], weight_fn=lambda s: 2.0 if len(s) == 2 else 0.5)
    assert np.allclose(K2.weight_vector(1), [2.0])
    assert np.allclose(K2.weight_vector(0), [0.5, 0.5])


def test_boundary_matrix_signs():
    K = build_complex([(0, 1, 2)])
    B1 = boundary_matrix(K, 1)
    # column of (0,1) is e_1 - e_0
    col = B1.entries[:, B1.col_simplices.index((0, 1))]
    assert np.allclose(col, [-1.0, 1.0, 0.0])
    B2 = boundary_matrix(K, 2)
    # (0,1,2) -> (1,2) - (0,2) + (0,1)
    assert B2.entries[B1.col_simplices.index((1, 2)), 0] == 1.0
    assert B2.entries[B1.col_simplices.index((0, 2)), 0] == -1.0
    assert B2.entries[B1.col_simplices.index((0, 1)), 0] == 1.0


def test_boundary_of_boundary_is_zero():
    K = build_complex([(0, 1, 2, 3), (2, 3, 4)])
    for q in range(1, K.dim + 1):
        Bq = boundary_matrix(K, q).entries
        Bq1 = boundary_matrix(K, q + 1).entries
        if Bq.size and Bq1.size:
            assert np.max(np.abs(Bq @ Bq1)) == 0.0


def test_boundary_q0_shape():
    K = build_complex([(0,), (1,)])
    B0 = boundary_matrix(K, 0)
    assert B0.entries.shape == (0, 2)
    with pytest.raises(ValueError):
        boundary_matrix(K, -1)
