"""Laplacian assembly checks: known matrices, weighted spectra, and the
equality of the two persistent-Laplacian constructions."""

import math

import numpy as np
import pytest

from perslap import (build_complex, sublevel_filtration, vietoris_rips,
                     combinatorial_laplacian, persistent_laplacian,
                     up_persistent_laplacian, schur_up_persistent_laplacian,
                     boundary_matrix)
from tests.oracles import betti_rank_oracle


def test_graph_laplacian_unit_weights():
    K = build_complex([(0, 1), (1, 2)])
    L = combinatorial_laplacian(K, 0)
    expect = np.array([[1.0, -1.0, 0.0],
                       [-1.0, 2.0, -1.0],
                       [0.0, -1.0, 1.0]])
    assert np.allclose(L, expect)


def test_triangle_laplacians():
    K = build_complex([(0, 1, 2)])
    L0 = combinatorial_laplacian(K, 0)
    assert np.allclose(np.diag(L0), [2.0, 2.0, 2.0])
    L1 = combinatorial_laplacian(K, 1)
    # on a single full triangle, Delta_1 = 3 I
    assert np.allclose(L1, 3.0 * np.eye(3), atol=1e-12)
    L2 = combinatorial_laplacian(K, 2)
    assert np.allclose(L2, [[3.0]])


def test_laplacian_psd_and_hodge():
    rng = np.random.default_rng(7)
    K = build_complex([(0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 4)],
                      weight_fn=lambda s: float(rng.uniform(0.5, 2.0)))
    for q in range(K.dim + 1):
        L = combinatorial_laplacian(K, q)
        lam = np.linalg.eigvalsh(L)
        assert lam.min() > -1e-10
    # Hodge: nullity of Delta_q equals the Betti number, regardless of weights
    F = sublevel_filtration(K, lambda s: 0.0)
    for q in range(K.dim + 1):
        lam = np.linalg.eigvalsh(combinatorial_laplacian(K, q))
        nullity = int(np.sum(lam < 1e-8))
        assert nullity == betti_rank_oracle(F, q, 0.0, 0.0)


def test_weighted_up_laplacian_similar_to_raw_operator():
    # the symmetrized matrix must be W^{1/2} (raw operator) W^{-1/2} with
    # raw = B W_{q+1} B^T W_q^{-1}; check they share eigenvalues
    K = build_complex([(0, 1, 2), (2, 3)],
                      weight_fn=lambda s: 1.0 + 0.25 * sum(s) + 0.5 * len(s))
    B = boundary_matrix(K, 1).entries
    w0 = K.weight_vector(0)
    w1 = K.weight_vector(1)
    raw = (B * w1) @ B.T / w0[None, :]
    sym = combinatorial_laplacian(K, 0)
    assert np.allclose(np.sort(np.linalg.eigvals(raw).real),
                       np.sort(np.linalg.eigvalsh(sym)), atol=1e-9)


def test_persistent_laplacian_at_equal_levels():
    K = build_complex([(0, 1, 2)])
    F = sublevel_filtration(K, lambda s: 0.0)
    PL = persistent_laplacian(F, 1, 0.0, 0.0)
    assert np.allclose(PL.matrix, combinatorial_laplacian(K, 1), atol=1e-10)
    assert PL.q == 1 and PL.birth_level == 0.0


def test_persistent_laplacian_validates_levels():
    K = build_complex([(0, 1)])
    F = sublevel_filtration(K, lambda s: float(len(s)))
    with pytest.raises(ValueError, match="not an index value"):
        persistent_laplacian(F, 0, 1.5, 2.0)
    with pytest.raises(ValueError, match="b <= d"):
        persistent_laplacian(F, 0, 2.0, 1.0)


def test_filled_triangle_kills_cycle():
    # cycle appears at level 1, the 2-cell arrives at level 2
    K = build_complex([(0, 1, 2)])
    F = sublevel_filtration(K, lambda s: 1.0 if len(s) < 3 else 2.0)
    up_11 = up_persistent_laplacian(F, 1, 1.0, 1.0)
    assert np.allclose(up_11, 0.0)  # no 2-cells yet
    lam = np.linalg.eigvalsh(persistent_laplacian(F, 1, 1.0, 1.0).matrix)
    assert int(np.sum(lam < 1e-8)) == 1  # the cycle is alive at (1,1)
    lam2 = np.linalg.eigvalsh(persistent_laplacian(F, 1, 1.0, 2.0).matrix)
    assert int(np.sum(lam2 < 1e-8)) == 0  # and dead across (1,2)


def test_up_persistent_zero_when_no_boundary_stays_inside():
    # K_b is one edge of the triangle; the only 2-chain's boundary leaves it
    K = build_complex([(0, 1, 2)])
    values = {}
    for s in K.all_simplices():
        values[s] = 1.0 if s in ((0,), (1,), (0, 1)) else 2.0
    F = sublevel_filtration(K, values)
    up = up_persistent_laplacian(F, 1, 1.0, 2.0)
    assert up.shape == (1, 1)
    assert np.allclose(up, 0.0)


def test_two_triangles_sharing_an_edge():
    # K_b holds the cycle of triangle (0,1,2); K_d fills it and adds a
    # second triangle whose boundary leaves K_b, so the reduction has to
    # filter the 2-chains down to those with boundary inside K_b
    K = build_complex([(0, 1, 2), (0, 1, 3)])
    values = {}
    for s in K.all_simplices():
        late = (3 in s) and len(s) >= 2 or len(s) == 3
        values[s] = 2.0 if late else 1.0
    F = sublevel_filtration(K, values)
    # at level 1: vertices 0,1,2,3 and edges of triangle (0,1,2)
    up = up_persistent_laplacian(F, 1, 1.0, 2.0)
    schur = schur_up_persistent_laplacian(F, 1, 1.0, 2.0)
    assert np.allclose(up, schur, atol=1e-10)
    D = persistent_laplacian(F, 1, 1.0, 2.0)
    lam = np.linalg.eigvalsh(D.matrix)
    assert int(np.sum(lam < 1e-8)) == betti_rank_oracle(F, 1, 1.0, 2.0)


def test_dual_routes_agree_weighted_random():
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(4, 8))
        edges = [(a, b) for a in range(n) for b in range(a + 1, n)
                 if rng.uniform() < 0.5]
        tris = [(a, b, c) for a in range(n) for b in range(a + 1, n)
                for c in range(b + 1, n)
                if ((a, b) in edges and (b, c) in edges and (a, c) in edges
                    and rng.uniform() < 0.6)]
        K = build_complex([(v,) for v in range(n)] + edges + tris,
                          weight_fn=lambda s: float(rng.uniform(0.2, 3.0)))
        lv = {v: float(rng.integers(0, 3)) for v in range(n)}
        F = sublevel_filtration(K, lambda s: max(lv[v] for v in s))
        T = list(F.index_set)
        for q in range(K.dim + 1):
            for i, b in enumerate(T):
                for d in T[i:] + [math.inf]:
                    A = up_persistent_laplacian(F, q, b, d)
                    B = schur_up_persistent_laplacian(F, q, b, d)
                    assert A.shape == B.shape
                    if A.size:
                        assert np.max(np.abs(A - B)) < 1e-8


def test_nullity_matches_rank_oracle_vr():
    rng = np.random.default_rng(13)
    pts = [tuple(p) for p in rng.uniform(0, 2, size=(6, 2))]
    F = vietoris_rips(pts, 2, eps_values=[0.8, 1.4, 2.0, 2.9])
    T = list(F.index_set)
    for q in range(F.final_complex.dim + 1):
        for i, b in enumerate(T):
            for d in T[i:] + [math.inf]:
                M = persistent_laplacian(F, q, b, d).matrix
                lam = np.linalg.eigvalsh(M) if M.size else np.array([])
                nullity = int(np.sum(lam < 1e-8))
                assert nullity == betti_rank_oracle(F, q, b, d)


def test_up_down_parts_recorded():
    K = build_complex([(0, 1, 2)])
    F = sublevel_filtration(K, lambda s: 0.0)
    PL = persistent_laplacian(F, 1, 0.0, 0.0)
    assert np.allclose(PL.matrix, PL.up_part + PL.down_part, atol=1e-12)
