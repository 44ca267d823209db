import math

import numpy as np
import pytest

from perslap import (SignatureSpec, PLDiagram, s_gap, s_ent, s_geo,
                     apply_signature, build_pld, pld_wasserstein,
                     geo_sweep, pld_to_csv, pld_from_csv,
                     build_complex, sublevel_filtration, degree_filtration,
                     combinatorial_laplacian)
from perslap.cli import builtin


def test_spec_validation():
    with pytest.raises(ValueError, match="unknown signature"):
        SignatureSpec(kind="nope")
    with pytest.raises(ValueError, match="nonzero reference"):
        SignatureSpec(kind="geo")
    with pytest.raises(ValueError, match="p must be"):
        SignatureSpec(kind="geo", v=np.ones(3), p=0.5)
    with pytest.raises(ValueError, match="unknown geo mode"):
        SignatureSpec(kind="geo", v=np.ones(3), geo_mode="other")


def test_gap_values():
    assert s_gap(np.diag([0.0, 2.0, 5.0])) == pytest.approx(2.0)
    assert s_gap(np.array([[7.0]])) == pytest.approx(7.0)
    with pytest.raises(ValueError):
        s_gap(np.zeros((0, 0)))


def test_gap_path_graph():
    K = build_complex([(0, 1), (1, 2)])
    assert s_gap(combinatorial_laplacian(K, 0)) == pytest.approx(1.0)


def test_entropy_values():
    # two equal eigenvalues: uniform distribution over 2 of 3 states
    M = np.diag([0.0, 2.0, 2.0])
    assert s_ent(M) == pytest.approx(math.log(2.0))
    assert s_ent(np.zeros((3, 3))) == pytest.approx(math.log(3.0))
    assert s_ent(np.eye(4)) == pytest.approx(math.log(4.0))
    with pytest.raises(ValueError, match="negative"):
        s_ent(np.diag([-1.0, 1.0]))


def test_geo_identity_example():
    assert s_geo(np.eye(3), np.array([1.0, 0.0, 0.0])) == pytest.approx(1.0)


def test_geo_kernel_vector_contributes_literally():
    # v spans the kernel; the kernel eigenspace contributes ||v||_p even
    # though one might expect zero
    M = np.diag([0.0, 1.0, 2.0])
    v = np.array([1.0, 0.0, 0.0])
    assert s_geo(M, v, p=2.0) == pytest.approx(1.0)


def test_geo_rook_vertex_transitivity():
    L = combinatorial_laplacian(builtin("rook")[1], 0)
    e1 = np.zeros(16)
    e1[0] = 1.0
    expect = 0.25 + math.sqrt(6.0 / 16.0) + math.sqrt(9.0 / 16.0)
    assert s_geo(L, e1, p=2.0) == pytest.approx(expect, abs=1e-8)


def test_geo_invariant_under_relabeling():
    rng = np.random.default_rng(3)
    A = rng.normal(size=(6, 6))
    M = A + A.T
    v = rng.normal(size=6)
    perm = rng.permutation(6)
    P = np.eye(6)[perm]
    for mode in ("distinct_eigenspaces", "multiplicity_weighted"):
        a = s_geo(M, v, 2.0, mode)
        b = s_geo(P @ M @ P.T, P @ v, 2.0, mode)
        assert a == pytest.approx(b, abs=1e-8)


def test_geo_basis_invariance_in_degenerate_cluster():
    # eigenvalue 1 has a 3-dim eigenspace; whatever basis eigh picks inside
    # it, the projection norm must be that of the full eigenspace projector
    rng = np.random.default_rng(4)
    Q, _ = np.linalg.qr(rng.normal(size=(5, 5)))
    M = Q @ np.diag([0.0, 1.0, 1.0, 1.0, 4.0]) @ Q.T
    v = rng.normal(size=5)
    P = Q[:, 1:4] @ Q[:, 1:4].T
    expect = (np.linalg.norm(Q[:, 0] @ v * Q[:, 0])
              + np.linalg.norm(P @ v)
              + np.linalg.norm(Q[:, 4] @ v * Q[:, 4]))
    assert s_geo(M, v, 2.0) == pytest.approx(expect, abs=1e-8)


def test_geo_dimension_mismatch():
    with pytest.raises(ValueError, match="length"):
        s_geo(np.eye(3), np.ones(4))
    with pytest.raises(ValueError, match="nonzero"):
        s_geo(np.eye(3), np.zeros(3))


def test_apply_signature_dispatch():
    M = np.diag([0.0, 3.0])
    assert apply_signature(SignatureSpec(kind="gap"), M) == pytest.approx(3.0)
    assert apply_signature(SignatureSpec(kind="entropy"), M) == pytest.approx(0.0)
    spec = SignatureSpec(kind="geo", v=np.array([1.0, 1.0]))
    assert apply_signature(spec, M) == pytest.approx(2.0)


def test_geo_sweep_reports_both_modes():
    rows = geo_sweep(np.diag([0.0, 1.0]), np.diag([0.0, 2.0]),
                     np.array([1.0, 0.0]), ps=(2.0,))
    assert len(rows) == 2
    assert {r["mode"] for r in rows} == {"distinct_eigenspaces",
                                         "multiplicity_weighted"}


def _toy_filtration():
    K = build_complex([(0, 1), (1, 2), (0, 2)])
    vals = {(0,): 0.0, (1,): 0.0, (2,): 0.0,
            (0, 1): 0.0, (1, 2): 1.0, (0, 2): 2.0}
    return sublevel_filtration(K, vals)


def test_build_pld_grid_modes():
    F = _toy_filtration()
    spec = SignatureSpec(kind="gap")
    # per_q for q=0: births {0}, deaths {1}, plus inf cells
    C = build_pld(F, 0, spec, mode="per_q")
    assert set(C.cells) == {(0.0, 1.0), (0.0, math.inf), (1.0, math.inf)}
    assert C.births == (0.0,)
    assert C.deaths == (1.0,)
    # pooled adds the q=1 birth level 2
    Cp = build_pld(F, 0, spec, mode="pooled")
    assert set(Cp.cells) == {(0.0, 1.0), (0.0, 2.0), (0.0, math.inf),
                             (1.0, 2.0), (1.0, math.inf), (2.0, math.inf)}
    with pytest.raises(ValueError, match="grid mode"):
        build_pld(F, 0, spec, mode="bogus")


def test_build_pld_values_against_direct_evaluation():
    from perslap import persistent_laplacian
    F = _toy_filtration()
    spec = SignatureSpec(kind="entropy")
    C = build_pld(F, 0, spec, mode="per_q")
    for (b, d), val in C.cells.items():
        M = persistent_laplacian(F, 0, b, d).matrix
        assert val == pytest.approx(s_ent(M), abs=1e-12)


def test_build_pld_empty_levels_value_zero():
    # grid level below every q-simplex: the cell value defaults to 0
    K = build_complex([(0, 1)])
    vals = {(0,): 1.0, (1,): 1.0, (0, 1): 2.0}
    F = sublevel_filtration(K, vals)
    spec = SignatureSpec(kind="gap")
    C = build_pld(F, 1, spec, mode="pooled")
    # no q=1 classes at level 1
    assert C.cells[(1.0, 2.0)] == 0.0


def test_pld_determinism():
    F = degree_filtration(builtin("G")[1])
    spec = SignatureSpec(kind="gap")
    C1 = build_pld(F, 0, spec)
    C2 = build_pld(F, 0, spec)
    assert C1.cells == C2.cells  # bit-for-bit


def test_pld_wasserstein_is_coordinate_only():
    C1 = PLDiagram(q=0, cells={(1.0, 3.0): 5.0}, signature="gap")
    C2 = PLDiagram(q=0, cells={(1.0, 3.0): -2.0}, signature="gap")
    assert pld_wasserstein(C1, C2, 1) == 0.0
    C3 = PLDiagram(q=0, cells={(1.0, 4.0): 0.0}, signature="gap")
    assert pld_wasserstein(C1, C3, 1) == pytest.approx(1.0)


def test_pld_csv_round_trip(tmp_path):
    F = _toy_filtration()
    C = build_pld(F, 0, SignatureSpec(kind="gap"), mode="pooled")
    path = str(tmp_path / "pld.csv")
    pld_to_csv(C, path)
    back = pld_from_csv(path)
    assert len(back) == 1
    assert back[0].q == 0
    assert back[0].signature == "gap"
    assert back[0].cells == C.cells
