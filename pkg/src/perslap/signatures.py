"""Spectral signatures of symmetric matrices and persistent Laplacian diagrams.

A signature maps a symmetric matrix to one real number. Three are provided:
the second smallest eigenvalue (gap), the entropy of the normalized
spectrum, and the eigenspace projection profile of a reference vector.
A persistent Laplacian diagram (PLD) evaluates one signature on the
persistent Laplacian of every level pair drawn from the diagram's birth
and death levels.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .filtration import complex_at
from .persistence import persistence_diagram, wasserstein
from .plaplacian import persistent_laplacian
from .spectral import sym_eigen, CLUSTER_TOL

_ASSERT_SLACK = 1e-8


@dataclass
class SignatureSpec:
    kind: str                      # "gap" | "entropy" | "geo"
    p: float = 2.0                 # geo only
    v: np.ndarray = None           # geo only; reference vector
    geo_mode: str = "distinct_eigenspaces"

    def __post_init__(self):
        if self.kind not in ("gap", "entropy", "geo"):
            raise ValueError("unknown signature kind %r" % (self.kind,))
        if self.geo_mode not in ("distinct_eigenspaces", "multiplicity_weighted"):
            raise ValueError("unknown geo mode %r" % (self.geo_mode,))
        if self.kind == "geo":
            if self.v is None or not np.linalg.norm(self.v) > 0:
                raise ValueError("geo signature needs a nonzero reference vector")
            if self.p < 1:
                raise ValueError("p must be >= 1")


def s_gap(M):
    """Second smallest eigenvalue; on a 1x1 matrix, its sole eigenvalue."""
    dec = sym_eigen(M)
    lam = dec.eigenvalues
    if len(lam) == 0:
        raise ValueError("empty matrix has no spectral gap")
    val = float(lam[0]) if len(lam) == 1 else float(lam[1])
    diag_max = float(np.max(np.diag(np.asarray(M, dtype=float))))
    assert val <= 2.0 * max(diag_max, 0.0) + _ASSERT_SLACK, \
        "gap signature exceeded its admissibility bound"
    return val


def s_ent(M):
    """Entropy of the eigenvalue distribution; all-zero spectra count as
    uniform, so the zero matrix returns log N."""
    lam = sym_eigen(M).eigenvalues.copy()
    N = len(lam)
    if N == 0:
        raise ValueError("empty matrix has no spectral entropy")
    if lam[0] < -1e-6:
        raise ValueError("matrix is not positive semi-definite: lambda_min = %g" % lam[0])
    lam[lam < 0] = 0.0
    total = float(lam.sum())
    if total == 0.0:
        return math.log(N)
    probs = lam / total
    ent = float(-(probs[probs > 0] * np.log(probs[probs > 0])).sum())
    assert ent <= math.log(N) + _ASSERT_SLACK, \
        "entropy signature exceeded log N"
    return ent


def s_geo(M, v, p=2.0, mode="distinct_eigenspaces", cluster_tol=CLUSTER_TOL):
    """Sum over eigenspaces of the p-norm of the projection of v.

    Eigenvalues are grouped into numerical eigenspaces first, so the result
    does not depend on the arbitrary eigenvector basis inside a degenerate
    cluster. The multiplicity_weighted mode counts each eigenspace by its
    dimension instead of once.
    """
    v = np.asarray(v, dtype=float)
    dec = sym_eigen(M, cluster_tol)
    N = len(dec.eigenvalues)
    if v.shape != (N,):
        raise ValueError("reference vector has length %d, matrix is %dx%d"
                         % (v.size, N, N))
    if not np.linalg.norm(v) > 0:
        raise ValueError("reference vector must be nonzero")
    total = 0.0
    for (a, b) in dec.clusters():
        U = dec.eigenvectors[:, a:b]
        proj = U @ (U.T @ v)
        term = float(np.sum(np.abs(proj) ** p) ** (1.0 / p))
        if mode == "multiplicity_weighted":
            term *= (b - a)
        total += term
    # Per-size admissibility bound. Weighting each eigenspace by its
    # dimension can push the sum past N * ||v||_p (each of the up-to-N
    # dimension counts multiplies a term that is itself only bounded by
    # N * ||v||_p in low p), so that mode gets the extra factor of N.
    bound = N * float(np.sum(np.abs(v) ** p) ** (1.0 / p))
    if mode == "multiplicity_weighted":
        bound *= N
    assert total <= bound + _ASSERT_SLACK, \
        "geo signature exceeded its admissibility bound"
    return total


def apply_signature(spec, M):
    if spec.kind == "gap":
        return s_gap(M)
    if spec.kind == "entropy":
        return s_ent(M)
    return s_geo(M, spec.v, spec.p, spec.geo_mode)


# ---------------------------------------------------------------------------
# persistent Laplacian diagrams

@dataclass
class PLDiagram:
    q: int
    cells: dict                    # (b, d) -> signature value, d may be inf
    births: tuple = ()
    deaths: tuple = ()
    signature: str = ""

    def sorted_cells(self):
        return sorted(self.cells.items())


def pld_levels(F, q, mode="pooled"):
    """Grid levels for a PLD: birth and finite death levels of the q-diagram,
    or of all diagrams when pooling, plus a flag for infinite deaths."""
    if mode == "per_q":
        qs = [q]
    elif mode == "pooled":
        qs = list(range(F.final_complex.dim + 1))
    else:
        raise ValueError("unknown PLD grid mode %r" % (mode,))
    levels = set()
    has_inf = False
    for qq in qs:
        D = persistence_diagram(F, qq)
        for b, d, _ in D.points:
            levels.add(b)
            if math.isinf(d):
                has_inf = True
            else:
                levels.add(d)
    return sorted(levels), has_inf


def build_pld(F, q, spec, mode="pooled"):
    """Evaluate a signature on the persistent Laplacian of every grid cell.

    Cells are the pairs (b, d) with d > b drawn from the grid levels, plus
    (b, inf) for every level when some class never dies. Cells whose smaller
    complex has no q-simplices carry the value 0.
    """
    levels, has_inf = pld_levels(F, q, mode)
    pairs = [(b, d) for i, b in enumerate(levels) for d in levels[i + 1:]]
    if has_inf:
        pairs.extend((b, math.inf) for b in levels)
    cells = {}
    for (b, d) in sorted(pairs):
        if complex_at(F, b).n(q) == 0:
            cells[(b, d)] = 0.0
        else:
            cells[(b, d)] = float(apply_signature(spec, persistent_laplacian(F, q, b, d).matrix))
    D = persistence_diagram(F, q)
    births = tuple(sorted({b for b, _, _ in D.points}))
    deaths = tuple(sorted({d for _, d, _ in D.points if not math.isinf(d)}))
    return PLDiagram(q=q, cells=cells, births=births, deaths=deaths,
                     signature=spec.kind)


def pld_wasserstein(C1, C2, p):
    """Wasserstein distance between the cell coordinate sets of two PLDs;
    the signature values do not enter the cost."""
    return wasserstein(C1, C2, p)


def geo_sweep(M1, M2, v, ps=(1.0, 2.0, 3.0), tol=1e-6):
    """Evaluate the projection-profile signature on two matrices across both
    modes and several p, reporting which settings separate them."""
    rows = []
    for mode in ("distinct_eigenspaces", "multiplicity_weighted"):
        for p in ps:
            a = s_geo(M1, v, p, mode)
            b = s_geo(M2, v, p, mode)
            rows.append({
                "mode": mode,
                "p": p,
                "value_1": a,
                "value_2": b,
                "separates": bool(abs(a - b) > tol),
            })
    return rows


def pld_to_csv(C, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["q", "birth", "death", "signature", "value"])
        for (b, d), val in C.sorted_cells():
            w.writerow([C.q, repr(b), "inf" if math.isinf(d) else repr(d),
                        C.signature, repr(val)])


def pld_from_csv(path):
    """Read PLD CSVs back, one PLDiagram per (q, signature) pair found."""
    groups = {}
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        next(r, None)
        for line in r:
            if not line:
                continue
            q, b, sig, val = int(line[0]), float(line[1]), line[3], float(line[4])
            d = math.inf if line[2].strip() in ("inf", "Infinity") else float(line[2])
            groups.setdefault((q, sig), {})[(b, d)] = val
    return [PLDiagram(q=q, cells=cells, signature=sig)
            for (q, sig), cells in sorted(groups.items())]
