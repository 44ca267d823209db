"""Persistence diagrams from Laplacian kernels, and matching distances.

Betti numbers of filtration pairs are read off as kernel dimensions of the
persistent Laplacian, diagrams follow from the discrete multiplicity
formula over the finite index set, and diagram distances are exact optimal
matchings with diagonal augmentation.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .plaplacian import persistent_laplacian
from .spectral import sym_eigen

BETTI_TOL = 1e-8


@dataclass
class PersistenceDiagram:
    q: int
    points: tuple   # of (birth, death, multiplicity), death may be math.inf

    def expand(self):
        """Points repeated by multiplicity."""
        out = []
        for b, d, m in self.points:
            out.extend([(b, d)] * m)
        return out

    @property
    def total(self):
        return sum(m for _, _, m in self.points)


def _nullity(M, tol):
    if M.shape[0] == 0:
        return 0
    lam = sym_eigen(M).eigenvalues
    scale = max(1.0, float(lam[-1]))
    return int(np.sum(lam <= tol * scale))


def persistent_betti(F, q, s, t, rank_tol=BETTI_TOL):
    """Rank of the map H_q(K_s) -> H_q(K_t), as the kernel dimension of the
    persistent Laplacian of the pair."""
    return _nullity(persistent_laplacian(F, q, s, t).matrix, rank_tol)


def persistence_diagram(F, q, rank_tol=BETTI_TOL):
    """Diagram of birth-death pairs with multiplicities over the index set.

    With T the sorted attained values and b', d' the predecessors of b and d
    in T, the multiplicity of a finite pair (b, d) is
        (beta(b',d) - beta(b,d)) - (beta(b',d') - beta(b,d')),
    a birth index below min T contributing zero. Never-dying classes born at
    b get multiplicity beta(b,inf) - beta(b',inf). Only positive
    multiplicities are kept.
    """
    T = F.index_set
    cache = {}

    def beta(s, t):
        if s is None:
            return 0
        if (s, t) not in cache:
            cache[(s, t)] = persistent_betti(F, q, s, t, rank_tol)
        return cache[(s, t)]

    pts = []
    for i, b in enumerate(T):
        bp = T[i - 1] if i > 0 else None
        for j in range(i + 1, len(T)):
            d, dp = T[j], T[j - 1]
            mu = (beta(bp, d) - beta(b, d)) - (beta(bp, dp) - beta(b, dp))
            if mu > 0:
                pts.append((b, d, mu))
        mu = beta(b, math.inf) - beta(bp, math.inf)
        if mu > 0:
            pts.append((b, math.inf, mu))
    return PersistenceDiagram(q=q, points=tuple(pts))


# ---------------------------------------------------------------------------
# matching distances

def _points_of(D):
    """Flatten a diagram, a PLD, or a bare point iterable into (b, d) pairs."""
    if isinstance(D, PersistenceDiagram):
        return D.expand()
    cells = getattr(D, "cells", None)
    if cells is not None:
        return sorted(cells.keys())
    return [(float(b), float(d)) for b, d in D]


def _diag_dist(pt):
    return (pt[1] - pt[0]) / 2.0


def _inf_norm(u, v):
    db = abs(u[0] - v[0])
    if math.isinf(u[1]) and math.isinf(v[1]):
        return db
    if math.isinf(u[1]) or math.isinf(v[1]):
        return math.inf
    return max(db, abs(u[1] - v[1]))


def _split(pts):
    fin = [p for p in pts if not math.isinf(p[1])]
    inf = sorted(p[0] for p in pts if math.isinf(p[1]))
    return fin, inf


def wasserstein(D1, D2, p):
    """p-Wasserstein distance with diagonal augmentation.

    Cost of a matching is (sum ||u - gamma(u)||_inf^p)^(1/p); unmatched
    points pay their sup-distance to the diagonal, (d-b)/2. Points with
    infinite death can only be matched among themselves (the distance is
    +inf when the two diagrams carry different numbers of them).
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    fin1, inf1 = _split(_points_of(D1))
    fin2, inf2 = _split(_points_of(D2))
    if len(inf1) != len(inf2):
        return math.inf
    total = sum(abs(a - b) ** p for a, b in zip(inf1, inf2))
    m, n = len(fin1), len(fin2)
    if m + n:
        cost = _augmented_cost(fin1, fin2, p)
        rows, cols = linear_sum_assignment(cost)
        total += float(cost[rows, cols].sum())
    return total ** (1.0 / p)


def _augmented_cost(fin1, fin2, p):
    """persim-style (m+n) x (m+n) cost matrix with one diagonal partner per
    point; unusable slots are blocked with a large finite sentinel."""
    m, n = len(fin1), len(fin2)
    cost = np.zeros((m + n, m + n))
    for i, u in enumerate(fin1):
        for j, v in enumerate(fin2):
            cost[i, j] = _inf_norm(u, v) ** p
    diag1 = [_diag_dist(u) ** p for u in fin1]
    diag2 = [_diag_dist(v) ** p for v in fin2]
    big = (float(np.sum(cost[:m, :n])) + sum(diag1) + sum(diag2) + 1.0)
    cost[:m, n:] = big
    for i in range(m):
        cost[i, n + i] = diag1[i]
    cost[m:, :n] = big
    for j in range(n):
        cost[m + j, j] = diag2[j]
    cost[m:, n:] = 0.0
    return cost


def bottleneck(D1, D2):
    """Bottleneck distance: the smallest c so that all points match within
    sup-distance c, the diagonal absorbing leftovers."""
    fin1, inf1 = _split(_points_of(D1))
    fin2, inf2 = _split(_points_of(D2))
    if len(inf1) != len(inf2):
        return math.inf
    best_inf = max((abs(a - b) for a, b in zip(inf1, inf2)), default=0.0)
    m, n = len(fin1), len(fin2)
    if m + n == 0:
        return best_inf
    cands = {0.0}
    cands.update(_inf_norm(u, v) for u in fin1 for v in fin2)
    cands.update(_diag_dist(u) for u in fin1)
    cands.update(_diag_dist(v) for v in fin2)
    cands = sorted(c for c in cands if not math.isinf(c))
    lo, hi = 0, len(cands) - 1
    # the largest candidate is always feasible (everything to the diagonal
    # or any fixed matching); shrink by bisection
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(fin1, fin2, cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return max(best_inf, cands[lo])


def _feasible(fin1, fin2, c):
    m, n = len(fin1), len(fin2)
    eps = 1e-12 * max(1.0, c)
    rows = []
    cols = []
    for i, u in enumerate(fin1):
        for j, v in enumerate(fin2):
            if _inf_norm(u, v) <= c + eps:
                rows.append(i)
                cols.append(j)
        if _diag_dist(u) <= c + eps:
            rows.append(i)
            cols.append(n + i)
    for j, v in enumerate(fin2):
        if _diag_dist(v) <= c + eps:
            rows.append(m + j)
            cols.append(j)
    for j in range(n):
        for i in range(m):
            rows.append(m + j)
            cols.append(n + i)
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(m + n, m + n))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return int(np.sum(match >= 0)) == m + n


# ---------------------------------------------------------------------------
# CSV round trip

def diagram_to_csv(D, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["q", "birth", "death", "multiplicity"])
        for b, d, mult in D.points:
            w.writerow([D.q, repr(b), "inf" if math.isinf(d) else repr(d), mult])


def diagrams_from_csv(path):
    """Read a diagram CSV back, one PersistenceDiagram per q found."""
    by_q = {}
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r, None)
        for line in r:
            if not line:
                continue
            q, b, d, mult = int(line[0]), float(line[1]), line[2], int(line[3])
            d = math.inf if d.strip() in ("inf", "Infinity") else float(d)
            by_q.setdefault(q, []).append((b, d, mult))
    return [PersistenceDiagram(q=q, points=tuple(sorted(pts)))
            for q, pts in sorted(by_q.items())]
