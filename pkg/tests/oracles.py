"""Independent reference computations the tests compare against.

Nothing in here touches the Laplacian machinery: Betti numbers come from
exact rational ranks of boundary matrices, matching distances from full
enumeration of partial matchings, and pixel integrals from adaptive
quadrature. Slow and exact on purpose.
"""

import itertools
import math
from fractions import Fraction

import numpy as np
from scipy.integrate import dblquad

from perslap import boundary_matrix, complex_at


def rational_rank(M):
    """Rank of a matrix with integer entries, by exact Gaussian elimination
    over the rationals."""
    rows = [[Fraction(int(round(x))) for x in row] for row in np.asarray(M)]
    if not rows or not rows[0]:
        return 0
    rank = 0
    for col in range(len(rows[0])):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0),
                     None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                f = rows[r][col] / lead
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def betti_rank_oracle(F, q, s, t):
    """Persistent Betti number of the pair K_s into K_t.

    dim ker(boundary on K_s) minus the dimension of the part that becomes
    a boundary in K_t, computed from three exact ranks: with E the basis
    inclusion of q-chains,
        beta = rank [E | B_{q+1}(K_t)] - rank B_q(K_s) - rank B_{q+1}(K_t).
    """
    Ks = complex_at(F, s)
    Kt = complex_at(F, t)
    ns = Ks.n(q)
    if ns == 0:
        return 0
    E = np.zeros((Kt.n(q), ns), dtype=int)
    for j, sim in enumerate(Ks.simplices(q)):
        E[Kt.index_of(sim), j] = 1
    Bt = boundary_matrix(Kt, q + 1).entries
    Bs = boundary_matrix(Ks, q).entries
    joint = np.hstack([E, Bt.astype(int)])
    return rational_rank(joint) - rational_rank(Bs) - rational_rank(Bt)


def _match_cost(u, v):
    db = abs(u[0] - v[0])
    if math.isinf(u[1]) and math.isinf(v[1]):
        return db
    if math.isinf(u[1]) or math.isinf(v[1]):
        return math.inf
    return max(db, abs(u[1] - v[1]))


def _diag(u):
    return math.inf if math.isinf(u[1]) else (u[1] - u[0]) / 2.0


def brute_distance(P1, P2, p):
    """Optimal partial matching by exhaustion; feasible only for tiny
    diagrams. p = inf gives the bottleneck value."""
    n1, n2 = len(P1), len(P2)
    best = math.inf
    for k in range(min(n1, n2) + 1):
        for chosen in itertools.combinations(range(n1), k):
            for image in itertools.permutations(range(n2), k):
                costs = [_match_cost(P1[i], P2[j])
                         for i, j in zip(chosen, image)]
                costs += [_diag(P1[i]) for i in range(n1) if i not in chosen]
                costs += [_diag(P2[j]) for j in range(n2) if j not in image]
                if math.isinf(p):
                    val = max(costs) if costs else 0.0
                elif any(math.isinf(c) for c in costs):
                    val = math.inf
                else:
                    val = sum(c ** p for c in costs) ** (1.0 / p)
                best = min(best, val)
    return best


def pixel_mass_quadrature(cx, cy, amp, sigma, px0, px1, py0, py1):
    """Integral of the amp-scaled Gaussian over one pixel, by adaptive
    quadrature."""
    norm = amp / (2.0 * math.pi * sigma * sigma)
    two_s2 = 2.0 * sigma * sigma

    def f(y, x):
        return norm * math.exp(-((x - cx) ** 2 + (y - cy) ** 2) / two_s2)

    val, _ = dblquad(f, px0, px1, py0, py1, epsabs=1e-13, epsrel=1e-12)
    return val
