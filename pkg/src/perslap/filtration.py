"""Filtrations: nested families of subcomplexes indexed by real levels.

A filtration is stored as its final complex together with one real value per
simplex; the complex at level t collects every simplex with value <= t. The
index set T is the sorted list of values actually attained, so the discrete
multiplicity formula for persistence applies directly.
"""

import itertools
import math

import numpy as np

from .complex import SimplicialComplex, facets


class Filtration:
    """Sublevel filtration of a weighted simplicial complex.

    Attributes
    ----------
    final_complex : SimplicialComplex, the union of all levels
    values : dict simplex -> float, monotone under taking faces
    index_set : sorted tuple of distinct attained values
    repair_count : number of values raised to restore monotonicity
    """

    def __init__(self, final_complex, values, repair_count=0):
        self.final_complex = final_complex
        self.values = dict(values)
        for s in final_complex.all_simplices():
            if s not in self.values:
                raise ValueError("no filtration value for simplex %r" % (s,))
        self.index_set = tuple(sorted(set(self.values.values())))
        self.repair_count = repair_count

    def predecessor(self, t):
        """Largest index value strictly below t, or None."""
        prev = None
        for tau in self.index_set:
            if tau < t:
                prev = tau
            else:
                break
        return prev

    def __repr__(self):
        return "Filtration(levels=%r, %r)" % (list(self.index_set), self.final_complex)


def sublevel_filtration(K, f):
    """Filtration of K by the function f, repaired to be monotone.

    f may be a dict or a callable on simplices. Whenever a simplex value is
    below the value of one of its faces it is raised to the max over faces;
    the number of raised values is reported on the result, not rejected.
    """
    if callable(f):
        raw = {s: float(f(s)) for s in K.all_simplices()}
    else:
        raw = {s: float(f[s]) for s in K.all_simplices()}
    values = {}
    repairs = 0
    for q in range(K.dim + 1):
        for s in K.simplices(q):
            v = raw[s]
            if q > 0:
                face_max = max(values[t] for t in facets(s))
                if face_max > v:
                    v = face_max
                    repairs += 1
            values[s] = v
    return Filtration(K, values, repair_count=repairs)


def degree_filtration(graph):
    """Degree filtration of a graph: vertices enter at their degree.

    Vertex value is the degree in the full graph; an edge enters once both
    endpoints are present, i.e. at the max of the endpoint degrees, which
    realizes the subgraph induced by the vertices of degree <= t.
    """
    if graph.dim > 1:
        raise ValueError("degree filtration needs a graph, got dimension %d" % graph.dim)
    deg = {v: 0 for v in graph.vertices}
    for (u, v) in graph.simplices(1):
        deg[u] += 1
        deg[v] += 1

    def f(s):
        return max(deg[v] for v in s)

    return sublevel_filtration(graph, f)


def vietoris_rips(points, max_dim, eps_values=None, metric=None):
    """Vietoris-Rips filtration of a finite point set.

    The value of a simplex is its diameter, the largest pairwise distance
    among its vertices. If eps_values is given every value is snapped up to
    the smallest grid value at or above it and simplices beyond the last
    grid value are left out.
    """
    pts = [np.asarray(p, dtype=float) for p in points]
    if not pts:
        raise ValueError("empty point set")
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    if metric is None:
        metric = lambda a, b: float(np.linalg.norm(a - b))
    n = len(pts)
    dist = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            dist[i, j] = dist[j, i] = metric(pts[i], pts[j])

    eps = sorted(eps_values) if eps_values is not None else None

    def snap(v):
        if eps is None:
            return v
        for e in eps:
            if v <= e:
                return float(e)
        return None  # beyond the grid

    simplices = []
    values = {}
    for k in range(1, max_dim + 2):
        for comb in itertools.combinations(range(n), k):
            diam = max((dist[i, j] for i, j in itertools.combinations(comb, 2)), default=0.0)
            val = snap(diam)
            if val is None:
                continue
            simplices.append(comb)
            values[comb] = val
    K = SimplicialComplex(simplices)
    return sublevel_filtration(K, values)


def complex_at(F, t):
    """Subcomplex of the final complex at level t (inclusive).

    t may be any real, or +-inf; +inf returns the final complex and anything
    below min(T) the empty complex. Weights are inherited.
    """
    if t == math.inf:
        return F.final_complex
    keep = [s for s in F.final_complex.all_simplices() if F.values[s] <= t]
    weights = {s: F.final_complex.weights[s] for s in keep}
    return SimplicialComplex(keep, weights)
