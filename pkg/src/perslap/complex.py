"""Finite weighted simplicial complexes with a canonical simplex ordering.

A simplex is a strictly increasing tuple of non-negative integer vertex
labels; a q-simplex has q+1 vertices. Within each dimension simplices are
kept in lexicographic order, which fixes the basis of every chain group
once and for all. Weights are strictly positive reals attached to every
simplex (default 1).
"""

import itertools
from dataclasses import dataclass

import numpy as np


def _as_simplex(vertices):
    """Normalize an iterable of vertex labels into a canonical simplex tuple."""
    vs = [int(v) for v in vertices]
    s = tuple(sorted(set(vs)))
    if len(s) != len(vs):
        raise ValueError("repeated vertex in simplex %r" % (vs,))
    if not s:
        raise ValueError("empty simplex")
    if s[0] < 0:
        raise ValueError("vertex labels must be non-negative, got %r" % (s,))
    return s


def faces(simplex):
    """All proper and improper faces of a simplex, the simplex included."""
    out = []
    for k in range(1, len(simplex) + 1):
        out.extend(itertools.combinations(simplex, k))
    return out


def facets(simplex):
    """Codimension-one faces in the order induced by vertex removal."""
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))]


class SimplicialComplex:
    """Immutable weighted simplicial complex.

    Parameters
    ----------
    simplices : iterable of vertex tuples, closed under taking faces
    weights : optional dict simplex -> positive float (missing entries get 1.0)
    """

    def __init__(self, simplices, weights=None):
        seen = set()
        by_dim = {}
        for s in simplices:
            s = _as_simplex(s)
            if s in seen:
                raise ValueError("duplicate simplex %r" % (s,))
            seen.add(s)
            by_dim.setdefault(len(s) - 1, []).append(s)
        for s in seen:
            for f in facets(s):
                if f and f not in seen:
                    raise ValueError("complex not closed: missing face %r of %r" % (f, s))
        self.simplices_by_dim = [sorted(by_dim.get(q, [])) for q in range(max(by_dim, default=-1) + 1)]
        self.vertices = tuple(v for (v,) in self.simplices_by_dim[0]) if self.simplices_by_dim else ()
        w = {}
        weights = weights or {}
        for s in seen:
            val = float(weights.get(s, 1.0))
            if not val > 0.0:
                raise ValueError("non-positive weight %g for simplex %r" % (val, s))
            w[s] = val
        extra = set(weights) - seen
        if extra:
            raise ValueError("weights given for simplices not in the complex: %r" % (sorted(extra),))
        self.weights = w
        self._index = [
            {s: j for j, s in enumerate(level)} for level in self.simplices_by_dim
        ]

    @property
    def dim(self):
        return len(self.simplices_by_dim) - 1

    def n(self, q):
        """Number of q-simplices."""
        if q < 0 or q > self.dim:
            return 0
        return len(self.simplices_by_dim[q])

    def simplices(self, q):
        if q < 0 or q > self.dim:
            return []
        return list(self.simplices_by_dim[q])

    def index_of(self, simplex):
        simplex = tuple(simplex)
        return self._index[len(simplex) - 1][simplex]

    def weight_vector(self, q):
        """Weights of the q-simplices in basis order."""
        return np.array([self.weights[s] for s in self.simplices(q)], dtype=float)

    def all_simplices(self):
        for level in self.simplices_by_dim:
            yield from level

    def __contains__(self, simplex):
        simplex = tuple(simplex)
        q = len(simplex) - 1
        return 0 <= q <= self.dim and simplex in self._index[q]

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (self.simplices_by_dim == other.simplices_by_dim
                and self.weights == other.weights)

    def __repr__(self):
        counts = ",".join(str(self.n(q)) for q in range(self.dim + 1))
        return "SimplicialComplex(n_q=[%s])" % counts


def build_complex(maximal_simplices, weight_fn=None):
    """Build the closure of the given simplices.

    weight_fn, when given, is called on every simplex of the closure and must
    return a positive number; otherwise all weights are 1.
    """
    closed = set()
    for s in maximal_simplices:
        s = _as_simplex(s)
        closed.update(faces(s))
    weights = None
    if weight_fn is not None:
        weights = {s: float(weight_fn(s)) for s in closed}
    return SimplicialComplex(sorted(closed), weights)


@dataclass
class BoundaryMatrix:
    """Dense matrix of the boundary operator from q-chains to (q-1)-chains."""
    entries: np.ndarray
    q: int
    row_simplices: list
    col_simplices: list


def boundary_matrix(K, q):
    """Boundary matrix of K in dimension q, shape n_{q-1} x n_q.

    The column of [v_0..v_q] holds (-1)^i at the row of the facet obtained by
    removing v_i. For q = 0 this is the empty 0 x n_0 matrix.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    cols = K.simplices(q)
    rows = K.simplices(q - 1) if q >= 1 else []
    B = np.zeros((len(rows), len(cols)))
    if q >= 1:
        row_index = {s: i for i, s in enumerate(rows)}
        for j, s in enumerate(cols):
            for i, f in enumerate(facets(s)):
                B[row_index[f], j] = (-1.0) ** i
    return BoundaryMatrix(entries=B, q=q, row_simplices=rows, col_simplices=cols)
