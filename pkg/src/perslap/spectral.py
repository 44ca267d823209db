"""Dense symmetric-matrix kernels: eigen, pseudo-inverse, column reduction, Schur.

Everything here works on plain numpy arrays. Matrices are symmetrized on
entry, eigenvalues come back sorted ascending, and all rank and zero
decisions use relative thresholds so the kernels behave the same across
scalings of the input.
"""

from dataclasses import dataclass

import numpy as np

RANK_TOL = 1e-10
CLUSTER_TOL = 1e-8
ZERO_COL_TOL = 1e-10


def symmetrize(M):
    """Return (M + M^T)/2 as a float array after a finiteness check."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("expected a square matrix, got shape %r" % (M.shape,))
    if M.size and not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return (M + M.T) / 2.0


@dataclass
class EigenDecomposition:
    eigenvalues: np.ndarray    # ascending
    eigenvectors: np.ndarray   # orthonormal columns, M v_i = lambda_i v_i
    cluster_tol: float = CLUSTER_TOL

    def clusters(self):
        """Index ranges [start, end) of eigenvalues grouped within cluster_tol.

        The gap threshold is relative to max(1, |lambda|_max) so clustering is
        stable for both tiny and large spectra.
        """
        lam = self.eigenvalues
        n = len(lam)
        if n == 0:
            return []
        scale = max(1.0, float(np.max(np.abs(lam))))
        out = []
        start = 0
        for i in range(1, n + 1):
            if i == n or lam[i] - lam[i - 1] > self.cluster_tol * scale:
                out.append((start, i))
                start = i
        return out


def sym_eigen(M, cluster_tol=CLUSTER_TOL):
    """Full eigendecomposition of a symmetric matrix, eigenvalues ascending."""
    M = symmetrize(M)
    if M.shape[0] == 0:
        return EigenDecomposition(np.zeros(0), np.zeros((0, 0)), cluster_tol)
    lam, V = np.linalg.eigh(M)
    return EigenDecomposition(lam, V, cluster_tol)


def pseudo_inverse(M, rank_tol=RANK_TOL):
    """Moore-Penrose pseudo-inverse through the eigendecomposition.

    Eigenvalues with |lambda| <= rank_tol * max|lambda| are treated as zero.
    """
    dec = sym_eigen(M)
    lam, V = dec.eigenvalues, dec.eigenvectors
    if len(lam) == 0:
        return np.zeros((0, 0))
    cut = rank_tol * float(np.max(np.abs(lam)))
    inv = np.zeros_like(lam)
    big = np.abs(lam) > cut
    inv[big] = 1.0 / lam[big]
    return symmetrize((V * inv) @ V.T)


def column_reduce(M):
    """Column-echelon reduction R = M Y by elementary column operations.

    Returns (R, Y, zero_cols) where Y is invertible (built from column
    additions only, so det Y = 1) and zero_cols lists the columns of R that
    are numerically zero, i.e. max |entry| <= 1e-10 * max |M|. Pivots are
    chosen per row by largest absolute entry, ties broken by the lowest
    column index.
    """
    M = np.asarray(M, dtype=float)
    m, n = M.shape
    R = M.copy()
    Y = np.eye(n)
    tol = ZERO_COL_TOL * (np.max(np.abs(M)) if M.size else 0.0)
    available = list(range(n))
    for row in range(m):
        if not available:
            break
        vals = np.abs(R[row, available])
        k = int(np.argmax(vals))   # argmax takes the first max: lowest index wins ties
        if vals[k] <= tol:
            continue
        piv = available.pop(k)
        for j in available:
            factor = R[row, j] / R[row, piv]
            if factor != 0.0:
                R[:, j] -= factor * R[:, piv]
                Y[:, j] -= factor * Y[:, piv]
    zero_cols = [j for j in range(n)
                 if (np.max(np.abs(R[:, j])) if m else 0.0) <= tol]
    return R, Y, zero_cols


def schur_complement(M, keep, rank_tol=RANK_TOL):
    """Schur complement of M onto the kept index set.

    With A = M[keep, keep], B = M[keep, drop], D = M[drop, drop] this returns
    A - B D^+ B^T, the Kron reduction eliminating the dropped indices.
    """
    M = symmetrize(M)
    n = M.shape[0]
    keep = sorted(keep)
    if any(i < 0 or i >= n for i in keep):
        raise ValueError("keep indices out of range")
    drop = [i for i in range(n) if i not in set(keep)]
    if not drop:
        return M
    A = M[np.ix_(keep, keep)]
    B = M[np.ix_(keep, drop)]
    D = M[np.ix_(drop, drop)]
    return symmetrize(A - B @ pseudo_inverse(D, rank_tol) @ B.T)
