"""Small dense real linear algebra.

Everything here works on plain 2-D ``numpy`` float arrays. Problem sizes are
tiny (a few hundred rows at most), so the SVD is a straightforward one-sided
Jacobi iteration rather than a call into LAPACK.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch

MACHINE_EPS = 2.22e-16
JACOBI_TOL = 1e-14
MAX_SWEEPS = 60


@dataclass(frozen=True)
class SVDResult:
    """Full SVD ``g = u @ diag(sigma) @ v.T`` with square orthogonal factors."""

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray
    sweeps: int = 0

    def diag(self):
        """Return the rectangular ``m x n`` matrix of singular values."""
        m, n = self.u.shape[0], self.v.shape[0]
        out = np.zeros((m, n))
        k = len(self.sigma)
        out[np.arange(k), np.arange(k)] = self.sigma
        return out

    def reconstruct(self):
        return self.u @ self.diag() @ self.v.T


def as_matrix(g):
    g = np.array(g, dtype=float)
    if g.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise ValueError("matrix has non-finite entries")
    return g


def default_rtol(shape):
    """Relative singular-value cutoff ``max(m, n) * eps``."""
    return max(shape) * MACHINE_EPS


def _complete_basis(cols, dim):
    """Extend orthonormal columns ``cols`` (dim x k) to a dim x dim orthogonal matrix."""
    basis = cols
    while basis.shape[1] < dim:
        # project every unit vector off the current basis (twice, for stability)
        r = np.eye(dim)
        for _ in range(2):
            r -= basis @ (basis.T @ r)
        norms = np.linalg.norm(r, axis=0)
        j = int(np.argmax(norms))
        basis = np.column_stack([basis, r[:, j] / norms[j]])
    return basis


def _jacobi_tall(g, max_sweeps):
    # one-sided Jacobi on the columns of g (m >= n); rows of w are columns of g
    m, n = g.shape
    w = g.T.copy()
    vt = np.eye(n)
    tol = max(JACOBI_TOL, m * MACHINE_EPS)
    tiny = np.finfo(float).tiny

    sweeps = 0
    while True:
        if sweeps >= max_sweeps:
            raise ConvergenceFailure(f"Jacobi SVD did not converge in {max_sweeps} sweeps")
        sweeps += 1
        norms = np.einsum("ij,ij->i", w, w)
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha, beta = norms[i], norms[j]
                if alpha <= tiny or beta <= tiny:
                    continue
                gamma = w[i] @ w[j]
                if abs(gamma) <= tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                wi, wj = w[i].copy(), w[j]
                w[i] = c * wi - s * wj
                w[j] = s * wi + c * wj
                vi, vj = vt[i].copy(), vt[j]
                vt[i] = c * vi - s * vj
                vt[j] = s * vi + c * vj
                norms[i] = alpha - t * gamma
                norms[j] = beta + t * gamma
        if not rotated:
            break

    sigma = np.sqrt(np.einsum("ij,ij->i", w, w))
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    w = w[order]
    v = vt[order].T

    cutoff = default_rtol(g.shape) * (sigma[0] if n else 0.0)
    keep = sigma > cutoff
    u_cols = (w[keep] / sigma[keep, None]).T if keep.any() else np.zeros((m, 0))
    u = _complete_basis(u_cols, m)
    return u, sigma, v, sweeps


def svd(g, max_sweeps=MAX_SWEEPS):
    """Full singular value decomposition by cyclic one-sided Jacobi sweeps.

    Returns an :class:`SVDResult` whose ``sigma`` is sorted nonincreasing and
    has length ``min(m, n)``. Raises :class:`ConvergenceFailure` if a sweep
    still performs rotations after ``max_sweeps`` passes.
    """
    g = as_matrix(g)
    m, n = g.shape
    if m >= n:
        u, sigma, v, sweeps = _jacobi_tall(g, max_sweeps)
    else:
        v, sigma, u, sweeps = _jacobi_tall(g.T, max_sweeps)
    return SVDResult(u=u, sigma=sigma, v=v, sweeps=sweeps)


def _cutoff(sigma, shape, tol):
    rtol = default_rtol(shape) if tol is None else tol
    smax = sigma[0] if len(sigma) else 0.0
    return rtol * smax


def pinv(g, tol=None, decomposition=None):
    """Moore-Penrose pseudoinverse ``V Sigma^+ U^T``.

    Singular values ``<= tol * sigma_max`` are treated as zero; ``tol``
    defaults to ``max(m, n) * eps``. A precomputed ``decomposition`` of ``g``
    may be passed to skip the SVD.
    """
    g = as_matrix(g)
    d = decomposition if decomposition is not None else svd(g)
    cut = _cutoff(d.sigma, g.shape, tol)
    k = int(np.count_nonzero(d.sigma > cut))
    if k == 0:
        return np.zeros((g.shape[1], g.shape[0]))
    return (d.v[:, :k] / d.sigma[:k]) @ d.u[:, :k].T


def numerical_rank(g, tol=None, decomposition=None):
    """Number of singular values above ``tol * sigma_max`` (0 for a zero matrix)."""
    g = as_matrix(g)
    if g.size == 0:
        return 0
    d = decomposition if decomposition is not None else svd(g)
    if len(d.sigma) == 0 or d.sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(d.sigma > _cutoff(d.sigma, g.shape, tol)))


def kron(a, b):
    """Kronecker product: block ``(i, k)`` of the result is ``a[i, k] * b``."""
    a, b = as_matrix(a), as_matrix(b)
    m, n = a.shape
    p, q = b.shape
    out = np.empty((m * p, n * q))
    for i in range(m):
        for k in range(n):
            out[i * p:(i + 1) * p, k * q:(k + 1) * q] = a[i, k] * b
    return out


def vec_t(q):
    """``Vec(Q^T)``: the entries of ``q`` read row by row."""
    q = np.asarray(q, dtype=float)
    if q.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {q.shape}")
    return q.reshape(-1).copy()


def reshape_t(v, rows, cols):
    """Inverse of :func:`vec_t`."""
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.size != rows * cols:
        raise DimensionMismatch(f"cannot reshape length {v.size} into {rows}x{cols}")
    return v.reshape(rows, cols).copy()
