"""Ground truth for tests, kept apart from the pseudoinverse/Farkas path.

:func:`feasibility_direct` asks the simplex phase 1 whether ``a_big @ q ==
c_vec`` has a nonnegative solution; it never forms a g-inverse. The grid
search and the random-instance generators need nothing beyond numpy.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import lp
from .errors import AlphabetTooLarge, DimensionMismatch
from .pmf import Channel, JointPMF

MAX_GRID_Z = 6


def feasibility_direct(system):
    problem = lp.LPProblem(cost=np.zeros(system.n), matrix=system.a_big, rhs=system.c_vec)
    return lp.solve(problem).status is lp.Status.OPTIMAL


@dataclass(frozen=True)
class GridSearchResult:
    best: Channel
    residual: float
    resolution: int

    @property
    def channel(self):
        """The best grid channel, or None when its residual exceeds ``1 / resolution``."""
        return self.best if self.residual <= 1.0 / self.resolution else None


def grid_search_channel(a, c, resolution):
    """Exhaustive search over channels whose first column lies on ``{0, 1/res, ..., 1}``.

    Only binary X is supported: row ``k`` of the channel is ``(p_k, 1 - p_k)``.
    Returns the grid channel minimizing ``max|a @ Q - c|``.
    """
    a = np.asarray(a, dtype=float)
    c = np.asarray(c, dtype=float)
    if c.ndim != 2 or c.shape[1] != 2 or a.shape[1] > MAX_GRID_Z:
        raise AlphabetTooLarge(f"grid search needs |X| = 2 and |Z| <= {MAX_GRID_Z}")
    if a.shape[0] != c.shape[0]:
        raise DimensionMismatch("a and c need the same number of rows")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    zsz = a.shape[1]
    levels = np.arange(resolution + 1) / resolution
    rowsum = a.sum(axis=1)

    # vectorize over the last (up to) two rows of Q, loop over the rest
    tail = min(zsz, 2)
    head = zsz - tail
    tail_grid = np.array(list(itertools.product(levels, repeat=tail)))  # (g, tail)
    tail_contrib = tail_grid @ a[:, head:].T  # (g, |Y|)

    best_res, best_p = np.inf, None
    for prefix in itertools.product(levels, repeat=head):
        partial = a[:, :head] @ np.array(prefix) if head else np.zeros(a.shape[0])
        first = partial[None, :] + tail_contrib
        # column 1 of A Q is A p; column 2 is rowsum(A) - A p
        res = np.maximum(np.abs(first - c[:, 0]).max(axis=1),
                         np.abs(rowsum - first - c[:, 1]).max(axis=1))
        i = int(np.argmin(res))
        if res[i] < best_res:
            best_res = float(res[i])
            best_p = np.concatenate([prefix, tail_grid[i]])
    q = np.column_stack([best_p, 1.0 - best_p])
    return GridSearchResult(best=Channel(q), residual=best_res, resolution=resolution)


def random_stochastic(rng, rows, cols):
    return rng.dirichlet(np.ones(cols), size=rows)


def random_pmf(rng, sizes):
    """I.i.d. uniform entries, normalized."""
    p = rng.uniform(size=sizes)
    return JointPMF(p / p.sum())


def planted_pmf(rng, sizes):
    """X produced from Z by a random channel, so the condition holds by construction."""
    xs, ys, zs = sizes
    pyz = rng.uniform(size=(ys, zs))
    pyz /= pyz.sum()
    q = random_stochastic(rng, zs, xs)
    return JointPMF(np.einsum("yz,zx->xyz", pyz, q))


def independent_pmf(rng, sizes):
    """X independent of (Y, Z)."""
    xs, ys, zs = sizes
    px = rng.dirichlet(np.ones(xs))
    pyz = rng.dirichlet(np.ones(ys * zs)).reshape(ys, zs)
    return JointPMF(np.einsum("x,yz->xyz", px, pyz))


def sparse_pmf(rng, sizes):
    """Uniform entries with roughly a third of the table zeroed."""
    p = rng.uniform(size=sizes) * (rng.uniform(size=sizes) > 0.33)
    if p.sum() == 0:
        p.flat[0] = 1.0
    return JointPMF(p / p.sum())


GENERATORS = {
    "uniform": random_pmf,
    "planted": planted_pmf,
    "independent": independent_pmf,
    "sparse": sparse_pmf,
}


def random_corpus(count, seed, max_size=4, kinds=("uniform", "planted", "uniform", "planted", "independent", "sparse")):
    """``count`` labelled PMFs with alphabets in ``1..max_size``; one child seed per instance."""
    children = np.random.SeedSequence(seed).spawn(count)
    out = []
    for i, child in enumerate(children):
        rng = np.random.default_rng(child)
        kind = kinds[i % len(kinds)]
        sizes = tuple(int(s) for s in rng.integers(1, max_size + 1, size=3))
        out.append((kind, sizes, GENERATORS[kind](rng, sizes)))
    return out


def null_space(matrix, rtol=1e-12):
    """Orthonormal null-space basis from numpy's LAPACK SVD."""
    matrix = np.atleast_2d(matrix)
    _, s, vt = np.linalg.svd(matrix)
    rank = int(np.count_nonzero(s > rtol * (s[0] if s.size else 0.0)))
    return vt[rank:].T


def sample_feasible_points(matrix, rhs, start, count, rng, span=10.0):
    """Hit-and-run walk over ``{x >= 0 : matrix @ x == rhs}`` from the feasible point ``start``.

    Unbounded directions are truncated at ``span``.
    """
    matrix = np.asarray(matrix, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    basis = null_space(matrix)
    pinv = np.linalg.pinv(matrix)
    x = np.array(start, dtype=float)
    points = []
    if basis.shape[1] == 0:
        return np.tile(x, (count, 1))
    for _ in range(count):
        d = basis @ rng.standard_normal(basis.shape[1])
        lo, hi = -span, span
        neg, pos = d < -1e-14, d > 1e-14
        if neg.any():
            hi = min(hi, np.min(-x[neg] / d[neg]))
        if pos.any():
            lo = max(lo, np.max(-x[pos] / d[pos]))
        if hi > lo:
            x = x + rng.uniform(lo, hi) * d
        x = x - pinv @ (matrix @ x - rhs)
        x = np.maximum(x, 0.0)
        points.append(x.copy())
    return np.array(points)


def relative_interior_point(problem, rng, vertices=None):
    """Average of the basic solutions that minimize a handful of random costs."""
    k = vertices or problem.n_vars + 1
    acc = []
    for _ in range(k):
        cost = rng.uniform(0.1, 1.0, problem.n_vars) * rng.choice([-1.0, 1.0], problem.n_vars)
        out = lp.solve(lp.LPProblem(cost=cost, matrix=problem.matrix, rhs=problem.rhs))
        if out.status is lp.Status.OPTIMAL:
            acc.append(out.solution)
    if not acc:
        out = lp.solve(lp.LPProblem(cost=np.zeros(problem.n_vars), matrix=problem.matrix, rhs=problem.rhs))
        if out.status is not lp.Status.OPTIMAL:
            raise ValueError("problem is infeasible")
        acc.append(out.solution)
    return np.mean(acc, axis=0)
