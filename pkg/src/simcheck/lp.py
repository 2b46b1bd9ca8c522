"""Dense two-phase simplex for standard-form LPs.

Solves ``min cost @ x`` subject to ``matrix @ x == rhs`` and ``x >= 0``.
Every outcome carries a certificate that can be re-checked against the
problem data with :func:`check_certificate`:

* ``OPTIMAL``: the dual vector ``y`` (reduced costs ``cost - matrix.T @ y``
  are nonnegative and ``rhs @ y`` equals the objective).
* ``UNBOUNDED``: a ray ``d >= 0`` with ``matrix @ d == 0`` and ``cost @ d < 0``.
* ``INFEASIBLE``: a Farkas vector ``y`` with ``y @ matrix <= 0`` and
  ``y @ rhs > 0``.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import CycleLimitExceeded, DimensionMismatch

EPS_LP = 1e-8
PIVOT_TOL = 1e-10
ITERATION_FACTOR = 50


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    # only produced when solve() is given stop_below
    STOPPED = "stopped"


@dataclass(frozen=True)
class LPProblem:
    cost: np.ndarray
    matrix: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        cost = np.array(self.cost, dtype=float).reshape(-1)
        matrix = np.array(self.matrix, dtype=float)
        rhs = np.array(self.rhs, dtype=float).reshape(-1)
        if matrix.ndim != 2:
            matrix = matrix.reshape(len(rhs), len(cost))
        if matrix.shape != (rhs.size, cost.size):
            raise DimensionMismatch(
                f"constraint matrix {matrix.shape} does not match rhs {rhs.size} x cost {cost.size}")
        if not (np.all(np.isfinite(cost)) and np.all(np.isfinite(matrix)) and np.all(np.isfinite(rhs))):
            raise ValueError("LP data must be finite")
        for name, arr in (("cost", cost), ("matrix", matrix), ("rhs", rhs)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_rows(self):
        return self.matrix.shape[0]

    @property
    def n_vars(self):
        return self.matrix.shape[1]


@dataclass(frozen=True)
class LPOutcome:
    status: Status
    solution: np.ndarray = None
    objective: float = None
    certificate: np.ndarray = None
    iterations: int = 0
    basis: tuple = field(default=(), repr=False)

    @property
    def optimal(self):
        return self.status is Status.OPTIMAL


class _Tableau:
    """Rows ``0..m-1`` hold ``[B^-1 A | B^-1 b]``; row ``m`` holds reduced costs and ``-z``."""

    def __init__(self, body, rhs, basis, cost):
        m = body.shape[0]
        self.t = np.zeros((m + 1, body.shape[1] + 1))
        self.t[:m, :-1] = body
        self.t[:m, -1] = rhs
        self.basis = list(basis)
        self.set_cost(cost)

    @property
    def m(self):
        return self.t.shape[0] - 1

    def set_cost(self, cost):
        cost = np.asarray(cost, dtype=float)
        cb = cost[self.basis]
        self.t[-1, :-1] = cost - cb @ self.t[:-1, :-1]
        self.t[-1, -1] = -(cb @ self.t[:-1, -1])

    @property
    def objective(self):
        return -self.t[-1, -1]

    def pivot(self, row, col):
        t = self.t
        t[row] /= t[row, col]
        factors = t[:, col].copy()
        factors[row] = 0.0
        t -= np.outer(factors, t[row])
        t[:, col] = 0.0
        t[row, col] = 1.0
        self.basis[row] = col

    def entering(self, allowed):
        # Bland: lowest-index column with a negative reduced cost
        rc = self.t[-1, :allowed]
        candidates = np.flatnonzero(rc < -PIVOT_TOL)
        return int(candidates[0]) if candidates.size else None

    def leaving(self, col):
        column = self.t[:-1, col]
        rows = np.flatnonzero(column > PIVOT_TOL)
        if rows.size == 0:
            return None
        ratios = np.maximum(self.t[rows, -1], 0.0) / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12 * max(1.0, best)]
        # Bland: among ties, the row whose basic variable has the lowest index
        return int(min(ties, key=lambda r: self.basis[r]))

    def delete_row(self, row):
        self.t = np.delete(self.t, row, axis=0)
        del self.basis[row]


def _run(tab, allowed, budget, stop_below=None):
    """Pivot until optimal; returns ('optimal'|'unbounded'|'stopped', column, pivots)."""
    pivots = 0
    while True:
        if stop_below is not None and tab.objective < stop_below:
            return "stopped", None, pivots
        col = tab.entering(allowed)
        if col is None:
            return "optimal", None, pivots
        row = tab.leaving(col)
        if row is None:
            return "unbounded", col, pivots
        if pivots >= budget:
            raise CycleLimitExceeded(f"simplex exceeded {budget} pivots")
        tab.pivot(row, col)
        pivots += 1


def _refine(problem, rows, basis):
    """Recompute the basic solution from the original data."""
    n = problem.n_vars
    x = np.zeros(n)
    if basis:
        b = problem.matrix[np.ix_(rows, basis)]
        xb, *_ = np.linalg.lstsq(b, problem.rhs[rows], rcond=None)
        x[basis] = xb
    x[(x < 0) & (x > -EPS_LP)] = 0.0
    return x


def _duals(problem, rows, basis):
    y = np.zeros(problem.n_rows)
    if basis:
        b = problem.matrix[np.ix_(rows, basis)]
        yr, *_ = np.linalg.lstsq(b.T, problem.cost[basis], rcond=None)
        y[rows] = yr
    return y


def solve(problem, stop_below=None):
    """Solve ``problem`` with the two-phase method and Bland's pivoting rule.

    ``stop_below`` enables early exit: phase 2 returns ``Status.STOPPED`` as
    soon as a basic feasible solution with objective below that value is
    reached.
    """
    a, b, c = problem.matrix, problem.rhs, problem.cost
    m, n = a.shape
    budget = ITERATION_FACTOR * (m + n)

    signs = np.where(b < 0, -1.0, 1.0)
    body = np.hstack([a * signs[:, None], np.eye(m)])
    phase1_cost = np.concatenate([np.zeros(n), np.ones(m)])
    tab = _Tableau(body, b * signs, range(n, n + m), phase1_cost)

    status, _, iters = _run(tab, n, budget)
    if tab.objective > EPS_LP:
        # reduced cost of artificial i is 1 - pi_i
        pi = 1.0 - tab.t[-1, n:n + m]
        y = signs * pi
        return LPOutcome(Status.INFEASIBLE, certificate=y, iterations=iters)

    # drive artificials out of the basis; rows where that is impossible are redundant
    rows = list(range(m))
    r = 0
    while r < tab.m:
        if tab.basis[r] >= n:
            entries = np.abs(tab.t[r, :n])
            j = int(np.argmax(entries)) if n else -1
            if n and entries[j] > PIVOT_TOL:
                tab.pivot(r, j)
                iters += 1
            else:
                tab.delete_row(r)
                del rows[r]
                continue
        r += 1

    tab.t = np.delete(tab.t, np.s_[n:n + m], axis=1)
    tab.set_cost(c)
    tab.t[:-1, -1] = np.maximum(tab.t[:-1, -1], 0.0)
    status, col, more = _run(tab, n, budget - iters, stop_below)
    iters += more

    basis = list(tab.basis)
    if status == "unbounded":
        ray = np.zeros(n)
        ray[col] = 1.0
        for i, bv in enumerate(basis):
            ray[bv] = -tab.t[i, col]
        ray[np.abs(ray) < PIVOT_TOL * 1e-2] = 0.0
        return LPOutcome(Status.UNBOUNDED, certificate=ray, iterations=iters, basis=tuple(basis))

    x = _refine(problem, rows, basis)
    out_status = Status.STOPPED if status == "stopped" else Status.OPTIMAL
    y = _duals(problem, rows, basis) if out_status is Status.OPTIMAL else None
    return LPOutcome(out_status, solution=x, objective=float(c @ x), certificate=y,
                     iterations=iters, basis=tuple(basis))


def check_certificate(problem, outcome, tol=EPS_LP):
    """Re-verify an outcome against the problem data; True iff every condition holds."""
    a, b, c = problem.matrix, problem.rhs, problem.cost
    if outcome.status in (Status.OPTIMAL, Status.STOPPED):
        x = outcome.solution
        if x is None or x.shape != (problem.n_vars,):
            return False
        feasible = (np.all(x >= -tol) and np.max(np.abs(a @ x - b), initial=0.0) <= tol)
        if not feasible or abs(c @ x - outcome.objective) > tol * max(1.0, abs(outcome.objective)):
            return False
        if outcome.status is Status.STOPPED:
            return True
        y = outcome.certificate
        if y is None or y.shape != (problem.n_rows,):
            return False
        reduced = c - a.T @ y
        scale = max(1.0, float(np.max(np.abs(y), initial=0.0)))
        return bool(np.all(reduced >= -tol * scale)
                    and abs(b @ y - c @ x) <= tol * max(1.0, abs(c @ x), scale))
    if outcome.status is Status.UNBOUNDED:
        d = outcome.certificate
        if d is None or d.shape != (problem.n_vars,):
            return False
        return bool(np.all(d >= -tol) and np.max(np.abs(a @ d), initial=0.0) <= tol and c @ d <= -tol)
    if outcome.status is Status.INFEASIBLE:
        y = outcome.certificate
        if y is None or y.shape != (problem.n_rows,):
            return False
        return bool(np.all(y @ a <= tol) and y @ b >= tol)
    return False
