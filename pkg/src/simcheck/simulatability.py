"""Deciding whether Z can simulate X with respect to Y.

The question is whether some row-stochastic ``Q`` (|Z| x |X|) satisfies
``A @ Q == C`` with ``A = P_YZ`` and ``C = P_YX``. Stacking ``A @ Q == C`` and
``Q @ 1 == 1`` gives a linear system ``a_big @ q == c_vec`` over
``q = vec_t(Q)``; a nonnegative solution exists iff the system is consistent
and the Farkas LP

    min  t @ (G @ c_vec)   s.t.  (I - G @ a_big).T @ t == 0,  t >= 0

has optimum zero, for any g-inverse ``G`` of ``a_big``. The LP's feasible set
is a cone, so a normalization row ``sum(t) + slack == 1`` keeps it bounded
without changing the sign of the optimum.
"""

import enum
import time
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg, lp
from .errors import DimensionMismatch, MarginalMismatch, NotAGInverse
from .pmf import EPS_PMF, marginal_yx, marginal_yz, swap_xy, validate_pmf

EPS_VERDICT = 1e-8
EPS_RECON = 1e-10


class Direction(enum.Enum):
    Y_FIXED_Z_TO_X = "y"  # Sim_Y(Z -> X)
    X_FIXED_Z_TO_Y = "x"  # Sim_X(Z -> Y)


class Reason(enum.Enum):
    RANK_MISMATCH = "RankMismatch"
    NEGATIVE_H_STAR = "NegativeHStar"
    H_STAR_ZERO = "HStarZero"


class Sign(enum.Enum):
    ZERO = "zero"
    NEGATIVE = "negative"


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """``a_big @ q == c_vec`` built from ``a`` (|Y| x |Z|) and ``c`` (|Y| x |X|)."""

    a_big: np.ndarray
    c_vec: np.ndarray
    a: np.ndarray
    c: np.ndarray

    @property
    def x_size(self):
        return self.c.shape[1]

    @property
    def y_size(self):
        return self.a.shape[0]

    @property
    def z_size(self):
        return self.a.shape[1]

    @property
    def dims(self):
        return self.x_size, self.y_size, self.z_size

    @property
    def m(self):
        return self.a_big.shape[0]

    @property
    def n(self):
        return self.a_big.shape[1]

    @cached_property
    def decomposition(self):
        return linalg.svd(self.a_big)

    @cached_property
    def pinv(self):
        return linalg.pinv(self.a_big, decomposition=self.decomposition)

    def rank(self, tol=None):
        return linalg.numerical_rank(self.a_big, tol, decomposition=self.decomposition)

    def augmented(self):
        return np.column_stack([self.a_big, self.c_vec])


def build_system(a, c, eps=EPS_PMF):
    """Stack ``kron(A, I_X)`` over ``kron(I_Z, 1^T)`` and ``vec_t(C)`` over ones."""
    a = linalg.as_matrix(a)
    c = linalg.as_matrix(c)
    if a.shape[0] != c.shape[0]:
        raise DimensionMismatch(f"A has {a.shape[0]} rows but C has {c.shape[0]}")
    if np.any(a < 0) or np.any(c < 0):
        raise ValueError("A and C must be nonnegative")
    gap = np.max(np.abs(a.sum(axis=1) - c.sum(axis=1)))
    if gap > eps:
        raise MarginalMismatch(f"row sums of A and C differ by up to {gap:.3g}")
    ysz, zsz = a.shape
    xsz = c.shape[1]
    a_big = np.vstack([linalg.kron(a, np.eye(xsz)), linalg.kron(np.eye(zsz), np.ones((1, xsz)))])
    c_vec = np.concatenate([linalg.vec_t(c), np.ones(zsz)])
    for arr in (a_big, c_vec, a, c):
        arr.setflags(write=False)
    return LinearSystem(a_big=a_big, c_vec=c_vec, a=a, c=c)


def consistency(system, tol=None):
    """Compare ranks of ``a_big`` and ``[a_big | c_vec]``.

    Returns ``(consistent, rank_a, rank_aug)``.
    """
    rank_a = system.rank(tol)
    rank_aug = linalg.numerical_rank(system.augmented(), tol)
    return rank_a == rank_aug, rank_a, rank_aug


@dataclass(frozen=True)
class SignResult:
    sign: Sign
    h_star: float
    witness: np.ndarray = None
    outcome: lp.LPOutcome = field(default=None, repr=False)
    problem: lp.LPProblem = field(default=None, repr=False)

    @property
    def iterations(self):
        return self.outcome.iterations if self.outcome is not None else 0


def farkas_problem(null_constraints, target):
    """LP for ``min t @ target`` over ``t >= 0``, ``null_constraints @ t == 0``, ``sum(t) <= 1``.

    Variables are ``t`` followed by one slack for the normalization row.
    """
    k, n = null_constraints.shape
    matrix = np.zeros((k + 1, n + 1))
    matrix[:k, :n] = null_constraints
    matrix[k, :] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    cost = np.concatenate([target, [0.0]])
    return lp.LPProblem(cost=cost, matrix=matrix, rhs=rhs)


def _sign_from_lp(problem, n, verdict_tol, early_stop):
    stop = -verdict_tol if early_stop else None
    outcome = lp.solve(problem, stop_below=stop)
    if outcome.status not in (lp.Status.OPTIMAL, lp.Status.STOPPED):
        # t = 0 is always feasible and the normalization bounds the objective
        raise RuntimeError(f"Farkas LP returned {outcome.status}")
    t = outcome.solution[:n]
    h = float(outcome.objective)
    if h < -verdict_tol:
        return SignResult(Sign.NEGATIVE, h, witness=t, outcome=outcome, problem=problem)
    return SignResult(Sign.ZERO, h, outcome=outcome, problem=problem)


def theorem2_check(system, g_inv=None, verdict_tol=EPS_VERDICT, early_stop=False):
    """Sign of the Farkas LP built from a g-inverse of ``a_big``.

    ``g_inv`` defaults to the Moore-Penrose pseudoinverse. Any other matrix
    must satisfy ``a_big @ g_inv @ a_big == a_big`` to within ``EPS_RECON``.
    A NEGATIVE result carries the witness ``t``.
    """
    a_big = system.a_big
    g = system.pinv if g_inv is None else np.asarray(g_inv, dtype=float)
    if g.shape != (system.n, system.m):
        raise DimensionMismatch(f"g-inverse must be {system.n}x{system.m}, got {g.shape}")
    residual = np.max(np.abs(a_big @ g @ a_big - a_big))
    if residual > EPS_RECON:
        raise NotAGInverse(f"A G A differs from A by {residual:.3g}")
    projector = np.eye(system.n) - g @ a_big
    problem = farkas_problem(projector.T, g @ system.c_vec)
    return _sign_from_lp(problem, system.n, verdict_tol, early_stop)


def reduced_check(system, rank_tol=None, verdict_tol=EPS_VERDICT, early_stop=False):
    """Same sign as :func:`theorem2_check` with the pseudoinverse, on a smaller LP.

    With ``a_big = U S V^T`` of rank ``r``, ``I - pinv(a_big) @ a_big`` is
    ``N @ N.T`` where ``N`` holds the last ``s = n - r`` columns of ``V``, so
    the ``n`` null-space equations collapse to ``N.T @ t == 0``.
    """
    r = system.rank(rank_tol)
    null_basis = system.decomposition.v[:, r:]
    if rank_tol is None:
        target = system.pinv @ system.c_vec
    else:
        target = linalg.pinv(system.a_big, rank_tol, decomposition=system.decomposition) @ system.c_vec
    problem = farkas_problem(null_basis.T, target)
    return _sign_from_lp(problem, system.n, verdict_tol, early_stop)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    reason: Reason
    h_star: float
    rank_a: int
    rank_aug: int
    m: int
    n: int
    direction: Direction = Direction.Y_FIXED_Z_TO_X
    witness: np.ndarray = field(default=None, repr=False)
    trace: dict = field(default_factory=dict)

    def __post_init__(self):
        assert self.holds == (self.reason is Reason.H_STAR_ZERO)
        assert not self.holds or self.rank_a == self.rank_aug

    @property
    def h_star_sign(self):
        if self.reason is Reason.RANK_MISMATCH:
            return None
        return Sign.ZERO.value if self.holds else Sign.NEGATIVE.value


def check_system(system, *, reduction=None, g_inv=None, rank_tol=None,
                 verdict_tol=EPS_VERDICT, early_stop=False, direction=Direction.Y_FIXED_Z_TO_X):
    """Rank test followed by the Farkas LP, full or reduced.

    ``reduction=None`` picks the reduced LP when ``s < n / 2``. Passing
    ``g_inv`` forces the full LP with that g-inverse.
    """
    timings = {}
    start = time.perf_counter()
    consistent, rank_a, rank_aug = consistency(system, rank_tol)
    timings["rank"] = time.perf_counter() - start
    s = system.n - rank_a
    trace = {"s": s, "timings": timings, "g_inverse": None, "reduction_used": False,
             "iterations": 0, "early_stop": early_stop}
    common = dict(rank_a=rank_a, rank_aug=rank_aug, m=system.m, n=system.n, direction=direction)
    if not consistent:
        return Verdict(holds=False, reason=Reason.RANK_MISMATCH, h_star=None, trace=trace, **common)

    custom = g_inv is not None
    use_reduced = (s < system.n / 2) if reduction is None else bool(reduction)
    use_reduced = use_reduced and not custom
    trace["g_inverse"] = "custom" if custom else "moore-penrose"
    start = time.perf_counter()
    if use_reduced:
        result = reduced_check(system, rank_tol, verdict_tol, early_stop)
    else:
        if not custom and rank_tol is not None:
            g_inv = linalg.pinv(system.a_big, rank_tol, decomposition=system.decomposition)
        result = theorem2_check(system, g_inv, verdict_tol, early_stop)
    timings["lp"] = time.perf_counter() - start
    trace["reduction_used"] = use_reduced
    trace["iterations"] = result.iterations
    trace["h_star_raw"] = result.h_star
    holds = result.sign is Sign.ZERO
    return Verdict(holds=holds, reason=Reason.H_STAR_ZERO if holds else Reason.NEGATIVE_H_STAR,
                   h_star=0.0 if holds else result.h_star, witness=result.witness, trace=trace, **common)


def system_for(p, direction=Direction.Y_FIXED_Z_TO_X):
    direction = Direction(direction)
    validate_pmf(p)
    if direction is Direction.X_FIXED_Z_TO_Y:
        p = swap_xy(p)
    return build_system(marginal_yz(p), marginal_yx(p))


def check_simulatability(p, direction=Direction.Y_FIXED_Z_TO_X, **opts):
    """Decide Sim_Y(Z -> X) (or Sim_X(Z -> Y)) for the joint PMF ``p``.

    Keyword options are those of :func:`check_system`.
    """
    direction = Direction(direction)
    start = time.perf_counter()
    system = system_for(p, direction)
    built = time.perf_counter() - start
    verdict = check_system(system, direction=direction, **opts)
    verdict.trace["timings"]["build"] = built
    return verdict
