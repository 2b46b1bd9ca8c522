"""Constructing a simulation channel P_Xbar|Z once the condition holds."""

from dataclasses import dataclass, field

import numpy as np

from . import linalg, lp
from .errors import DimensionMismatch, NotSimulatable
from .pmf import Channel


@dataclass(frozen=True)
class AttackResult:
    channel: Channel
    objective: float
    vector: np.ndarray
    cost: np.ndarray
    outcome: lp.LPOutcome = field(repr=False, default=None)


def _cost_vector(system, cost):
    if cost is None:
        return np.ones(system.n)
    cost = np.asarray(cost, dtype=float).reshape(-1)
    if cost.size != system.n:
        raise ValueError(f"cost vector needs {system.n} entries, got {cost.size}")
    if not np.all(np.isfinite(cost)) or np.any(cost <= 0):
        raise ValueError("cost vector entries must be strictly positive")
    return cost


def attack_problem(system, cost=None):
    return lp.LPProblem(cost=_cost_vector(system, cost), matrix=system.a_big, rhs=system.c_vec)


def find_attack_channel(system, cost=None):
    """Minimize ``cost @ q`` over ``a_big @ q == c_vec``, ``q >= 0`` and reshape the minimizer.

    ``cost`` must be strictly positive and defaults to all ones. Raises
    :class:`NotSimulatable` carrying the Farkas certificate when no channel
    exists.
    """
    problem = attack_problem(system, cost)
    outcome = lp.solve(problem)
    if outcome.status is lp.Status.INFEASIBLE:
        raise NotSimulatable("no nonnegative solution: the simulatability condition fails",
                             certificate=outcome.certificate, outcome=outcome)
    if outcome.status is not lp.Status.OPTIMAL:
        # a strictly positive cost over a bounded polytope cannot be unbounded
        raise RuntimeError(f"attack LP returned {outcome.status}")
    q = outcome.solution
    channel = Channel(linalg.reshape_t(q, system.z_size, system.x_size))
    return AttackResult(channel=channel, objective=outcome.objective, vector=q,
                        cost=problem.cost, outcome=outcome)


def validate_channel(a, c, q, tol=lp.EPS_LP):
    """True iff ``q`` is row-stochastic and ``max|a @ q - c| <= tol``."""
    a = np.asarray(a, dtype=float)
    c = np.asarray(c, dtype=float)
    q = q if isinstance(q, Channel) else Channel(q)
    if a.ndim != 2 or c.ndim != 2 or a.shape[0] != c.shape[0] \
            or a.shape[1] != q.rows or q.cols != c.shape[1]:
        raise DimensionMismatch(f"incompatible shapes a{a.shape}, q{q.probs.shape}, c{c.shape}")
    if not q.is_stochastic(tol):
        return False
    return bool(np.max(np.abs(a @ q.probs - c)) <= tol)
