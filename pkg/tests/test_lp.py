import numpy as np
import pytest
from scipy.optimize import linprog

from simcheck import lp
from simcheck.errors import CycleLimitExceeded
from simcheck.lp import EPS_LP, LPOutcome, LPProblem, Status, check_certificate, solve


def test_single_variable():
    p = LPProblem([1.0], [[1.0]], [1.0])
    out = solve(p)
    assert out.status is Status.OPTIMAL
    assert out.solution == pytest.approx([1.0]) and out.objective == pytest.approx(1.0)
    assert check_certificate(p, out)


def test_unbounded_ray():
    p = LPProblem([-1.0, 0.0], [[1.0, -1.0]], [0.0])
    out = solve(p)
    assert out.status is Status.UNBOUNDED
    assert np.allclose(out.certificate, [1.0, 1.0])
    assert check_certificate(p, out)


def test_infeasible_farkas():
    p = LPProblem([0.0], [[1.0]], [-1.0])
    out = solve(p)
    assert out.status is Status.INFEASIBLE
    assert np.allclose(out.certificate, [-1.0])
    assert out.certificate @ p.rhs == pytest.approx(1.0)
    assert check_certificate(p, out)


def test_corrupted_solution_rejected():
    p = LPProblem([1.0], [[1.0]], [1.0])
    good = solve(p)
    bad = LPOutcome(Status.OPTIMAL, solution=np.array([2.0]), objective=2.0, certificate=good.certificate)
    assert not check_certificate(p, bad)


def test_wrong_status_certificates_rejected():
    p = LPProblem([1.0], [[1.0]], [1.0])
    assert not check_certificate(p, LPOutcome(Status.INFEASIBLE, certificate=np.array([1.0])))
    assert not check_certificate(p, LPOutcome(Status.UNBOUNDED, certificate=np.array([1.0])))


def test_beale_cycling_example_terminates():
    # degenerate instance on which the largest-coefficient rule cycles
    cost = [0, 0, 0, -0.75, 20, -0.5, 6]
    a = [[1, 0, 0, 0.25, -8, -1, 9],
         [0, 1, 0, 0.5, -12, -0.5, 3],
         [0, 0, 1, 0, 0, 1, 0]]
    p = LPProblem(cost, a, [0, 0, 1])
    out = solve(p)
    assert out.status is Status.OPTIMAL
    assert out.objective == pytest.approx(-1.25)
    assert check_certificate(p, out)


def test_redundant_rows():
    a = [[1, 1, 0], [2, 2, 0], [0, 1, 1]]
    p = LPProblem([1, 2, 3], a, [1, 2, 1])
    out = solve(p)
    assert out.status is Status.OPTIMAL
    assert out.objective == pytest.approx(2.0)  # x = (0, 1, 0)
    assert check_certificate(p, out)


def test_cycle_limit(monkeypatch):
    monkeypatch.setattr(lp, "ITERATION_FACTOR", 0)
    with pytest.raises(CycleLimitExceeded):
        solve(LPProblem([1.0, 1.0], [[1.0, 2.0]], [1.0]))


def test_early_stop():
    p = LPProblem([-1.0, -2.0, 0.0], [[1.0, 1.0, 1.0]], [1.0])
    out = solve(p, stop_below=-0.5)
    assert out.status in (Status.STOPPED, Status.OPTIMAL)
    assert out.objective < -0.5
    assert check_certificate(p, out)


def _random_bounded(rng):
    m, n = int(rng.integers(1, 7)), int(rng.integers(2, 12))
    b = rng.uniform(-1, 1, (m, n))
    b[0] = rng.uniform(0.5, 1.5, n)  # keeps the polytope bounded
    x0 = rng.uniform(0, 1, n) * (rng.uniform(size=n) < 0.7)
    return LPProblem(rng.uniform(-1, 1, n), b, b @ x0), x0


def test_random_feasible_bounded(rng):
    for _ in range(150):
        p, x0 = _random_bounded(rng)
        out = solve(p)
        assert out.status is Status.OPTIMAL
        assert check_certificate(p, out)
        assert out.objective <= p.cost @ x0 + EPS_LP
        ref = linprog(p.cost, A_eq=p.matrix, b_eq=p.rhs, method="highs")
        assert out.objective == pytest.approx(ref.fun, abs=1e-7)


def test_random_status_agrees_with_highs(rng):
    seen = set()
    for _ in range(200):
        m, n = int(rng.integers(1, 6)), int(rng.integers(1, 8))
        p = LPProblem(rng.uniform(-1, 1, n), rng.uniform(-1, 1, (m, n)), rng.uniform(-1, 1, m))
        out = solve(p)
        ref = linprog(p.cost, A_eq=p.matrix, b_eq=p.rhs, method="highs")
        expected = {0: Status.OPTIMAL, 2: Status.INFEASIBLE, 3: Status.UNBOUNDED}[ref.status]
        assert out.status is expected
        assert check_certificate(p, out)
        seen.add(out.status)
    assert seen == {Status.OPTIMAL, Status.INFEASIBLE, Status.UNBOUNDED}
