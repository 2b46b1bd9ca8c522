import numpy as np
import pytest
from scipy.optimize import linprog

from simcheck import fixtures, oracle
from simcheck.errors import AlphabetTooLarge
from simcheck.simulatability import build_system, system_for


def test_feasibility_direct_examples(example1_system, example2_system, example3_system):
    assert oracle.feasibility_direct(example1_system)
    assert not oracle.feasibility_direct(example2_system)
    assert oracle.feasibility_direct(example3_system)


def test_feasibility_direct_planted(rng):
    for _ in range(30):
        p = oracle.planted_pmf(rng, tuple(rng.integers(1, 5, size=3)))
        assert oracle.feasibility_direct(system_for(p))


def test_grid_search_example1():
    res = oracle.grid_search_channel(fixtures.EXAMPLE1_A, fixtures.EXAMPLE1_C, 100)
    assert res.residual <= 0.01
    assert res.channel is not None
    assert np.allclose(res.best.probs.sum(axis=1), 1.0)


def test_grid_search_identity():
    a = np.array([[0.3, 0.1], [0.2, 0.4]])
    res = oracle.grid_search_channel(a, a, 10)
    assert res.residual == pytest.approx(0.0, abs=1e-15)
    assert np.allclose(res.best.probs, np.eye(2))


def _continuous_floor(a, c):
    # min s  s.t.  |a p - c0| <= s,  |rowsum - a p - c1| <= s,  0 <= p <= 1
    ys, zs = a.shape
    rowsum = a.sum(axis=1)
    cost = np.r_[np.zeros(zs), 1.0]
    ones = np.ones((ys, 1))
    ub = np.vstack([np.hstack([a, -ones]), np.hstack([-a, -ones]),
                    np.hstack([-a, -ones]), np.hstack([a, -ones])])
    rhs = np.r_[c[:, 0], -c[:, 0], c[:, 1] - rowsum, rowsum - c[:, 1]]
    bounds = [(0, 1)] * zs + [(0, None)]
    return linprog(cost, A_ub=ub, b_ub=rhs, bounds=bounds, method="highs").fun


def _negative_plant():
    # invertible A, so Q is the unique candidate; its negative entry rules out every channel
    rng = np.random.default_rng(99)
    a = rng.uniform(0.2, 1.0, (3, 3))
    a /= a.sum()
    q = np.array([[1.2, -0.2], [0.3, 0.7], [0.5, 0.5]])
    return build_system(a, a @ q)


@pytest.mark.parametrize("resolution", [20, 50, 100])
def test_grid_search_infeasible_floor(resolution):
    sys_ = _negative_plant()
    assert not oracle.feasibility_direct(sys_)
    floor = _continuous_floor(sys_.a, sys_.c)
    assert floor > 1e-3
    res = oracle.grid_search_channel(sys_.a, sys_.c, resolution)
    assert res.residual >= floor - 1e-12
    assert res.residual <= floor + sys_.a.sum(axis=1).max() / resolution


def test_grid_search_nested_monotone(rng):
    for _ in range(5):
        p = oracle.random_pmf(rng, (2, 3, 3))
        sys_ = system_for(p)
        r = [oracle.grid_search_channel(sys_.a, sys_.c, k).residual for k in (10, 20, 40)]
        assert r[0] >= r[1] - 1e-15 and r[1] >= r[2] - 1e-15


def test_grid_search_limits():
    a = np.full((1, 7), 1 / 7)
    with pytest.raises(AlphabetTooLarge):
        oracle.grid_search_channel(a, np.array([[0.5, 0.5]]), 10)
    with pytest.raises(AlphabetTooLarge):
        oracle.grid_search_channel(np.array([[1.0]]), np.array([[0.3, 0.3, 0.4]]), 10)


def test_grid_agrees_with_direct_on_small(rng):
    # a feasible instance has some grid point within 1/res; far-infeasible ones do not
    for _ in range(10):
        p = oracle.planted_pmf(rng, (2, 2, 3))
        sys_ = system_for(p)
        assert oracle.grid_search_channel(sys_.a, sys_.c, 40).channel is not None


def test_random_corpus_reproducible():
    a = oracle.random_corpus(12, seed=5)
    b = oracle.random_corpus(12, seed=5)
    assert [k for k, _, _ in a] == [k for k, _, _ in b]
    for (_, s1, p1), (_, s2, p2) in zip(a, b):
        assert s1 == s2 and np.array_equal(p1.probs, p2.probs)
        assert p1.probs.shape == s1 and abs(p1.probs.sum() - 1) < 1e-12


def test_sampler_stays_feasible(rng, example1_system):
    start = fixtures.EXAMPLE1_CHANNEL.reshape(-1)
    pts = oracle.sample_feasible_points(example1_system.a_big, example1_system.c_vec, start, 200, rng)
    assert pts.shape == (200, 6)
    assert np.all(pts >= 0)
    assert np.max(np.abs(pts @ example1_system.a_big.T - example1_system.c_vec)) <= 1e-10
    assert np.ptp(pts, axis=0).max() > 1e-3  # the walk actually moves


def test_sampler_point_system():
    sys_ = build_system([[1.0]], [[1.0]])
    pts = oracle.sample_feasible_points(sys_.a_big, sys_.c_vec, [1.0], 3, np.random.default_rng(0))
    assert np.array_equal(pts, np.ones((3, 1)))
