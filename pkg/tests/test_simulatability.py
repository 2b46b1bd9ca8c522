import numpy as np
import pytest

from simcheck import fixtures, linalg, oracle
from simcheck.errors import MarginalMismatch, NotAGInverse
from simcheck.simulatability import (
    EPS_VERDICT, Direction, Reason, Sign, build_system, check_simulatability, check_system,
    consistency, reduced_check, system_for, theorem2_check,
)


def _planted_system(rng, sizes):
    return system_for(oracle.planted_pmf(rng, sizes))


def test_build_example1(example1_system):
    assert np.array_equal(example1_system.a_big, fixtures.EXAMPLE1_A_BIG)
    assert np.allclose(example1_system.c_vec, fixtures.EXAMPLE1_C_VEC, atol=1e-15)
    assert (example1_system.m, example1_system.n) == (7, 6)


def test_build_erasure_pattern():
    sys_ = system_for(fixtures.erasure_pmf("0.1", "0.5"))
    assert sys_.a_big.shape == (9, 10)
    a = sys_.a
    assert np.allclose(a[:, :4], [[0.225, 0.025, 0, 0], [0, 0, 0.025, 0.225]])
    assert np.allclose(a[:, 4], [0.25, 0.25])
    # top block is kron(A, I_2)
    assert np.allclose(sys_.a_big[:4], np.kron(a, np.eye(2)))


def test_build_singletons():
    sys_ = build_system([[1.0]], [[1.0]])
    assert np.array_equal(sys_.a_big, [[1.0], [1.0]])
    assert np.array_equal(sys_.c_vec, [1.0, 1.0])
    assert check_system(sys_).holds


def test_marginal_mismatch():
    with pytest.raises(MarginalMismatch):
        build_system([[0.5, 0.5]], [[0.6, 0.5]])


def test_definitional_identity(rng):
    for _ in range(100):
        ys, zs, xs = rng.integers(1, 5, size=3)
        a = rng.uniform(size=(ys, zs))
        a /= a.sum()
        q = oracle.random_stochastic(rng, zs, xs)
        sys_ = build_system(a, a @ q)
        expect = np.concatenate([linalg.vec_t(a @ q), q.sum(axis=1)])
        assert np.max(np.abs(sys_.a_big @ linalg.vec_t(q) - expect)) <= 1e-12


def test_consistency_example1(example1_system):
    assert consistency(example1_system) == (True, 5, 5)


def test_consistency_left_null_perturbation(example1_system):
    d = np.linalg.svd(example1_system.a_big)
    v = d[0][:, -1]  # 7x6 matrix: last left singular vector spans the left null space
    bad = type(example1_system)(a_big=example1_system.a_big, c_vec=example1_system.c_vec + 0.1 * v,
                                a=example1_system.a, c=example1_system.c)
    ok, ra, raug = consistency(bad)
    assert not ok and raug == ra + 1


def test_consistency_planted(rng):
    for _ in range(20):
        sys_ = _planted_system(rng, tuple(rng.integers(1, 5, size=3)))
        assert consistency(sys_)[0]


@pytest.mark.parametrize("name,expected", [("example1", Sign.ZERO), ("example2", Sign.NEGATIVE),
                                           ("example3", Sign.ZERO)])
def test_example_signs(request, name, expected):
    sys_ = request.getfixturevalue(f"{name}_system")
    assert consistency(sys_)[0]
    assert theorem2_check(sys_).sign is expected
    assert reduced_check(sys_).sign is expected


def test_example1_h_star_zero(example1_system):
    res = theorem2_check(example1_system)
    assert abs(res.h_star) <= EPS_VERDICT


def test_reduced_full_column_rank():
    # s = 0: the verdict is the sign of pinv(a_big) @ c_vec
    a = np.array([[0.5, 0.0], [0.0, 0.5]])
    good = build_system(a, [[0.5], [0.5]])
    assert good.rank() == good.n
    assert reduced_check(good).sign is Sign.ZERO
    sys_ = build_system(a, [[0.3, 0.2], [0.1, 0.4]])
    assert sys_.n - sys_.rank() == 0
    assert np.all(sys_.pinv @ sys_.c_vec >= -EPS_VERDICT)
    assert reduced_check(sys_).sign is Sign.ZERO


def test_reduced_matches_full_random(rng):
    seen = set()
    for kind, _, p in oracle.random_corpus(200, seed=7, max_size=4):
        sys_ = system_for(p)
        if not consistency(sys_)[0]:
            continue
        full, red = theorem2_check(sys_).sign, reduced_check(sys_).sign
        assert full is red, kind
        seen.add(full)
    assert seen == {Sign.ZERO, Sign.NEGATIVE}


def test_sign_invariant_under_alternative_g_inverses(rng):
    checked = 0
    for _, _, p in oracle.random_corpus(40, seed=11, max_size=3):
        sys_ = system_for(p)
        if not consistency(sys_)[0]:
            continue
        ref = theorem2_check(sys_).sign
        proj = np.eye(sys_.n) - sys_.pinv @ sys_.a_big
        for _ in range(5):
            g = sys_.pinv + proj @ rng.standard_normal((sys_.n, sys_.m))
            assert theorem2_check(sys_, g).sign is ref
            checked += 1
    assert checked > 0


def test_not_a_g_inverse(example1_system):
    with pytest.raises(NotAGInverse):
        theorem2_check(example1_system, np.zeros((6, 7)))


@pytest.mark.parametrize("gamma,holds", [("0.9", True), ("0.5", False), ("0.8", True), ("0.79", False)])
def test_erasure_verdicts(gamma, holds):
    assert check_simulatability(fixtures.erasure_pmf("0.1", gamma)).holds is holds


@pytest.mark.parametrize("alpha", ["0.05", "0.15", "0.3", "0.45"])
def test_erasure_single_step(alpha):
    from fractions import Fraction
    gammas = [Fraction(k, 51) for k in range(1, 51)]
    verdicts = [check_simulatability(fixtures.erasure_pmf(alpha, g)).holds for g in gammas]
    flips = [i for i in range(1, 50) if verdicts[i] != verdicts[i - 1]]
    assert len(flips) == 1 and not verdicts[0] and verdicts[-1]
    threshold = 1 - 2 * Fraction(alpha)
    assert abs(gammas[flips[0]] - threshold) <= Fraction(1, 51)


def test_independent_x_always_holds(rng):
    for _ in range(25):
        p = oracle.independent_pmf(rng, tuple(rng.integers(1, 5, size=3)))
        v = check_simulatability(p)
        assert v.holds and v.reason is Reason.H_STAR_ZERO


def test_negative_witness_invariants(example2_system):
    res = theorem2_check(example2_system)
    t = res.witness
    g = example2_system.pinv
    proj = np.eye(example2_system.n) - g @ example2_system.a_big
    assert np.all(t >= -1e-12)
    assert np.max(np.abs(proj.T @ t)) <= 1e-8
    assert t @ (g @ example2_system.c_vec) < 0


def test_verdict_fields(example1_system, example2_system):
    v = check_system(example1_system)
    assert v.holds and v.h_star == 0.0 and v.h_star_sign == "zero"
    assert (v.m, v.n, v.rank_a, v.rank_aug) == (7, 6, 5, 5)
    w = check_system(example2_system, reduction=False)
    assert not w.holds and w.reason is Reason.NEGATIVE_H_STAR and w.h_star < 0
    assert not w.trace["reduction_used"] and w.witness is not None


def test_rank_mismatch_verdict():
    # identical rows of A force identical rows of A @ Q, but the rows of C differ
    sys_ = build_system([[0.25, 0.25], [0.25, 0.25]], [[0.5, 0.0], [0.0, 0.5]])
    v = check_system(sys_)
    assert not v.holds and v.reason is Reason.RANK_MISMATCH
    assert v.rank_aug == v.rank_a + 1 and v.h_star is None and v.h_star_sign is None
    assert not oracle.feasibility_direct(sys_)


def test_early_stop_same_verdict(example2_system, example1_system):
    assert not check_system(example2_system, early_stop=True).holds
    assert check_system(example1_system, early_stop=True).holds


def test_direction_x_swaps():
    p = fixtures.example1_pmf()
    v = check_simulatability(p, Direction.X_FIXED_Z_TO_Y)
    assert v.direction is Direction.X_FIXED_Z_TO_Y
    sys_ = system_for(p, "x")
    assert sys_.dims == (2, 2, 3)
    assert v.holds == oracle.feasibility_direct(sys_)
