import numpy as np
import pytest

from planarclust.bound import (
    CutPool,
    lower_bound_value,
    omega_violation,
    optimize_lower_bound,
)
from planarclust.cut_oracle import min_cut_2color
from planarclust.instances import gen_grid, gen_random_planar, UniformWeights
from planarclust.oracle import brute_cc, full_lp_bound


def test_lower_bound_value():
    assert lower_bound_value([-1, 2, 2], [-1, 2, 2]) == 0.0
    assert lower_bound_value([-1, -1, -1], [0, 0, 0]) == -3.0
    assert lower_bound_value([-1, 2, 2], [0, 2, 2]) == -1.0


def test_omega_violation(triangle):
    assert omega_violation(triangle, [0.0, 0.0, 0.0], 1e-6) is None
    assert omega_violation(triangle, [0.5, 1.0, 2.0], 1e-6) is None
    cut = omega_violation(triangle, [-1.0, -1.0, -1.0], 1e-6)
    assert cut is not None and cut.sum() == 2


def test_cut_pool_dedup(triangle):
    pool = CutPool()
    a = np.array([True, True, False])
    assert pool.add(a)
    assert not pool.add(a.copy())
    assert len(pool) == 1


def test_all_positive(triangle):
    res = optimize_lower_bound(triangle, [1.0, 0.5, 2.0])
    assert res.converged
    assert res.bound == 0.0
    assert res.batches == 0
    assert np.array_equal(res.lam, [1.0, 0.5, 2.0])


def test_triangle_all_negative(triangle):
    res = optimize_lower_bound(triangle, [-1.0, -1.0, -1.0])
    assert res.converged
    assert res.bound == pytest.approx(-3.0, abs=1e-8)
    assert np.allclose(res.lam, 0.0, atol=1e-8)


def test_triangle_tight_at_theta(triangle):
    res = optimize_lower_bound(triangle, [-1.0, 2.0, 2.0])
    assert res.converged
    assert res.bound == pytest.approx(0.0, abs=1e-8)
    assert np.allclose(res.lam, [-1.0, 2.0, 2.0], atol=1e-8)


def test_convergence_certificate_and_feasibility():
    for seed in range(25):
        inst = gen_random_planar(4 + seed % 6, 100 + seed)
        res = optimize_lower_bound(inst.graph, inst.theta)
        assert res.converged
        _, value = min_cut_2color(inst.graph, res.lam)
        assert value >= -1e-6
        # lambda respects its box
        assert np.all(res.lam >= inst.theta - 1e-9)
        assert np.all(res.lam <= np.maximum(inst.theta, 0.0) + 1e-9)
        assert res.bound <= 1e-12
        assert res.bound == pytest.approx(lower_bound_value(inst.theta, res.lam), abs=1e-12)


def test_soundness_against_brute_force():
    for seed in range(40):
        inst = gen_random_planar(4 + seed % 5, 200 + seed)
        res = optimize_lower_bound(inst.graph, inst.theta)
        _, cc = brute_cc(inst.graph, inst.theta)
        assert res.bound <= cc + 1e-6


def test_matches_full_lp():
    for seed in range(20):
        inst = gen_random_planar(4 + seed % 5, 300 + seed)
        res = optimize_lower_bound(inst.graph, inst.theta, tol=1e-9)
        ref = full_lp_bound(inst.graph, inst.theta, True)
        assert res.bound == pytest.approx(ref, abs=1e-8)


def test_iteration_limit_still_sound():
    for seed in range(10):
        inst = gen_random_planar(8, 400 + seed)
        res = optimize_lower_bound(inst.graph, inst.theta, max_batches=1)
        _, cc = brute_cc(inst.graph, inst.theta)
        assert res.bound <= cc + 1e-9
        if not res.converged:
            assert res.batches <= 1


def test_small_grid():
    inst = gen_grid(4, 4, UniformWeights(), 5)
    res = optimize_lower_bound(inst.graph, inst.theta)
    assert res.converged
    assert res.bound <= 1e-12


def test_lp_objective_monotone_across_batches():
    # replay the cutting-plane loop by hand: every added batch tightens a
    # maximization, so the restricted LP value must never increase
    from planarclust.bound import CutPool, _solve_restricted, lower_bound_value
    from planarclust.cut_oracle import min_cut_2color, split_into_basic_cuts

    for seed in range(8):
        inst = gen_random_planar(8, 1000 + seed)
        theta = inst.theta
        neg = theta < 0
        pool = CutPool()
        values = []
        for _ in range(50):
            lam = _solve_restricted(theta, neg, pool)
            values.append(lower_bound_value(theta, lam))
            cut, value = min_cut_2color(inst.graph, lam)
            if value >= -1e-9:
                break
            for b in split_into_basic_cuts(inst.graph, cut):
                pool.add(b)
        assert all(a >= b - 1e-9 for a, b in zip(values, values[1:]))
