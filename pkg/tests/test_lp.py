import itertools

import numpy as np
import pytest

from planarclust.lp import LpProblem, solve_lp


def test_box_only():
    sol = solve_lp(LpProblem(objective=[-1.0], lower=[-1.0], upper=[0.0]))
    assert sol.status == "optimal"
    assert sol.x[0] == pytest.approx(-1.0)
    assert sol.objective_value == pytest.approx(1.0)


def test_single_constraint_dual():
    sol = solve_lp(
        LpProblem(
            objective=[-1.0],
            lower=[-1.0],
            upper=[0.0],
            constraints=(([1.0], -0.5),),
        )
    )
    assert sol.x[0] == pytest.approx(-0.5)
    assert sol.objective_value == pytest.approx(0.5)
    assert sol.duals[0] == pytest.approx(1.0)


def test_degenerate_optimum_value_unique():
    sol = solve_lp(
        LpProblem(
            objective=[-1.0, -1.0],
            lower=[-1.0, -1.0],
            upper=[0.0, 0.0],
            constraints=(([1.0, 1.0], 0.0),),
        )
    )
    assert sol.objective_value == pytest.approx(0.0, abs=1e-9)
    assert sol.x[0] + sol.x[1] == pytest.approx(0.0, abs=1e-9)


def test_infeasible():
    sol = solve_lp(
        LpProblem(
            objective=[1.0],
            lower=[0.0],
            upper=[1.0],
            constraints=(([1.0], 2.0),),
        )
    )
    assert sol.status == "infeasible"
    assert sol.x is None


def test_infinite_upper_bound():
    sol = solve_lp(
        LpProblem(
            objective=[-1.0],
            lower=[0.0],
            upper=[np.inf],
            constraints=(([1.0], 3.0),),
        )
    )
    assert sol.x[0] == pytest.approx(3.0)


def _random_problem(rng, n, m):
    c = rng.normal(size=n)
    lo = rng.uniform(-2, 0, size=n)
    hi = lo + rng.uniform(0.5, 2, size=n)
    mid = (lo + hi) / 2
    cons = []
    for _ in range(m):
        a = rng.normal(size=n)
        cons.append((a, float(a @ mid - rng.uniform(0, 1))))  # feasible at mid
    return LpProblem(objective=c, lower=lo, upper=hi, constraints=tuple(cons))


def test_strong_duality_random():
    rng = np.random.default_rng(42)
    for _ in range(40):
        n = int(rng.integers(2, 50))
        m = int(rng.integers(0, 100))
        p = _random_problem(rng, n, m)
        sol = solve_lp(p)
        assert sol.status == "optimal"
        assert np.all(sol.duals >= -1e-9)
        # strong duality: opt = -duals.rhs + box terms of reduced costs,
        # where reduced = c + A^T duals vanishes at interior variables
        if p.constraints:
            a_mat = np.vstack([a for a, _ in p.constraints])
            rhs = np.array([r for _, r in p.constraints])
            reduced = p.objective + a_mat.T @ sol.duals
            dual_obj = -float(sol.duals @ rhs)
        else:
            reduced = p.objective.copy()
            dual_obj = 0.0
        dual_obj += float(np.sum(np.where(reduced > 0, reduced * p.upper, reduced * p.lower)))
        assert dual_obj == pytest.approx(sol.objective_value, abs=1e-7)
        # primal feasibility
        assert np.all(sol.x >= p.lower - 1e-9) and np.all(sol.x <= p.upper + 1e-9)
        for a, r in p.constraints:
            assert a @ sol.x >= r - 1e-8


def _enumerate_vertices(p):
    """Candidate optima: intersections of n active conditions."""
    n = p.objective.shape[0]
    conds = [(a, r) for a, r in p.constraints]
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        conds.append((e, p.lower[j]))
        conds.append((-e, -p.upper[j]))
    best = None
    for combo in itertools.combinations(range(len(conds)), n):
        a_mat = np.vstack([conds[i][0] for i in combo])
        rhs = np.array([conds[i][1] for i in combo])
        try:
            x = np.linalg.solve(a_mat, rhs)
        except np.linalg.LinAlgError:
            continue
        ok = np.all(x >= p.lower - 1e-9) and np.all(x <= p.upper + 1e-9)
        ok = ok and all(a @ x >= r - 1e-9 for a, r in p.constraints)
        if ok:
            val = float(p.objective @ x)
            if best is None or val > best:
                best = val
    return best


def test_agrees_with_vertex_enumeration():
    rng = np.random.default_rng(123)
    for _ in range(25):
        n = int(rng.integers(1, 5))
        m = int(rng.integers(0, 7))
        p = _random_problem(rng, n, m)
        ref = _enumerate_vertices(p)
        sol = solve_lp(p)
        assert ref is not None
        assert sol.objective_value == pytest.approx(ref, abs=1e-7)


def test_extra_constraint_never_increases_optimum():
    rng = np.random.default_rng(77)
    for _ in range(25):
        n = int(rng.integers(2, 10))
        p = _random_problem(rng, n, int(rng.integers(0, 10)))
        sol = solve_lp(p)
        a = rng.normal(size=n)
        tightened = LpProblem(
            objective=p.objective,
            lower=p.lower,
            upper=p.upper,
            constraints=p.constraints + ((a, float(a @ sol.x - 0.1)),),
        )
        sol2 = solve_lp(tightened)
        assert sol2.status == "optimal"
        assert sol2.objective_value <= sol.objective_value + 1e-8
