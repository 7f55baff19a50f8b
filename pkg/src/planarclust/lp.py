"""Small dense LP solver: box-bounded variables, >=-inequalities, duals.

Problems here are tiny (one variable per negative edge, tens to a few
hundred cut constraints), so this wraps scipy's HiGHS backend rather than
hand-rolling a simplex; the module contract (maximize, a.x >= rhs
constraints, nonnegative constraint duals, strong duality) is what the
rest of the package and the tests depend on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog


class LpError(RuntimeError):
    pass


@dataclass(frozen=True)
class LpProblem:
    """maximize objective . x  s.t.  lower <= x <= upper, a . x >= rhs.

    Upper bounds may be +inf (the bound LP never needs that, the rounding
    and no-upper-bound variants do); lower bounds must be finite so the
    maximization cannot be unbounded below feasibility.
    """

    objective: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    constraints: tuple = ()

    def __post_init__(self):
        obj = np.asarray(self.objective, dtype=float)
        lo = np.asarray(self.lower, dtype=float)
        hi = np.asarray(self.upper, dtype=float)
        if not (obj.shape == lo.shape == hi.shape):
            raise ValueError("objective and bounds must share a shape")
        if not np.all(np.isfinite(lo)):
            raise ValueError("lower bounds must be finite")
        if np.any(lo > hi):
            raise ValueError("lower bound exceeds upper bound")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        rows = tuple(
            (np.asarray(a, dtype=float), float(rhs)) for a, rhs in self.constraints
        )
        for a, _ in rows:
            if a.shape != obj.shape:
                raise ValueError("constraint row has wrong length")
        object.__setattr__(self, "constraints", rows)


@dataclass(frozen=True)
class LpSolution:
    """Primal solution plus nonnegative constraint multipliers.

    The duals satisfy complementary slackness and strong duality in the
    form  objective_value = -duals.rhs + box terms of (objective + A^T
    duals), i.e. reduced costs vanish at variables strictly inside their
    box.
    """

    status: str  # "optimal" | "infeasible"
    x: np.ndarray | None
    duals: np.ndarray | None
    objective_value: float | None


_HIGHS_OPTS = {
    "primal_feasibility_tolerance": 1e-10,
    "dual_feasibility_tolerance": 1e-10,
}


def solve_lp(problem: LpProblem) -> LpSolution:
    """Solve to optimality; feasibility ~1e-9, duality gap ~1e-8."""
    n = problem.objective.shape[0]
    if n == 0:
        return LpSolution("optimal", np.zeros(0), np.zeros(len(problem.constraints)), 0.0)
    if problem.constraints:
        a_ub = -np.vstack([a for a, _ in problem.constraints])
        b_ub = -np.array([rhs for _, rhs in problem.constraints])
    else:
        a_ub = None
        b_ub = None
    res = linprog(
        c=-problem.objective,
        A_ub=a_ub,
        b_ub=b_ub,
        bounds=list(zip(problem.lower, problem.upper)),
        method="highs",
        options=_HIGHS_OPTS,
    )
    if res.status == 2:
        return LpSolution("infeasible", None, None, None)
    if res.status != 0:
        raise LpError(f"LP solver failed: status {res.status}: {res.message}")
    duals = (
        -np.asarray(res.ineqlin.marginals, dtype=float)
        if problem.constraints
        else np.zeros(0)
    )
    # tiny negative multipliers are solver noise
    duals = np.where(np.abs(duals) < 1e-11, 0.0, duals)
    return LpSolution("optimal", np.asarray(res.x), duals, float(-res.fun))
