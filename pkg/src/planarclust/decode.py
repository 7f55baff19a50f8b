"""Feasible clusterings (upper bounds) from an optimized lower bound.

Two decoders:

* recursive bipartitioning: visit the must-cut edges (theta < lambda) in
  random order, force each into an optimal 2-coloring of the lambda
  subproblem, and merge that cut into the solution whenever the original
  energy does not increase; accepted cut edges get lambda zeroed.

* rounding: over the pooled cut rows C, minimize theta.(C^T alpha) with a
  penalty that neutralizes cutting any negative edge beyond one,
  which is the LP dual of the bound optimization restricted to the pool;
  threshold the relaxed indicator z = C^T alpha and repair.

Energies always refer to the repaired cut (connected components of the
uncut subgraph), so every result is a feasible clustering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bound import BoundResult, CutPool, lower_bound_value
from .cut_oracle import min_cut_forced
from .graph import PlanarGraph, cut_energy, cut_from_partition, partition_from_cut
from .lp import LpProblem, solve_lp

CERTIFICATE_TOL = 1e-6


@dataclass(frozen=True)
class DecodeResult:
    partition: np.ndarray
    energy: float
    method: str  # "recursive" | "rounding"
    certificate: bool


def _result(graph, theta, cut, method, bound):
    partition = partition_from_cut(graph, cut)
    energy = cut_energy(graph, theta, cut_from_partition(graph, partition))
    certificate = bound is not None and energy - bound <= CERTIFICATE_TOL
    return DecodeResult(partition=partition, energy=energy, method=method, certificate=certificate)


def decode_recursive(
    graph: PlanarGraph,
    theta,
    lam,
    seed: int = 0,
    restart: int = 0,
    bound: float | None = None,
) -> DecodeResult:
    """One pass of recursive bipartitioning with a seeded edge order.

    `lam` should come from a converged bound run; `bound` defaults to its
    implied value sum(min(theta - lam, 0)).
    """
    theta = np.asarray(theta, dtype=float)
    lam = np.array(lam, dtype=float, copy=True)
    if bound is None:
        bound = lower_bound_value(theta, lam)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, restart])))
    must_cut = np.flatnonzero(theta - lam < 0.0)
    order = rng.permutation(must_cut)

    s = np.zeros(graph.edge_count, dtype=bool)
    current_energy = 0.0
    for e in order:
        x, _ = min_cut_forced(graph, lam, int(e))
        s2 = s | x
        if np.array_equal(s2, s):
            candidate_energy = current_energy
        else:
            repaired = cut_from_partition(graph, partition_from_cut(graph, s2))
            candidate_energy = cut_energy(graph, theta, repaired)
        if candidate_energy <= current_energy:
            s = s2
            current_energy = candidate_energy
            lam[x] = 0.0
    return _result(graph, theta, s, "recursive", bound)


def decode_rounding(
    graph: PlanarGraph,
    theta,
    pool: CutPool,
    threshold: float = 0.5,
    bound: float | None = None,
) -> DecodeResult:
    """Decode by solving the pool-restricted dual LP and thresholding.

    Variables are one weight alpha_i >= 0 per pooled cut and one slack per
    negative edge; minimize theta.z - sum_neg theta_e * s_e with
    s_e >= z_e - 1, z = C^T alpha.  When `bound` is omitted the LP's own
    optimum is used for the certificate, which equals the bound LP value
    on the same pool (strong duality), so it is only meaningful for pools
    from a converged run.
    """
    theta = np.asarray(theta, dtype=float)
    if not (0.0 < threshold < 1.0):
        raise ValueError("threshold must lie strictly between 0 and 1")
    m = graph.edge_count
    rows = pool.matrix(m).astype(float)
    k = rows.shape[0]
    if k == 0:
        if bound is None:
            bound = 0.0
        return _result(graph, theta, np.zeros(m, dtype=bool), "rounding", bound)

    neg_idx = np.flatnonzero(theta < 0)
    n_vars = k + neg_idx.size
    objective = np.zeros(n_vars)
    objective[:k] = -(rows @ theta)  # maximize the negated min-objective
    objective[k:] = theta[neg_idx]  # -(-theta_e) per slack
    lower = np.zeros(n_vars)
    upper = np.full(n_vars, np.inf)
    constraints = []
    for j, e in enumerate(neg_idx):
        a = np.zeros(n_vars)
        a[:k] = -rows[:, e]
        a[k + j] = 1.0
        constraints.append((a, -1.0))
    sol = solve_lp(
        LpProblem(objective=objective, lower=lower, upper=upper, constraints=tuple(constraints))
    )
    if sol.status != "optimal":
        raise RuntimeError("rounding LP unexpectedly infeasible")
    alpha = sol.x[:k]
    z = rows.T @ alpha
    x = z >= threshold
    if bound is None:
        bound = -sol.objective_value  # the minimized objective
    return _result(graph, theta, x, "rounding", bound)


def best_decode(
    graph: PlanarGraph,
    theta,
    bound_result: BoundResult,
    restarts: int = 10,
    seed: int = 0,
    threshold: float = 0.5,
) -> DecodeResult:
    """Rounding once plus up to `restarts` randomized recursive passes.

    Returns the minimum-energy result, stopping early as soon as the
    energy matches the lower bound to certificate tolerance.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    theta = np.asarray(theta, dtype=float)
    bound = bound_result.bound
    best = decode_rounding(graph, theta, bound_result.pool, threshold, bound=bound)
    if best.certificate:
        return best
    for r in range(restarts):
        res = decode_recursive(graph, theta, bound_result.lam, seed=seed, restart=r, bound=bound)
        if res.energy < best.energy:
            best = res
        if best.certificate:
            break
    return best
