"""Theta function of the complement via the dual semidefinite program.

``theta_dual(g)`` solves, with an interior-point conic solver, the dual
of the strict vector-coloring SDP:

    maximize   -sum_i p_ii
    subject to {p_ij} PSD,  sum_{i != j} p_ij >= 1,
               p_ij = 0 for non-adjacent i != j.

Its optimum equals -1/(k-1) where k is the strict vector chromatic
number, which in turn equals the Lovasz theta function of the complement
graph; the function returns ``1 - 1/optimum``.  Because this route shares
no code with the factorized primal solver, the two act as independent
cross-checks of one another.
"""
from __future__ import annotations

import math
import warnings

import numpy as np

from .graphs import Graph
from .solver import NonConvergenceError, SolverConfig

_ACCEPTED = ("optimal",)
_INACCURATE = ("optimal_inaccurate",)


def theta_dual(g: Graph, cfg: SolverConfig | None = None) -> float:
    """Lovasz theta of the complement of ``g``.

    Edgeless graphs return 1 by convention (the dual has no support to
    satisfy its normalization, and the complement is complete).  Raises
    :class:`NonConvergenceError` if the conic solver does not reach an
    optimal status or the normalization ``sum_{i != j} p_ij = 1`` fails
    to bind at the optimum.
    """
    import cvxpy as cp  # deferred: heavy import, only this entry point needs it

    cfg = cfg or SolverConfig()
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    if g.m == 0:
        return 1.0
    n = g.n
    P = cp.Variable((n, n), PSD=True)
    non_i = []
    non_j = []
    present = set(g.edges)
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in present:
                non_i.append(i)
                non_j.append(j)
    constraints = [cp.sum(P) - cp.trace(P) >= 1]
    if non_i:
        constraints.append(P[non_i, non_j] == 0)
    problem = cp.Problem(cp.Maximize(-cp.trace(P)), constraints)
    try:
        problem.solve(solver=cp.CLARABEL)
    except cp.error.SolverError:
        problem.solve(solver=cp.SCS, eps=1e-9, max_iters=200_000)
    status = problem.status
    if status in _INACCURATE:
        warnings.warn(f"theta dual solve finished with status {status}")
    elif status not in _ACCEPTED:
        raise NonConvergenceError(f"theta dual solve failed: status {status}")
    value = float(problem.value)
    if not value < 0.0 or not math.isfinite(value):
        raise NonConvergenceError(f"theta dual optimum {value} is not negative")
    Pv = np.asarray(P.value)
    mu = float(Pv.sum() - np.trace(Pv))
    if abs(mu - 1.0) > max(1e-5, 100.0 * cfg.feasibility_tol):
        raise NonConvergenceError(
            f"dual normalization did not bind: sum of off-diagonals {mu:.6g}"
        )
    return 1.0 - 1.0 / value
