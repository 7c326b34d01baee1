"""Vector-coloring SDP solver.

Solves ``minimize alpha`` over symmetric PSD matrices with unit diagonal
subject to ``m_ij <= alpha`` on edges (inequality variant) or
``m_ij = alpha`` (strict variant).  The matrix is kept factorized as
``M = V V^T`` with unit rows, which makes positive semidefiniteness and
the unit diagonal structural rather than constraints.  The inequality
variant minimizes a log-sum-exp surrogate of the maximum edge entry with
a decreasing temperature; the strict variant drives all edge entries to
a common value with an augmented-Lagrangian schedule.  Smooth inner
minimizations are delegated to L-BFGS.

The value reported is ``k = 1 - 1/alpha`` computed from the entries the
factor actually achieves, so every returned solution is feasible by
construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.optimize import minimize

from .graphs import Graph
from ._seeding import derive_seed

FULL_RANK_LIMIT = 96  # below this the factor has full rank n
DEFAULT_RANK_CAP = 32


class SolverError(RuntimeError):
    """Structural failure: invalid input matrix or degenerate geometry."""


class NonConvergenceError(RuntimeError):
    """An SDP solve failed to reach the requested tolerances."""


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and budget for an SDP solve.

    ``feasibility_tol`` bounds constraint residuals (edge-entry spread in
    the strict variant); ``objective_tol`` bounds the distance of the
    achieved alpha from the optimum; ``max_iterations`` caps inner
    iterations per restart.
    """

    feasibility_tol: float = 1e-6
    objective_tol: float = 1e-4
    max_iterations: int = 40000
    seed: int = 0
    restarts: int = 3
    rank_cap: int | None = None

    def __post_init__(self) -> None:
        if self.feasibility_tol <= 0 or self.objective_tol <= 0:
            raise ValueError("tolerances must be strictly positive")
        if self.max_iterations <= 0 or self.restarts <= 0:
            raise ValueError("iteration and restart counts must be positive")


def k_from_alpha(alpha: float) -> float:
    """Relaxation value k = 1 - 1/alpha; infinite for alpha >= 0."""
    if alpha < 0.0:
        return 1.0 - 1.0 / alpha
    return math.inf


@dataclass(frozen=True, eq=False)
class MatrixColoring:
    """Gram-matrix form of a vector coloring.

    ``gram`` is symmetric PSD with unit diagonal; ``alpha`` is the largest
    edge entry actually achieved, and ``k_value = 1 - 1/alpha``.
    """

    gram: np.ndarray
    alpha: float
    k_value: float
    converged: bool = True


@dataclass(frozen=True, eq=False)
class VectorColoring:
    """Unit vectors, one per vertex, with edge dot products <= -1/(k-1)."""

    vectors: np.ndarray
    k_value: float

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]

    def restrict(self, vertices) -> "VectorColoring":
        """Vectors for an induced subgraph (same k is still valid)."""
        return VectorColoring(self.vectors[list(vertices)], self.k_value)


def result_to_json_dict(mc: MatrixColoring, vc: VectorColoring) -> dict:
    """Serializable form of a solve result (full-precision floats)."""
    return {
        "n": vc.n,
        "k_value": vc.k_value,
        "alpha": mc.alpha,
        "converged": mc.converged,
        "vectors": [[float(x) for x in row] for row in vc.vectors],
    }


class _EdgeWorkspace:
    """Per-solve scratch: edge index arrays and a reusable weighted-adjacency
    CSR whose data slots map to edge ids (gradient assembly without
    rebuilding sparsity every evaluation).

    Edge dot products gather endpoint rows into preallocated buffers
    (cheaper and steadier than building the full Gram matrix, whose
    repeated small matmuls stall on BLAS thread churn).
    """

    def __init__(self, g: Graph):
        arr = g.edge_array()
        self.ei = np.ascontiguousarray(arr[:, 0])
        self.ej = np.ascontiguousarray(arr[:, 1])
        m = arr.shape[0]
        n = g.n
        rows = np.concatenate([self.ei, self.ej])
        cols = np.concatenate([self.ej, self.ei])
        eid = np.concatenate([np.arange(m), np.arange(m)])
        order = np.lexsort((cols, rows))
        self.slot_edge = eid[order]
        indices = cols[order].astype(np.int32)
        counts = np.bincount(rows, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        self.adj = sp.csr_matrix(
            (np.zeros(2 * m), indices, indptr), shape=(n, n)
        )
        self._buf_i: np.ndarray | None = None
        self._buf_j: np.ndarray | None = None

    def dots(self, V: np.ndarray) -> np.ndarray:
        if self._buf_i is None or self._buf_i.shape != (self.ei.size, V.shape[1]):
            self._buf_i = np.empty((self.ei.size, V.shape[1]))
            self._buf_j = np.empty_like(self._buf_i)
        np.take(V, self.ei, axis=0, out=self._buf_i)
        np.take(V, self.ej, axis=0, out=self._buf_j)
        np.multiply(self._buf_i, self._buf_j, out=self._buf_i)
        return self._buf_i.sum(axis=1)

    def weighted_grad(self, V: np.ndarray, w: np.ndarray) -> np.ndarray:
        """Gradient of sum_e w_e <v_i, v_j> with respect to the rows of V."""
        self.adj.data[:] = w[self.slot_edge]
        return self.adj @ V


def _normalize_rows(W: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    norms = np.linalg.norm(W, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    return W / norms, norms


def _sphere_grad(G: np.ndarray, V: np.ndarray, norms: np.ndarray) -> np.ndarray:
    """Chain a gradient in V through the row normalization V = W/|W|."""
    radial = np.einsum("ij,ij->i", G, V)[:, None]
    return (G - radial * V) / norms


def _rank_for(n: int, cfg: SolverConfig) -> int:
    if cfg.rank_cap is not None:
        return max(2, min(n, cfg.rank_cap))
    if n <= FULL_RANK_LIMIT:
        return n
    return DEFAULT_RANK_CAP


def _edgeless_result(n: int) -> tuple[MatrixColoring, VectorColoring]:
    # No edge constraints bind: one color suffices, k = 1 by convention.
    gram = np.ones((n, n))
    vectors = np.ones((n, 1))
    return (
        MatrixColoring(gram=gram, alpha=1.0, k_value=1.0, converged=True),
        VectorColoring(vectors=vectors, k_value=1.0),
    )


def solve_vector_coloring(
    g: Graph, cfg: SolverConfig | None = None
) -> tuple[MatrixColoring, VectorColoring]:
    """Solve the inequality vector-coloring SDP for ``g``.

    Returns the Gram matrix with its achieved ``alpha`` (maximum edge
    entry) and the factored unit vectors.  Edgeless graphs return the
    all-equal solution with k = 1.  Non-convergence within the iteration
    budget is reported through ``MatrixColoring.converged`` on the best
    feasible iterate rather than raised.
    """
    cfg = cfg or SolverConfig()
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    if g.m == 0:
        return _edgeless_result(g.n)
    ws = _EdgeWorkspace(g)
    n, m = g.n, g.m
    p = _rank_for(n, cfg)
    log_m = math.log(max(m, 2))
    small = n <= FULL_RANK_LIMIT
    precise = cfg.objective_tol < 1e-3  # loose solves get cheap inner loops
    stage_cap = (1500 if precise else 300) if small else 100
    anneal = 0.35 if small else 0.22
    gtol = 1e-12 if (small and precise) else 1e-7

    def objective(x: np.ndarray, temp: float) -> tuple[float, np.ndarray]:
        V, norms = _normalize_rows(x.reshape(n, p))
        d = ws.dots(V)
        z = d * (1.0 / temp)
        zmax = z.max()
        np.exp(z - zmax, out=z)
        total = z.sum()
        f = temp * (zmax + math.log(total))
        z *= 1.0 / total
        G = ws.weighted_grad(V, z)
        return f, _sphere_grad(G, V, norms).ravel()

    best_alpha = math.inf
    best_V = None
    best_converged = False
    for restart in range(cfg.restarts):
        rng = np.random.default_rng(derive_seed(cfg.seed, "vc-restart", restart))
        x = rng.standard_normal(n * p)
        temp = 0.5
        prev_alpha = math.inf
        alpha = math.inf
        iters = 0
        converged = False
        for _stage in range(60):
            res = minimize(
                objective,
                x,
                args=(temp,),
                jac=True,
                method="L-BFGS-B",
                options=dict(
                    maxiter=min(stage_cap, max(50, cfg.max_iterations - iters)),
                    maxfun=2 * stage_cap,
                    ftol=1e-16,
                    gtol=gtol,
                ),
            )
            x = res.x
            iters += res.nit
            V, _ = _normalize_rows(x.reshape(n, p))
            alpha = float(ws.dots(V).max())
            window = (0.25 if precise else 1.0) * cfg.objective_tol
            smoothing_done = temp * log_m < 0.25 * cfg.objective_tol
            settled = abs(prev_alpha - alpha) < window
            if smoothing_done and settled:
                converged = True
                break
            if iters >= cfg.max_iterations:
                break
            prev_alpha = alpha
            temp *= anneal
        if alpha < best_alpha:
            best_alpha = alpha
            best_V = V
            best_converged = converged
    gram = best_V @ best_V.T
    np.fill_diagonal(gram, 1.0)
    k = k_from_alpha(best_alpha)
    mc = MatrixColoring(
        gram=gram, alpha=best_alpha, k_value=k, converged=best_converged
    )
    return mc, VectorColoring(vectors=best_V, k_value=k)


def solve_strict_vector_coloring(
    g: Graph, cfg: SolverConfig | None = None
) -> tuple[MatrixColoring, VectorColoring]:
    """Solve the strict variant: all edge entries equal to alpha.

    The equality constraints are enforced by an augmented-Lagrangian
    schedule on the factorized problem; the reported alpha is the mean
    edge entry once the spread is within ``feasibility_tol``.
    """
    cfg = cfg or SolverConfig()
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    if g.m == 0:
        return _edgeless_result(g.n)
    ws = _EdgeWorkspace(g)
    n, m = g.n, g.m
    p = _rank_for(n, cfg)
    stage_cap = 800 if n <= FULL_RANK_LIMIT else 300

    def lagrangian(
        x: np.ndarray, lam: np.ndarray, rho: float
    ) -> tuple[float, np.ndarray]:
        V, norms = _normalize_rows(x[:-1].reshape(n, p))
        s = x[-1]
        d = ws.dots(V)
        c = d - s
        f = s + lam @ c + 0.5 * rho * (c @ c)
        we = lam + rho * c
        G = ws.weighted_grad(V, we)
        gV = _sphere_grad(G, V, norms).ravel()
        gs = 1.0 - we.sum()
        return f, np.concatenate([gV, [gs]])

    best: tuple[bool, float, float, np.ndarray] | None = None
    for restart in range(cfg.restarts):
        rng = np.random.default_rng(derive_seed(cfg.seed, "strict-restart", restart))
        W = rng.standard_normal((n, p))
        V, _ = _normalize_rows(W)
        x = np.concatenate([W.ravel(), [float(ws.dots(V).mean())]])
        lam = np.full(m, 1.0 / m)
        rho = 4.0
        prev_viol = math.inf
        iters = 0
        for _outer in range(80):
            res = minimize(
                lagrangian,
                x,
                args=(lam, rho),
                jac=True,
                method="L-BFGS-B",
                options=dict(
                    maxiter=min(stage_cap, max(50, cfg.max_iterations - iters)),
                    maxfun=2 * stage_cap,
                    ftol=1e-16,
                    gtol=1e-12,
                ),
            )
            x = res.x
            iters += res.nit
            V, _ = _normalize_rows(x[:-1].reshape(n, p))
            d = ws.dots(V)
            c = d - x[-1]
            viol = float(np.abs(c).max())
            lam = lam + rho * c
            if viol <= 0.5 * cfg.feasibility_tol:
                break
            if iters >= cfg.max_iterations:
                break
            if viol > 0.3 * prev_viol:
                rho = min(rho * 5.0, 1e9)
            prev_viol = viol
        d = ws.dots(V)
        alpha = float(d.mean())
        spread = float(np.abs(d - alpha).max())
        feasible = spread <= cfg.feasibility_tol
        candidate = (feasible, spread, alpha, V)
        if best is None:
            best = candidate
        else:
            b_feasible, b_spread, b_alpha, _ = best
            if feasible != b_feasible:
                if feasible:
                    best = candidate
            elif (alpha < b_alpha) if feasible else (spread < b_spread):
                best = candidate
    feasible, _, alpha, V = best
    gram = V @ V.T
    np.fill_diagonal(gram, 1.0)
    k = k_from_alpha(alpha)
    mc = MatrixColoring(gram=gram, alpha=alpha, k_value=k, converged=feasible)
    return mc, VectorColoring(vectors=V, k_value=k)


def make_simplex_vectors(k: int, dim: int | None = None) -> np.ndarray:
    """The k unit vectors whose pairwise dot products are all -1/(k-1).

    Each vector is ``sqrt((k-1)/k)`` in its own coordinate and
    ``-sqrt(1/(k(k-1)))`` elsewhere; the construction lives in the
    hyperplane orthogonal to the all-ones vector, so it fits in dimension
    k-1.  ``dim`` defaults to k-1; larger dims are zero-padded, and
    ``dim == k-1`` applies the exact rotation into k-1 coordinates.
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if dim is None:
        dim = k - 1
    if dim < k - 1:
        raise ValueError(f"need dim >= k-1 = {k - 1}, got {dim}")
    off = -math.sqrt(1.0 / (k * (k - 1)))
    peak = math.sqrt((k - 1) / k)
    base = np.full((k, k), off)
    np.fill_diagonal(base, peak)
    if dim >= k:
        out = np.zeros((k, dim))
        out[:, :k] = base
        return out
    # dim == k-1: reflect the all-ones direction onto e1, then drop it.
    u = np.full(k, 1.0 / math.sqrt(k))
    u[0] -= 1.0
    u /= np.linalg.norm(u)
    reflected = base - 2.0 * np.outer(base @ u, u)
    return reflected[:, 1:]


def factor_gram(mc: MatrixColoring, delta: float) -> VectorColoring:
    """Factor a Gram matrix into row vectors with ``|UU^T - M|_inf <= delta``.

    Small negative eigenvalues (numerical noise) are clipped to zero;
    an eigenvalue below ``-100 * delta`` means the matrix is genuinely
    not PSD and is a hard error.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    M = np.asarray(mc.gram, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("gram matrix must be square")
    eigvals, eigvecs = np.linalg.eigh(M)
    if eigvals[0] < -100.0 * delta:
        raise SolverError(
            f"matrix is not PSD: smallest eigenvalue {eigvals[0]:.3e} "
            f"< -100*delta = {-100 * delta:.3e}"
        )
    clipped = np.clip(eigvals, 0.0, None)
    order = np.argsort(clipped)[::-1]
    U = eigvecs[:, order] * np.sqrt(clipped[order])
    err = float(np.abs(U @ U.T - M).max())
    if err > delta:
        raise SolverError(
            f"factorization residual {err:.3e} exceeds delta {delta:.3e}"
        )
    alpha_eff = mc.alpha + err
    return VectorColoring(vectors=U, k_value=k_from_alpha(alpha_eff))


def project_neighborhood(vc: VectorColoring, g: Graph, i: int) -> VectorColoring:
    """Vector (k-1)-coloring of the neighborhood of vertex ``i``.

    Rotates coordinates so the vector of ``i`` becomes e1, drops that
    coordinate from every neighbor vector, and renormalizes.  Vectors are
    returned in increasing neighbor order.  A neighbor vector parallel to
    the vector of ``i`` makes the projection degenerate and is an error.
    """
    k = vc.k_value
    if not k > 2.0:
        raise ValueError(f"neighborhood projection needs k > 2, got k={k}")
    neighbors = g.neighbors(i)
    if not neighbors:
        raise ValueError(f"vertex {i} has no neighbors")
    if vc.dimension < 2:
        raise ValueError("need vectors of dimension >= 2 to project")
    vi = vc.vectors[i]
    vi = vi / np.linalg.norm(vi)
    u = vi.copy()
    u[0] -= 1.0
    unorm = np.linalg.norm(u)
    rows = vc.vectors[list(neighbors)]
    if unorm > 1e-12:
        u /= unorm
        rotated = rows - 2.0 * np.outer(rows @ u, u)
    else:
        rotated = rows.copy()
    tail = rotated[:, 1:]
    tail_norms = np.linalg.norm(tail, axis=1)
    bad = np.nonzero(tail_norms <= 1e-9)[0]
    if bad.size:
        vertex = neighbors[int(bad[0])]
        raise SolverError(
            f"projection degenerates at vertex {vertex}: its vector is "
            f"parallel to the vector of vertex {i}"
        )
    projected = tail / tail_norms[:, None]
    return VectorColoring(vectors=projected, k_value=k - 1.0)
