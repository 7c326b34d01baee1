"""Rounding vector colorings into legal colorings.

Two randomized schemes convert a vector coloring into a semicoloring (a
legal partial coloring covering at least half the vertices):

- hyperplane partitions: independent random hyperplanes split the sphere
  into sign-pattern regions, one color per region, retrying until few
  edges are uncut and deleting one endpoint of each uncut edge;
- projection capture: all vertices whose vector projects beyond a
  threshold c along a random normal vector form a sparse subgraph, from
  which an independent set is extracted and given one fresh color.

A semicoloring routine is lifted to a full coloring by recursing on the
uncolored half with fresh colors.  High-degree vertices are handled
first by Wigderson-style reduction: their neighborhoods carry a vector
coloring with one color fewer, so they can be 2-colored directly (k ~ 3)
or recursed into via coordinate projection (larger k).

All randomness is drawn through seeds derived from the configured master
seed, so identical configurations produce bit-identical colorings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from ._seeding import derive_seed
from .graphs import Graph, bipartition, induced_subgraph
from .solver import (
    SolverConfig,
    SolverError,
    VectorColoring,
    project_neighborhood,
    solve_vector_coloring,
)

_MAX_HYPERPLANES = 62  # int64 sign patterns; 2^62 regions exceed any use
_BIPARTITE_K_MARGIN = 0.05  # k below 2 + margin: try BFS 2-coloring first
_WIG_BIPARTITE_LIMIT = 3.02  # k at most this: neighborhoods are 2-colorable


class RoundingContractError(RuntimeError):
    """A rounding phase produced an illegal or undersized (semi)coloring."""


@dataclass(frozen=True)
class RoundingConfig:
    """Knobs for the rounding pipeline.

    ``trials_per_extraction`` defaults to max(20, ceil(10 ln n)) when
    None.  ``greedy_delta_floor`` is the residual max degree at which
    greedy (max degree + 1)-coloring takes over.
    """

    method: str = "auto"  # hyperplane | projection | auto
    seed: int = 0
    hyperplane_count_override: int | None = None
    trials_per_extraction: int | None = None
    wigderson_delta_override: float | None = None
    greedy_delta_floor: int = 16

    def __post_init__(self) -> None:
        if self.method not in ("hyperplane", "projection", "auto"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.hyperplane_count_override is not None and self.hyperplane_count_override < 1:
            raise ValueError("hyperplane count must be positive")
        if self.trials_per_extraction is not None and self.trials_per_extraction < 1:
            raise ValueError("trials_per_extraction must be positive")
        if self.greedy_delta_floor < 1:
            raise ValueError("greedy_delta_floor must be positive")


@dataclass(frozen=True)
class Semicoloring:
    """Legal partial coloring; producers must cover at least half of n."""

    n: int
    assignment: dict[int, int]
    colors_used: int
    uncolored: frozenset[int]
    conforming: bool = True


@dataclass(frozen=True)
class Coloring:
    """Legal total coloring with per-phase statistics."""

    assignment: tuple[int, ...]
    colors_used: int
    stats: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CaptureResult:
    """Outcome of one projection trial: the captured vertex set with the
    number of edges induced inside it."""

    captured: frozenset[int]
    induced_edges: int
    threshold_c: float
    trial_seed: int

    @property
    def surplus(self) -> int:
        """n' - m': lower bound on the independent set extractable."""
        return len(self.captured) - self.induced_edges


@dataclass(frozen=True)
class WigdersonResult:
    """Partial coloring from degree reduction plus the residual graph."""

    assignment: dict[int, int]
    colors_used: int
    residual: Graph
    residual_vertices: tuple[int, ...]


def normal_density(x: float) -> float:
    """Standard normal density phi(x)."""
    return math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def normal_tail(x: float) -> float:
    """Upper tail N(x) of the standard normal distribution.

    Computed through the complementary error function, accurate to full
    double precision across the whole real line.
    """
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def sample_standard_normal_vector(dim: int, seed: int) -> np.ndarray:
    """Vector of ``dim`` i.i.d. standard normals, deterministic per seed."""
    if dim < 1:
        raise ValueError(f"need dim >= 1, got {dim}")
    return np.random.default_rng(seed).standard_normal(dim)


def separation_probability_estimate(
    v1: np.ndarray, v2: np.ndarray, trials: int, seed: int
) -> float:
    """Monte Carlo estimate of the probability that a random hyperplane
    separates two unit vectors (exact value: angle / pi)."""
    if trials < 1:
        raise ValueError("need at least one trial")
    v1 = np.asarray(v1, dtype=float)
    v2 = np.asarray(v2, dtype=float)
    rng = np.random.default_rng(seed)
    R = rng.standard_normal((trials, v1.shape[0]))
    s1 = (R @ v1) >= 0.0
    s2 = (R @ v2) >= 0.0
    return float(np.mean(s1 != s2))


def _trials_budget(cfg: RoundingConfig, n: int) -> int:
    if cfg.trials_per_extraction is not None:
        return cfg.trials_per_extraction
    return max(20, math.ceil(10.0 * math.log(max(n, 2))))


def _hyperplane_count(k: float, max_degree: int, override: int | None) -> int:
    """Number of hyperplanes: 2 + ceil(log_{1/q} max_degree) where q is the
    per-hyperplane probability of missing an edge.  At k = 3 this is the
    classical 2 + ceil(log_3 max_degree)."""
    if override is not None:
        return min(override, _MAX_HYPERPLANES)
    if max_degree <= 1:
        return 2
    bound = max(-1.0, min(1.0, -1.0 / (max(k, 2.0) - 1.0)))
    q = 1.0 - math.acos(bound) / math.pi
    if q <= 0.0:
        return 2
    extra = math.ceil(math.log(max_degree) / math.log(1.0 / q) - 1e-9)
    return min(2 + max(extra, 0), _MAX_HYPERPLANES)


def _all_one_color(n: int) -> Semicoloring:
    return Semicoloring(
        n=n,
        assignment={v: 0 for v in range(n)},
        colors_used=1 if n else 0,
        uncolored=frozenset(),
        conforming=True,
    )


def hyperplane_semicolor(
    vc: VectorColoring, g: Graph, cfg: RoundingConfig | None = None
) -> Semicoloring:
    """Semicolor by sign patterns of random hyperplane projections.

    Draws fresh hyperplane sets until at most n/4 edges are uncut (per
    the trial budget), then deletes one endpoint of each uncut edge,
    leaving at least 3n/4 legally colored vertices.  If the budget is
    exhausted the best attempt is returned flagged non-conforming.
    """
    cfg = cfg or RoundingConfig()
    n = g.n
    if n == 0:
        return Semicoloring(0, {}, 0, frozenset(), True)
    if g.m == 0:
        return _all_one_color(n)
    arr = g.edge_array()
    ei, ej = arr[:, 0], arr[:, 1]
    r_count = _hyperplane_count(vc.k_value, g.max_degree, cfg.hyperplane_count_override)
    weights = 1 << np.arange(r_count, dtype=np.int64)
    budget = _trials_budget(cfg, n)
    best_codes = None
    best_uncut = None
    accepted = False
    for attempt in range(budget):
        seed = derive_seed(cfg.seed, "hyperplane", attempt)
        R = np.random.default_rng(seed).standard_normal((r_count, vc.dimension))
        signs = (vc.vectors @ R.T) >= 0.0  # dot exactly 0 counts positive
        codes = signs @ weights
        uncut = codes[ei] == codes[ej]
        count = int(uncut.sum())
        if best_uncut is None or count < best_uncut:
            best_uncut = count
            best_codes = codes
        if 4 * count <= n:
            accepted = True
            break
    codes = best_codes
    uncut_mask = codes[ei] == codes[ej]
    uncut_edges = list(zip(ei[uncut_mask].tolist(), ej[uncut_mask].tolist()))
    uncut_deg = np.zeros(n, dtype=np.intp)
    for u, v in uncut_edges:
        uncut_deg[u] += 1
        uncut_deg[v] += 1
    assigned = np.ones(n, dtype=bool)
    for u, v in uncut_edges:
        if assigned[u] and assigned[v]:
            drop = u if (uncut_deg[u], u) >= (uncut_deg[v], v) else v
            assigned[drop] = False
    color_of_code: dict[int, int] = {}
    assignment: dict[int, int] = {}
    for v in range(n):
        if not assigned[v]:
            continue
        code = int(codes[v])
        if code not in color_of_code:
            color_of_code[code] = len(color_of_code)
        assignment[v] = color_of_code[code]
    uncolored = frozenset(v for v in range(n) if not assigned[v])
    conforming = accepted and 2 * len(assignment) >= n
    return Semicoloring(
        n=n,
        assignment=assignment,
        colors_used=len(color_of_code),
        uncolored=uncolored,
        conforming=conforming,
    )


def compute_capture_params(
    k: float, delta_max: int, greedy_delta_floor: int = 16
) -> tuple[float, float]:
    """Capture geometry for a vector k-coloring at maximum degree delta_max.

    Returns ``a = sqrt(2(k-1)/(k-2))`` (edge sum-vector factor) and the
    projection threshold ``c = sqrt(2 ((k-2)/k) ln delta_max)``.  A zero c
    signals that the degree is small enough for the greedy fallback.
    """
    if k <= 2.0:
        raise ValueError(
            f"capture parameters need k > 2 (got k={k}); use bipartite coloring"
        )
    a = math.sqrt(2.0 * (k - 1.0) / (k - 2.0))
    if delta_max <= greedy_delta_floor or delta_max < 2:
        return a, 0.0
    c = math.sqrt(2.0 * ((k - 2.0) / k) * math.log(delta_max))
    return a, c


def projection_capture(
    vc: VectorColoring, g: Graph, c: float, seed: int
) -> CaptureResult:
    """Capture all vertices whose vector projects at least c along one
    random standard normal vector; count the edges they induce."""
    if c < 0.0:
        raise ValueError(f"threshold c must be nonnegative, got {c}")
    r = sample_standard_normal_vector(vc.dimension, seed)
    proj = vc.vectors @ r
    captured = frozenset(int(v) for v in np.nonzero(proj >= c)[0])
    adj = g.adjacency_sets
    induced = sum(len(adj[v] & captured) for v in captured) // 2
    return CaptureResult(
        captured=captured, induced_edges=induced, threshold_c=c, trial_seed=seed
    )


def extract_independent_set(g: Graph, cap: CaptureResult) -> frozenset[int]:
    """Independent subset of the captured set of size at least n' - m'.

    Greedy endpoint deletion: repeatedly remove the vertex with the most
    captured neighbors (each removal kills at least one induced edge).
    """
    return _greedy_independent_in(g.adjacency_sets, cap.captured)


def _greedy_coloring(g: Graph) -> dict[int, int]:
    """Greedy coloring in descending-degree order; uses <= max_degree + 1
    colors, returned densely numbered from 0."""
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    colors: dict[int, int] = {}
    for v in order:
        used = {colors[w] for w in g.adjacency[v] if w in colors}
        color = 0
        while color in used:
            color += 1
        colors[v] = color
    return colors


def _greedy_independent_set(g: Graph) -> frozenset[int]:
    """Maximal independent set by ascending-degree greedy."""
    active = set(range(g.n))
    chosen: set[int] = set()
    for v in sorted(range(g.n), key=lambda v: (g.degree(v), v)):
        if v in active:
            chosen.add(v)
            active.discard(v)
            active.difference_update(g.adjacency[v])
    return frozenset(chosen)


def _best_capture(
    vc: VectorColoring,
    g: Graph,
    c: float,
    cfg: RoundingConfig,
    seed_parts: tuple,
) -> CaptureResult:
    """Best of the trial budget by captured-minus-induced, ties to the
    earliest trial."""
    budget = _trials_budget(cfg, g.n)
    best: CaptureResult | None = None
    for trial in range(budget):
        seed = derive_seed(cfg.seed, *seed_parts, trial)
        cap = projection_capture(vc, g, c, seed)
        if best is None or cap.surplus > best.surplus:
            best = cap
    return best


def _capture_fallback_vertex(vc: VectorColoring, cap: CaptureResult) -> frozenset[int]:
    """Single vertex of maximum projection for the winning trial (always
    independent alone, so an extraction round cannot fail to progress)."""
    r = sample_standard_normal_vector(vc.dimension, cap.trial_seed)
    proj = vc.vectors @ r
    return frozenset([int(np.argmax(proj))])


def _greedy_independent_in(adj, captured: frozenset[int]) -> frozenset[int]:
    """Endpoint-deletion on the subgraph induced by a captured set: drop
    the highest-degree captured vertex until no induced edge remains."""
    survivors = set(captured)
    deg = {v: len(adj[v] & survivors) for v in survivors}
    while True:
        worst = None
        worst_deg = 0
        for v in sorted(survivors):
            if deg[v] > worst_deg:
                worst_deg = deg[v]
                worst = v
        if worst is None:
            break
        survivors.discard(worst)
        for w in adj[worst] & survivors:
            deg[w] -= 1
    return frozenset(survivors)


def projection_semicolor(
    vc: VectorColoring, g: Graph, cfg: RoundingConfig | None = None
) -> Semicoloring:
    """Semicolor by repeated projection capture.

    Each extraction recomputes (a, c) from the residual max degree, takes
    the best capture out of the trial budget (captured-minus-induced,
    ties to the earliest trial), extracts an independent set and assigns
    it one fresh color.  Once the residual max degree falls to the greedy
    floor, a greedy coloring finishes the whole residual.  The residual
    is tracked as an active vertex set; captures and induced-edge counts
    only ever look inside it.
    """
    cfg = cfg or RoundingConfig()
    n = g.n
    if n == 0:
        return Semicoloring(0, {}, 0, frozenset(), True)
    adj = g.adjacency_sets
    active = set(range(n))
    assignment: dict[int, int] = {}
    next_color = 0
    target = (n + 1) // 2
    budget = _trials_budget(cfg, n)
    extraction = 0
    while len(assignment) < target:
        residual_degree = max(len(adj[v] & active) for v in active)
        if residual_degree <= cfg.greedy_delta_floor:
            sub, old_ids = induced_subgraph(g, active)
            local = _greedy_coloring(sub)
            for v_local, color in local.items():
                assignment[old_ids[v_local]] = next_color + color
            next_color += 1 + max(local.values()) if local else 0
            active.clear()
            break
        _, c = compute_capture_params(
            vc.k_value, residual_degree, cfg.greedy_delta_floor
        )
        best_captured: frozenset[int] | None = None
        best_surplus = None
        best_seed = 0
        for trial in range(budget):
            seed = derive_seed(cfg.seed, "capture", extraction, trial)
            r = sample_standard_normal_vector(vc.dimension, seed)
            proj = vc.vectors @ r
            captured = frozenset(v for v in active if proj[v] >= c)
            induced = sum(len(adj[v] & captured) for v in captured) // 2
            surplus = len(captured) - induced
            if best_surplus is None or surplus > best_surplus:
                best_surplus = surplus
                best_captured = captured
                best_seed = seed
        independent = _greedy_independent_in(adj, best_captured)
        if not independent:
            r = sample_standard_normal_vector(vc.dimension, best_seed)
            proj = vc.vectors @ r
            independent = frozenset([max(active, key=lambda v: (proj[v], -v))])
        for v in independent:
            assignment[v] = next_color
        next_color += 1
        active.difference_update(independent)
        extraction += 1
    return Semicoloring(
        n=n,
        assignment=assignment,
        colors_used=next_color,
        uncolored=frozenset(range(n)) - assignment.keys(),
        conforming=2 * len(assignment) >= n,
    )


def wigderson_reduce(
    g: Graph, vc: VectorColoring, k: float, delta: float
) -> WigdersonResult:
    """Drive the maximum degree below ``delta`` by 2-coloring neighborhoods
    of high-degree vertices with fresh colors.

    Valid for k ~ 3: the neighborhood of any vertex is vector
    2-colorable, hence bipartite; a non-bipartite neighborhood witnesses
    an invalid vector coloring and is a hard error.  Stops early once
    half the vertices are colored.  Consumes at most 2n/delta colors.
    """
    if k > 3.5:
        raise ValueError(
            f"wigderson_reduce requires k ~ 3 (got k={k}); "
            "use the general neighborhood recursion instead"
        )
    n = g.n
    adj = g.adjacency_sets
    active = set(range(n))
    assignment: dict[int, int] = {}
    next_color = 0
    while 2 * len(assignment) < n:
        best_v = None
        best_deg = -1
        for v in active:
            d = len(adj[v] & active)
            if d > best_deg or (d == best_deg and v < best_v):
                best_deg = d
                best_v = v
        if best_deg <= delta:
            break
        hood = sorted(adj[best_v] & active)
        hood_graph, hood_ids = induced_subgraph(g, hood)
        sides = bipartition(hood_graph)
        if sides is None:
            raise SolverError(
                f"neighborhood of vertex {best_v} is not bipartite; "
                "the vector coloring is invalid"
            )
        present = sorted(set(sides))
        color_of = {side: next_color + i for i, side in enumerate(present)}
        for v_local, side in enumerate(sides):
            assignment[hood_ids[v_local]] = color_of[side]
        next_color += len(present)
        active.difference_update(hood)
    residual, residual_vertices = induced_subgraph(g, active)
    return WigdersonResult(
        assignment=assignment,
        colors_used=next_color,
        residual=residual,
        residual_vertices=residual_vertices,
    )


def _degree_threshold(n: int, k_int: int) -> float:
    """High-degree threshold n^(k/(k+1)) for the neighborhood recursion."""
    return float(n) ** (k_int / (k_int + 1.0))


def _find_independent_set(
    g: Graph,
    vc: VectorColoring,
    cfg: RoundingConfig,
    seed_parts: tuple,
    depth: int = 0,
) -> frozenset[int]:
    """Independent set via the degree-aware recursion: recurse into the
    neighborhood of a high-degree vertex (vector colorable with one color
    fewer after projection), otherwise capture on the whole graph."""
    if g.m == 0:
        return frozenset(range(g.n))
    sides = bipartition(g)
    if sides is not None:
        zero = frozenset(v for v, s in enumerate(sides) if s == 0)
        one = frozenset(v for v, s in enumerate(sides) if s == 1)
        return zero if len(zero) >= len(one) else one
    k = vc.k_value
    if k <= 2.0 + 1e-9:
        raise SolverError(
            "graph is not bipartite but the vector coloring claims k <= 2"
        )
    k_int = max(3, math.ceil(k - 1e-9))
    degrees = [g.degree(v) for v in range(g.n)]
    vmax = max(range(g.n), key=lambda v: (degrees[v], -v))
    if depth < 32 and degrees[vmax] > _degree_threshold(g.n, k_int):
        hood_graph, hood_ids = induced_subgraph(g, g.neighbors(vmax))
        hood_vc = project_neighborhood(vc, g, vmax)  # sorted-neighbor order
        inner = _find_independent_set(
            hood_graph, hood_vc, cfg, seed_parts + (vmax,), depth + 1
        )
        return frozenset(hood_ids[v] for v in inner)
    _, c = compute_capture_params(k, g.max_degree, cfg.greedy_delta_floor)
    if c == 0.0:
        return _greedy_independent_set(g)
    best = _best_capture(vc, g, c, cfg, seed_parts)
    independent = extract_independent_set(g, best)
    if not independent:
        independent = _capture_fallback_vertex(vc, best)
    return independent


def _high_degree_reduce(
    g: Graph, vc: VectorColoring, cfg: RoundingConfig, k_int: int
) -> WigdersonResult:
    """General-k Wigderson phase: while some vertex exceeds the n^(k/(k+1))
    threshold, pull an independent set out of its neighborhood (one fresh
    color each) until the residual degree is controlled or half the
    vertices are colored."""
    n = g.n
    adj = g.adjacency_sets
    active = set(range(n))
    assignment: dict[int, int] = {}
    next_color = 0
    threshold = _degree_threshold(n, k_int)
    iteration = 0
    while 2 * len(assignment) < n:
        best_v = None
        best_deg = -1
        for v in active:
            d = len(adj[v] & active)
            if d > best_deg or (d == best_deg and v < best_v):
                best_deg = d
                best_v = v
        if best_deg <= threshold:
            break
        residual, res_ids = induced_subgraph(g, active)
        res_vc = vc.restrict(res_ids)
        local_v = res_ids.index(best_v)
        hood_graph, hood_ids = induced_subgraph(residual, residual.neighbors(local_v))
        hood_vc = project_neighborhood(res_vc, residual, local_v)
        inner = _find_independent_set(
            hood_graph, hood_vc, cfg, ("wig", iteration), 1
        )
        chosen = [res_ids[hood_ids[v]] for v in inner]
        for v in chosen:
            assignment[v] = next_color
        next_color += 1
        active.difference_update(chosen)
        iteration += 1
    residual, residual_vertices = induced_subgraph(g, active)
    return WigdersonResult(
        assignment=assignment,
        colors_used=next_color,
        residual=residual,
        residual_vertices=residual_vertices,
    )


def _check_semicoloring(g: Graph, semi: Semicoloring) -> None:
    """Abort with diagnostics when a produced semicoloring breaks its
    contract (monochromatic edge or insufficient coverage)."""
    for u, v in g.edges:
        cu = semi.assignment.get(u)
        cv = semi.assignment.get(v)
        if cu is not None and cu == cv:
            raise RoundingContractError(
                f"semicoloring assigns color {cu} to both endpoints of edge ({u}, {v})"
            )
    needed = (g.n + 1) // 2
    if len(semi.assignment) < needed:
        raise RoundingContractError(
            f"semicoloring covers {len(semi.assignment)} of {g.n} vertices; "
            f"needs at least {needed}"
        )


SemicolorFn = Callable[[Graph, tuple[int, ...], int], Semicoloring]


def semicolor_to_color(
    g: Graph, semicolor_fn: SemicolorFn, cfg: RoundingConfig | None = None
) -> Coloring:
    """Lift a semicoloring routine to a full coloring.

    Repeatedly semicolors the residual induced subgraph, freezes the
    assigned vertices, and recurses on the rest with fresh colors.  Each
    round is verified; a round that colors less than half its vertices or
    emits an illegal assignment aborts.  Terminates within
    ceil(log2 n) + 1 rounds.
    """
    cfg = cfg or RoundingConfig()
    n = g.n
    assignment: list[int | None] = [None] * n
    rounds: list[dict] = []
    palette_base = 0
    active: list[int] = list(range(n))
    allowed_rounds = 1 if n <= 1 else math.ceil(math.log2(n)) + 1
    round_index = 0
    while active:
        if round_index >= allowed_rounds:
            raise RoundingContractError(
                f"recursion exceeded {allowed_rounds} rounds with "
                f"{len(active)} vertices uncolored"
            )
        sub, old_ids = induced_subgraph(g, active)
        semi = semicolor_fn(sub, old_ids, round_index)
        _check_semicoloring(sub, semi)
        if semi.colors_used < 0 or any(
            not (0 <= c < semi.colors_used) for c in semi.assignment.values()
        ):
            raise RoundingContractError("semicoloring colors out of palette range")
        for v_local, color in semi.assignment.items():
            assignment[old_ids[v_local]] = palette_base + color
        palette_base += semi.colors_used
        rounds.append({"palette": semi.colors_used, "colored": len(semi.assignment)})
        active = sorted(old_ids[v] for v in semi.uncolored)
        round_index += 1
    return Coloring(
        assignment=tuple(assignment),
        colors_used=palette_base,
        stats={"rounds": rounds},
    )


def _resolve_method(cfg: RoundingConfig, g: Graph) -> str:
    if cfg.method != "auto":
        return cfg.method
    # projection needs ln(max degree) headroom to beat the hyperplanes
    return "projection" if g.max_degree > 32 else "hyperplane"


def color_graph(
    g: Graph,
    cfg: RoundingConfig | None = None,
    solver_cfg: SolverConfig | None = None,
) -> Coloring:
    """End-to-end coloring driver.

    Solves the vector-coloring SDP, 2-colors by BFS when the relaxation
    says the graph is (vector) 2-colorable, otherwise reduces high
    degrees Wigderson-style and rounds the residual with the configured
    method inside the semicoloring recursion.  The result is verified
    before it is returned.
    """
    cfg = cfg or RoundingConfig()
    n = g.n
    base_stats = {"seed": cfg.seed, "n": n, "m": g.m}
    if n == 0:
        return Coloring((), 0, dict(base_stats, method="trivial", rounds=[]))
    if g.m == 0:
        return Coloring(
            tuple([0] * n),
            1,
            dict(base_stats, method="trivial", k_value=1.0, rounds=[]),
        )
    if solver_cfg is None:
        # rounding only needs a loosely solved relaxation
        solver_cfg = SolverConfig(
            seed=derive_seed(cfg.seed, "sdp"),
            objective_tol=2e-3 if n <= 96 else 2e-2,
            restarts=1,
        )
    mc, vc = solve_vector_coloring(g, solver_cfg)
    k = vc.k_value
    base_stats.update(k_value=k, alpha=mc.alpha, sdp_converged=mc.converged)
    if k <= 2.0 + _BIPARTITE_K_MARGIN:
        sides = bipartition(g)
        if sides is not None:
            return Coloring(
                assignment=tuple(sides),
                colors_used=2,
                stats=dict(base_stats, method="bipartite", rounds=[]),
            )
    method = _resolve_method(cfg, g)
    k_int = max(3, math.ceil(k - 1e-9))

    def round_fn(sub: Graph, old_ids: tuple[int, ...], round_index: int) -> Semicoloring:
        if sub.m == 0:
            return _all_one_color(sub.n)
        sub_vc = vc.restrict(old_ids)
        round_cfg = replace(cfg, seed=derive_seed(cfg.seed, "round", round_index))
        if cfg.wigderson_delta_override is not None:
            wig_delta = cfg.wigderson_delta_override
        elif method == "hyperplane" and k <= _WIG_BIPARTITE_LIMIT:
            wig_delta = float(sub.n) ** 0.613
        else:
            wig_delta = _degree_threshold(sub.n, k_int)
        if k <= _WIG_BIPARTITE_LIMIT:
            wig = wigderson_reduce(sub, sub_vc, k, wig_delta)
        else:
            wig = _high_degree_reduce(sub, sub_vc, round_cfg, k_int)
        assignment = dict(wig.assignment)
        palette = wig.colors_used
        if 2 * len(assignment) < sub.n:
            res_vc = sub_vc.restrict(wig.residual_vertices)
            if method == "hyperplane":
                semi = hyperplane_semicolor(res_vc, wig.residual, round_cfg)
            else:
                semi = projection_semicolor(res_vc, wig.residual, round_cfg)
            for v_local, color in semi.assignment.items():
                assignment[wig.residual_vertices[v_local]] = palette + color
            palette += semi.colors_used
        return Semicoloring(
            n=sub.n,
            assignment=assignment,
            colors_used=palette,
            uncolored=frozenset(range(sub.n)) - assignment.keys(),
            conforming=2 * len(assignment) >= sub.n,
        )

    coloring = semicolor_to_color(g, round_fn, cfg)
    for u, v in g.edges:
        if coloring.assignment[u] == coloring.assignment[v]:
            raise RoundingContractError(
                f"driver produced a monochromatic edge ({u}, {v})"
            )
    stats = dict(base_stats, method=method, rounds=coloring.stats["rounds"])
    return Coloring(coloring.assignment, coloring.colors_used, stats)
