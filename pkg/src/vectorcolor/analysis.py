"""Verifiers, exact oracles, and Kneser-graph gap calculators.

The verifiers are plain edge scans: they are the ground truth the
rounding pipeline is tested against.  The Kneser calculators certify
vector colorability of K(m, r, t) from explicit (optionally weighted)
characteristic vectors and pair them with exact chromatic lower bounds
from Milner's intersecting-antichain theorem.  Everything here is a pure
function of its inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .graphs import Graph, KneserSpec, _subset_masks
from .rounding import Coloring, Semicoloring
from .solver import VectorColoring

SWEEP_VERTEX_LIMIT = 20_000  # exhaustive pair sweeps stay under ~2e8 pairs
INDEPENDENCE_LIMIT = 30
CHROMATIC_LIMIT = 20


@dataclass(frozen=True)
class ColoringReport:
    legal: bool
    monochromatic_edges: tuple[tuple[int, int], ...]
    colors_used: int


@dataclass(frozen=True)
class SemicoloringReport:
    legal: bool
    coverage_ok: bool
    valid: bool
    monochromatic_edges: tuple[tuple[int, int], ...]
    assigned: int
    required: int


@dataclass(frozen=True)
class VectorColoringReport:
    max_norm_deviation: float
    worst_edge_violation: float
    ok: bool


def _assignment_of(coloring) -> tuple[int, ...]:
    if isinstance(coloring, Coloring):
        return coloring.assignment
    return tuple(coloring)


def verify_coloring(g: Graph, coloring) -> ColoringReport:
    """Check a total coloring: every monochromatic edge is reported.

    Accepts a :class:`Coloring` or any per-vertex color sequence.  An
    assignment that is not total is an error, not an illegal coloring.
    """
    assignment = _assignment_of(coloring)
    if len(assignment) != g.n:
        raise ValueError(
            f"assignment covers {len(assignment)} vertices, graph has {g.n}"
        )
    if any(c is None for c in assignment):
        raise ValueError("assignment is not total")
    bad = tuple(
        (u, v) for u, v in g.edges if assignment[u] == assignment[v]
    )
    return ColoringReport(
        legal=not bad,
        monochromatic_edges=bad,
        colors_used=len(set(assignment)) if g.n else 0,
    )


def verify_semicoloring(g: Graph, semi: Semicoloring) -> SemicoloringReport:
    """Check a semicoloring: legality on assigned vertices and coverage of
    at least ceil(n/2)."""
    assignment = semi.assignment
    bad = []
    for u, v in g.edges:
        cu = assignment.get(u)
        if cu is not None and cu == assignment.get(v):
            bad.append((u, v))
    required = (g.n + 1) // 2
    legal = not bad
    coverage_ok = len(assignment) >= required
    return SemicoloringReport(
        legal=legal,
        coverage_ok=coverage_ok,
        valid=legal and coverage_ok,
        monochromatic_edges=tuple(bad),
        assigned=len(assignment),
        required=required,
    )


def verify_vector_coloring(
    g: Graph, vc: VectorColoring, tol: float = 1e-6
) -> VectorColoringReport:
    """Check unit norms and the edge dot-product bound -1/(k-1)."""
    norms = np.linalg.norm(vc.vectors, axis=1)
    max_norm_dev = float(np.abs(norms - 1.0).max()) if g.n else 0.0
    worst = 0.0
    if g.m and math.isfinite(vc.k_value) and vc.k_value > 1.0:
        bound = -1.0 / (vc.k_value - 1.0)
        arr = g.edge_array()
        dots = np.einsum("ij,ij->i", vc.vectors[arr[:, 0]], vc.vectors[arr[:, 1]])
        worst = float(max(0.0, (dots - bound).max()))
    return VectorColoringReport(
        max_norm_deviation=max_norm_dev,
        worst_edge_violation=worst,
        ok=max_norm_dev <= tol and worst <= tol,
    )


@dataclass(frozen=True, eq=False)
class KneserCertificate:
    """Vector-colorability certificate for a Kneser graph.

    ``vcn_bound`` bounds the vector chromatic number from the explicit
    vectors (None when the vectors certify nothing); ``weight_a`` is the
    weight given to present elements (1 for the unweighted construction).
    ``worst_adjacent_dot`` is the exact maximum dot product over all
    adjacent pairs, found by exhaustive sweep.  ``milner_bound`` bounds
    the independence number, giving ``chromatic_lower = n / milner_bound``.
    """

    spec: KneserSpec
    vectors: np.ndarray
    weight_a: Fraction
    vcn_bound: Fraction | None
    worst_adjacent_dot: Fraction | None
    milner_bound: int
    chromatic_lower: Fraction
    certified: bool


def _max_adjacent_intersection(spec: KneserSpec) -> tuple[int | None, int]:
    """Exhaustively sweep all subset pairs; returns the largest
    intersection among adjacent pairs (None if the graph is edgeless)
    and the number of adjacent pairs."""
    n = spec.n_vertices
    if n > SWEEP_VERTEX_LIMIT:
        raise ValueError(
            f"exhaustive sweep limited to {SWEEP_VERTEX_LIMIT} vertices, "
            f"K({spec.m},{spec.r},{spec.t}) has {n}"
        )
    masks = _subset_masks(spec)
    best = -1
    adjacent_pairs = 0
    block = max(1, 4_000_000 // max(n, 1))
    for start in range(0, n, block):
        stop = min(start + block, n)
        inter = np.bitwise_count(masks[start:stop, None] & masks[None, :])
        for bi, i in enumerate(range(start, stop)):
            row = inter[bi, i + 1 :]
            adj = row < spec.t
            count = int(adj.sum())
            if count:
                adjacent_pairs += count
                best = max(best, int(row[adj].max()))
    return (None if best < 0 else best), adjacent_pairs


def _characteristic_vectors(spec: KneserSpec, present_weight: float) -> np.ndarray:
    """Unit vectors: ``present_weight`` on the subset's elements, -1
    elsewhere, scaled to unit norm; rows in lexicographic subset order."""
    m, r = spec.m, spec.r
    rows = np.full((spec.n_vertices, m), -1.0)
    for idx, subset in enumerate(combinations(range(m), r)):
        rows[idx, list(subset)] = present_weight
    scale = math.sqrt(r * present_weight**2 + (m - r))
    return rows / scale


def _weighted_dot(spec: KneserSpec, a: Fraction, intersection: int) -> Fraction:
    """Exact dot product of two weighted characteristic unit vectors whose
    subsets share ``intersection`` elements."""
    m, r = spec.m, spec.r
    i = intersection
    numerator = a * a * i - 2 * a * (r - i) + (m - 2 * r + i)
    denominator = r * a * a + (m - r)
    return numerator / denominator


def kneser_vectors(spec: KneserSpec) -> KneserCertificate:
    """Unweighted certificate from scaled +/-1 characteristic vectors.

    Adjacent subsets intersect in fewer than t elements, so their dot
    product is at most 1 - 4(r - t)/m; when that is negative it gives the
    bound k = 1 - m/(m - 4(r - t)) on the vector chromatic number.  When
    the formula is degenerate the exhaustively verified worst adjacent
    dot is used instead; nonnegative dots certify nothing.
    """
    m, r, t = spec.m, spec.r, spec.t
    vectors = _characteristic_vectors(spec, 1.0)
    milner, chrom_lower = kneser_chromatic_lower(spec)
    max_adj, _ = _max_adjacent_intersection(spec)
    if max_adj is None:
        return KneserCertificate(
            spec=spec,
            vectors=vectors,
            weight_a=Fraction(1),
            vcn_bound=Fraction(1),
            worst_adjacent_dot=None,
            milner_bound=milner,
            chromatic_lower=chrom_lower,
            certified=True,
        )
    worst = Fraction(m - 4 * (r - max_adj), m)
    dot_at_t = Fraction(m - 4 * (r - t), m)
    if dot_at_t < 0:
        bound = 1 - Fraction(m, m - 4 * (r - t))
    elif worst < 0:
        bound = 1 - 1 / worst
    else:
        bound = None
    return KneserCertificate(
        spec=spec,
        vectors=vectors,
        weight_a=Fraction(1),
        vcn_bound=bound,
        worst_adjacent_dot=worst,
        milner_bound=milner,
        chromatic_lower=chrom_lower,
        certified=bound is not None,
    )


def kneser_weighted(spec: KneserSpec) -> KneserCertificate:
    """Refined certificate from weighted characteristic vectors.

    Present elements get the minimizing weight
    ``A = -1 + mr/(r^2 - rt) - mt/(r^2 - rt)``, absent ones -1, giving
    vector chromatic number at most ``m(r - t)/(r^2 - mt)``; requires
    ``r^2 - mt > 0``.
    """
    m, r, t = spec.m, spec.r, spec.t
    if r * r - m * t <= 0:
        raise ValueError(
            f"weighted bound undefined: r^2 - mt = {r * r - m * t} <= 0"
        )
    denom = r * r - r * t
    weight = Fraction(-1) + Fraction(m * r, denom) - Fraction(m * t, denom)
    bound = Fraction(m * (r - t), r * r - m * t)
    vectors = _characteristic_vectors(spec, float(weight))
    milner, chrom_lower = kneser_chromatic_lower(spec)
    max_adj, _ = _max_adjacent_intersection(spec)
    if max_adj is None:
        return KneserCertificate(
            spec=spec,
            vectors=vectors,
            weight_a=weight,
            vcn_bound=Fraction(1),
            worst_adjacent_dot=None,
            milner_bound=milner,
            chromatic_lower=chrom_lower,
            certified=True,
        )
    worst = _weighted_dot(spec, weight, max_adj)
    if bound <= 1 or worst > Fraction(-1) / (bound - 1):
        raise ValueError(
            f"weighted vectors fail their own bound for K({m},{r},{t}): "
            f"worst adjacent dot {worst}, bound {bound}"
        )
    return KneserCertificate(
        spec=spec,
        vectors=vectors,
        weight_a=weight,
        vcn_bound=bound,
        worst_adjacent_dot=worst,
        milner_bound=milner,
        chromatic_lower=chrom_lower,
        certified=True,
    )


def kneser_chromatic_lower(spec: KneserSpec) -> tuple[int, Fraction]:
    """Milner's antichain bound on the independence number and the
    resulting chromatic lower bound n / alpha, both exact.

    Milner: families of r-sets pairwise intersecting in at least t
    elements have size at most C(m, (m+t+1)/2); the exponent is rounded
    up when non-integral (binomials shrink above m/2, so this stays a
    valid, conservative bound).
    """
    m, r, t = spec.m, spec.r, spec.t
    q = (m + t + 2) // 2  # ceil((m + t + 1) / 2)
    milner = comb(m, q)
    return milner, Fraction(comb(m, r), milner)


def independence_brute_force(g: Graph) -> int:
    """Exact maximum independent set size by branch and bound (n <= 30)."""
    if g.n > INDEPENDENCE_LIMIT:
        raise ValueError(f"brute force limited to n <= {INDEPENDENCE_LIMIT}")
    if g.n == 0:
        return 0
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    rank = {v: i for i, v in enumerate(order)}
    neighbor_mask = [0] * g.n
    for v in range(g.n):
        mask = 0
        for w in g.adjacency[v]:
            mask |= 1 << rank[w]
        neighbor_mask[rank[v]] = mask
    best = 0

    def descend(candidates: int, size: int) -> None:
        nonlocal best
        if size + candidates.bit_count() <= best:
            return
        if candidates == 0:
            best = max(best, size)
            return
        v = (candidates & -candidates).bit_length() - 1
        bit = 1 << v
        descend(candidates & ~bit & ~neighbor_mask[v], size + 1)
        descend(candidates & ~bit, size)

    descend((1 << g.n) - 1, 0)
    return best


def chromatic_brute_force(g: Graph) -> int:
    """Exact chromatic number by backtracking (n <= 20)."""
    if g.n > CHROMATIC_LIMIT:
        raise ValueError(f"brute force limited to n <= {CHROMATIC_LIMIT}")
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    colors = [-1] * g.n

    def feasible(num_colors: int, idx: int, max_used: int) -> bool:
        if idx == g.n:
            return True
        v = order[idx]
        blocked = {colors[w] for w in g.adjacency[v] if colors[w] != -1}
        limit = min(max_used + 1, num_colors - 1)
        for color in range(limit + 1):
            if color in blocked:
                continue
            colors[v] = color
            if feasible(num_colors, idx + 1, max(max_used, color)):
                colors[v] = -1
                return True
            colors[v] = -1
        return False

    for num_colors in range(1, g.n + 1):
        if feasible(num_colors, 0, -1):
            return num_colors
    return g.n
