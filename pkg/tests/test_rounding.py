"""Rounding: normal tails, hyperplane and projection semicoloring,
Wigderson reduction, the recursion driver, and the end-to-end colorer."""
from __future__ import annotations

import math

import numpy as np
import pytest

from vectorcolor import (
    Graph,
    RoundingConfig,
    RoundingContractError,
    Semicoloring,
    SolverConfig,
    SolverError,
    VectorColoring,
    color_graph,
    compute_capture_params,
    extract_independent_set,
    generate_planted,
    hyperplane_semicolor,
    make_simplex_vectors,
    normal_density,
    normal_tail,
    projection_capture,
    projection_semicolor,
    sample_standard_normal_vector,
    semicolor_to_color,
    separation_probability_estimate,
    solve_vector_coloring,
    verify_coloring,
    verify_semicoloring,
    wigderson_reduce,
)
from vectorcolor.rounding import _hyperplane_count
from conftest import complete_graph, cycle_graph, path_graph, petersen_graph, star_graph

# frozen from an independent quadrature of the normal density
# (scipy.integrate.quad of exp(-y^2/2)/sqrt(2*pi) on [1, 60])
N_AT_ONE = 0.15865525393145707


class TestNormalTail:
    def test_at_zero_by_symmetry(self):
        assert normal_tail(0.0) == 0.5

    def test_matches_quadrature_oracle_at_one(self):
        assert abs(normal_tail(1.0) - N_AT_ONE) < 1e-10

    @pytest.mark.parametrize("x", [1.0, 2.0, 3.0, 5.0])
    def test_feller_tail_bounds(self, x):
        lower = normal_density(x) * (1.0 / x - 1.0 / x**3)
        upper = normal_density(x) / x
        assert lower < normal_tail(x) < upper

    @pytest.mark.parametrize("x", [0.3, 1.7, 4.2])
    def test_symmetry(self, x):
        assert abs(normal_tail(-x) + normal_tail(x) - 1.0) < 1e-14


class TestSampleNormalVector:
    def test_deterministic(self):
        a = sample_standard_normal_vector(50, 123)
        b = sample_standard_normal_vector(50, 123)
        assert np.array_equal(a, b)

    def test_moments_at_large_sample(self):
        v = sample_standard_normal_vector(100_000, 7)
        assert abs(v.mean()) < 0.02
        assert abs(v.var() - 1.0) < 0.02

    def test_projection_tail_matches_normal(self):
        # projection of r onto any unit vector is standard normal
        rng = np.random.default_rng(5)
        u = rng.standard_normal(40)
        u /= np.linalg.norm(u)
        hits = 0
        trials = 100_000
        R = np.random.default_rng(99).standard_normal((trials, 40))
        hits = int(((R @ u) >= 1.0).sum())
        assert abs(hits / trials - N_AT_ONE) < 0.01

    def test_dim_validation(self):
        with pytest.raises(ValueError):
            sample_standard_normal_vector(0, 1)


class TestSeparationProbability:
    def test_antipodal_always_separated(self):
        assert separation_probability_estimate(
            np.array([1.0, 0.0]), np.array([-1.0, 0.0]), 2000, 3
        ) == 1.0

    @pytest.mark.parametrize(
        "theta", [math.pi / 2.0, 2.0 * math.pi / 3.0]
    )
    def test_matches_theta_over_pi(self, theta):
        v1 = np.array([1.0, 0.0])
        v2 = np.array([math.cos(theta), math.sin(theta)])
        est = separation_probability_estimate(v1, v2, 100_000, 11)
        assert abs(est - theta / math.pi) < 0.01


class TestCaptureParams:
    def test_three_coloring_constant(self):
        delta = math.ceil(math.e**3)  # 21
        a, c = compute_capture_params(3.0, delta)
        assert a == 2.0
        assert abs(c - math.sqrt(2.0 / 3.0 * math.log(delta))) < 1e-12

    def test_k4(self):
        a, _ = compute_capture_params(4.0, 100)
        assert abs(a - math.sqrt(3.0)) < 1e-12

    def test_a_decreases_to_sqrt2(self):
        a10 = compute_capture_params(10.0, 100)[0]
        a100 = compute_capture_params(100.0, 100)[0]
        a_big = compute_capture_params(1e6, 100)[0]
        assert a10 > a100 > a_big > math.sqrt(2.0)
        assert a_big - math.sqrt(2.0) < 1e-5

    def test_greedy_signal(self):
        _, c = compute_capture_params(3.0, 16)
        assert c == 0.0
        _, c = compute_capture_params(3.0, 17, greedy_delta_floor=16)
        assert c > 0.0

    def test_k_at_most_two_rejected(self):
        with pytest.raises(ValueError, match="bipartite"):
            compute_capture_params(2.0, 100)


def random_unit_vectors(n: int, dim: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((n, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


class TestProjectionCapture:
    def test_zero_threshold_captures_half_on_average(self):
        n = 200
        g = Graph(n, [])
        vc = VectorColoring(vectors=random_unit_vectors(n, 6, 1), k_value=3.0)
        sizes = [
            len(projection_capture(vc, g, 0.0, seed).captured)
            for seed in range(4000)
        ]
        assert abs(np.mean(sizes) - n / 2.0) < 0.05 * (n / 2.0)

    def test_antipodal_edge_never_fully_captured(self):
        g = complete_graph(2)
        vc = VectorColoring(vectors=np.array([[1.0], [-1.0]]), k_value=2.0)
        for seed in range(300):
            cap = projection_capture(vc, g, 0.5, seed)
            assert cap.induced_edges == 0
            assert len(cap.captured) <= 1

    def test_induced_edges_exact(self):
        g, _ = generate_planted(40, 3, 0.5, 2)
        vc = VectorColoring(vectors=random_unit_vectors(40, 8, 3), k_value=3.0)
        for seed in range(30):
            cap = projection_capture(vc, g, 0.3, seed)
            expected = sum(
                1
                for u, v in g.edges
                if u in cap.captured and v in cap.captured
            )
            assert cap.induced_edges == expected

    def test_negative_threshold_rejected(self):
        g = complete_graph(2)
        vc = VectorColoring(vectors=np.eye(2), k_value=3.0)
        with pytest.raises(ValueError):
            projection_capture(vc, g, -0.1, 0)


class TestExtractIndependentSet:
    def test_no_induced_edges_keeps_everything(self):
        g, _ = generate_planted(30, 3, 0.3, 1)
        vc = VectorColoring(vectors=random_unit_vectors(30, 6, 2), k_value=3.0)
        cap = projection_capture(vc, g, 2.5, 4)
        if cap.induced_edges == 0:
            assert extract_independent_set(g, cap) == cap.captured

    def test_captured_triangle(self):
        g = complete_graph(3)
        from vectorcolor import CaptureResult

        cap = CaptureResult(frozenset({0, 1, 2}), 3, 0.0, 0)
        ind = extract_independent_set(g, cap)
        assert len(ind) == 1

    def test_output_independent_and_large_enough(self):
        g, _ = generate_planted(60, 3, 0.4, 5)
        vc = VectorColoring(vectors=random_unit_vectors(60, 8, 6), k_value=3.0)
        for seed in range(20):
            cap = projection_capture(vc, g, 0.8, seed)
            ind = extract_independent_set(g, cap)
            assert len(ind) >= len(cap.captured) - cap.induced_edges
            assert all(
                not (u in ind and v in ind) for u, v in g.edges
            )


class TestHyperplaneCount:
    def test_paper_arithmetic_at_k3(self):
        assert _hyperplane_count(3.0, 3, None) == 3  # 2 + ceil(log3 3)
        assert _hyperplane_count(3.0, 9, None) == 4
        assert _hyperplane_count(3.0, 10, None) == 5
        assert _hyperplane_count(3.0, 1, None) == 2

    def test_override_wins(self):
        assert _hyperplane_count(3.0, 100, 7) == 7


class TestHyperplaneSemicolor:
    def test_region_count_bound(self):
        g, _ = generate_planted(50, 3, 0.5, 4)
        _, vc = solve_vector_coloring(g, SolverConfig(seed=1))
        cfg = RoundingConfig(seed=2, hyperplane_count_override=3)
        semi = hyperplane_semicolor(vc, g, cfg)
        assert semi.colors_used <= 2**3

    def test_antipodal_k2_two_colors(self):
        g = complete_graph(2)
        vc = VectorColoring(vectors=np.array([[1.0], [-1.0]]), k_value=2.0)
        semi = hyperplane_semicolor(vc, g, RoundingConfig(seed=0))
        assert semi.colors_used == 2
        assert semi.conforming
        assert not semi.uncolored

    def test_planted_semicolorings_valid(self):
        g, _ = generate_planted(300, 3, 0.5, 9)
        _, vc = solve_vector_coloring(
            g, SolverConfig(seed=3, objective_tol=5e-3, restarts=1)
        )
        for seed in range(5):
            semi = hyperplane_semicolor(vc, g, RoundingConfig(seed=seed))
            report = verify_semicoloring(g, semi)
            assert report.valid
            assert semi.conforming

    def test_edgeless_single_color(self):
        g = Graph(5, [])
        vc = VectorColoring(vectors=np.ones((5, 1)), k_value=1.0)
        semi = hyperplane_semicolor(vc, g, RoundingConfig())
        assert semi.colors_used == 1
        assert len(semi.assignment) == 5


class TestProjectionSemicolor:
    def test_edgeless_one_color(self):
        g = Graph(6, [])
        vc = VectorColoring(vectors=np.ones((6, 1)), k_value=1.0)
        semi = projection_semicolor(vc, g, RoundingConfig(seed=1))
        assert semi.colors_used == 1
        assert verify_semicoloring(g, semi).valid

    def test_k2_two_colors(self):
        g = complete_graph(2)
        vc = VectorColoring(vectors=np.array([[1.0], [-1.0]]), k_value=2.0)
        semi = projection_semicolor(vc, g, RoundingConfig(seed=1))
        assert semi.colors_used == 2
        assert verify_semicoloring(g, semi).valid

    def test_calibrated_color_budget_on_planted(self):
        # measured: class recovery gives 2-3 colors, far below the
        # 4 * Delta^(1/3) * sqrt(ln Delta) budget (~52 at Delta ~ 190)
        g, _ = generate_planted(500, 3, 0.5, 31)
        _, vc = solve_vector_coloring(
            g, SolverConfig(seed=1, objective_tol=5e-3, restarts=1)
        )
        delta = g.max_degree
        budget = 4.0 * delta ** (1.0 / 3.0) * math.sqrt(math.log(delta))
        good = 0
        for seed in range(10):
            semi = projection_semicolor(vc, g, RoundingConfig(seed=seed))
            if verify_semicoloring(g, semi).valid and semi.colors_used <= budget:
                good += 1
        assert good >= 9


class TestWigdersonReduce:
    def test_star_one_phase_one_color(self):
        g = star_graph(9)
        vc = VectorColoring(vectors=random_unit_vectors(9, 4, 0), k_value=3.0)
        result = wigderson_reduce(g, vc, 3.0, 2.0)
        assert result.colors_used == 1
        assert set(result.assignment) == set(range(1, 9))
        assert result.residual_vertices == (0,)
        assert result.residual.m == 0

    def test_noop_when_delta_at_least_max_degree(self):
        g, _ = generate_planted(30, 3, 0.5, 3)
        vc = VectorColoring(vectors=random_unit_vectors(30, 4, 1), k_value=3.0)
        result = wigderson_reduce(g, vc, 3.0, float(g.max_degree))
        assert result.colors_used == 0
        assert result.residual == g

    def test_color_budget_and_residual_degree(self):
        g, _ = generate_planted(200, 3, 0.4, 12)
        _, vc = solve_vector_coloring(
            g, SolverConfig(seed=5, objective_tol=5e-3, restarts=1)
        )
        delta = 25.0
        result = wigderson_reduce(g, vc, vc.k_value, delta)
        assert result.colors_used <= 2 * g.n / delta
        half_colored = 2 * len(result.assignment) >= g.n
        assert half_colored or result.residual.max_degree <= delta
        # the partial coloring is legal
        for u, v in g.edges:
            cu, cv = result.assignment.get(u), result.assignment.get(v)
            assert cu is None or cu != cv

    def test_non_bipartite_neighborhood_is_hard_error(self):
        # wheel: hub 0 joined to C5 -- the hub's neighborhood is an odd cycle
        edges = [(0, i) for i in range(1, 6)]
        edges += [(i, i % 5 + 1) for i in range(1, 6)]
        wheel = Graph(6, edges)
        vc = VectorColoring(vectors=random_unit_vectors(6, 4, 2), k_value=3.0)
        with pytest.raises(SolverError, match="not bipartite"):
            wigderson_reduce(wheel, vc, 3.0, 3.0)

    def test_k_gate(self):
        g = complete_graph(4)
        vc = VectorColoring(vectors=make_simplex_vectors(4, 4), k_value=4.0)
        with pytest.raises(ValueError, match="k ~ 3"):
            wigderson_reduce(g, vc, 4.0, 2.0)


def constant_fraction_fn(fraction_colored: float):
    """Semicolor the first ceil(fraction * n) vertices of an edgeless
    subgraph with one color."""

    def fn(sub: Graph, old_ids, round_index: int) -> Semicoloring:
        count = math.ceil(fraction_colored * sub.n)
        assignment = {v: 0 for v in range(count)}
        return Semicoloring(
            n=sub.n,
            assignment=assignment,
            colors_used=1,
            uncolored=frozenset(range(count, sub.n)),
        )

    return fn


class TestSemicolorToColor:
    def test_full_coloring_in_one_round(self):
        g = Graph(10, [])
        coloring = semicolor_to_color(g, constant_fraction_fn(1.0), RoundingConfig())
        assert coloring.colors_used == 1
        assert coloring.stats["rounds"] == [{"palette": 1, "colored": 10}]

    def test_exact_halving_round_count(self):
        g = Graph(15, [])
        coloring = semicolor_to_color(g, constant_fraction_fn(0.5), RoundingConfig())
        assert len(coloring.stats["rounds"]) == math.ceil(math.log2(15))
        g16 = Graph(16, [])
        coloring16 = semicolor_to_color(g16, constant_fraction_fn(0.5), RoundingConfig())
        assert len(coloring16.stats["rounds"]) <= math.ceil(math.log2(16)) + 1

    def test_undercoverage_aborts(self):
        g = Graph(12, [])

        def lazy(sub, old_ids, round_index):
            return Semicoloring(
                n=sub.n,
                assignment={0: 0} if sub.n > 1 else {0: 0},
                colors_used=1,
                uncolored=frozenset(range(1, sub.n)),
            )

        with pytest.raises(RoundingContractError, match="covers"):
            semicolor_to_color(g, lazy, RoundingConfig())

    def test_illegal_round_aborts(self):
        g = complete_graph(2)

        def monochrome(sub, old_ids, round_index):
            return Semicoloring(
                n=sub.n,
                assignment={v: 0 for v in range(sub.n)},
                colors_used=1,
                uncolored=frozenset(),
            )

        with pytest.raises(RoundingContractError, match="both endpoints"):
            semicolor_to_color(g, monochrome, RoundingConfig())


class TestColorGraph:
    @pytest.mark.parametrize("g", [cycle_graph(6), path_graph(7), star_graph(8)])
    def test_bipartite_exactly_two_colors(self, g):
        coloring = color_graph(g, RoundingConfig(seed=1))
        assert coloring.colors_used == 2
        assert verify_coloring(g, coloring).legal
        assert coloring.stats["method"] == "bipartite"

    @pytest.mark.parametrize("q", [3, 4, 5, 6])
    def test_cliques_exactly_q_colors(self, q):
        for method in ("hyperplane", "projection"):
            coloring = color_graph(complete_graph(q), RoundingConfig(seed=2, method=method))
            assert verify_coloring(complete_graph(q), coloring).legal
            assert coloring.colors_used == q

    def test_edgeless_one_color(self):
        coloring = color_graph(Graph(7, []))
        assert coloring.colors_used == 1

    def test_odd_cycle_three_colors_via_greedy_floor(self):
        coloring = color_graph(cycle_graph(9), RoundingConfig(seed=3, method="projection"))
        assert verify_coloring(cycle_graph(9), coloring).legal
        assert coloring.colors_used == 3  # greedy floor: Delta + 1, odd needs 3

    def test_odd_cycle_hyperplane_legal(self):
        coloring = color_graph(cycle_graph(9), RoundingConfig(seed=3, method="hyperplane"))
        assert verify_coloring(cycle_graph(9), coloring).legal

    def test_petersen_legal(self):
        g = petersen_graph()
        coloring = color_graph(g, RoundingConfig(seed=4))
        assert verify_coloring(g, coloring).legal

    @pytest.mark.parametrize("method", ["hyperplane", "projection"])
    def test_planted_legal_and_deterministic(self, method):
        g, _ = generate_planted(150, 3, 0.35, 21)
        cfg = RoundingConfig(seed=77, method=method)
        a = color_graph(g, cfg)
        b = color_graph(g, cfg)
        assert verify_coloring(g, a).legal
        assert a.assignment == b.assignment
        assert a.colors_used == b.colors_used
        assert a.stats == b.stats

    def test_stats_shape(self):
        g, _ = generate_planted(60, 3, 0.5, 5)
        coloring = color_graph(g, RoundingConfig(seed=6))
        stats = coloring.stats
        assert {"k_value", "alpha", "method", "seed", "rounds"} <= set(stats)
        assert all({"palette", "colored"} <= set(r) for r in stats["rounds"])
        assert sum(r["palette"] for r in stats["rounds"]) == coloring.colors_used

    def test_general_k_recursion_path(self):
        # planted 5-colorable, dense enough that some vertex exceeds the
        # n^(5/6) threshold, exercising the neighborhood projection route
        g, _ = generate_planted(160, 5, 0.7, 13)
        assert g.max_degree > 160 ** (5.0 / 6.0)
        coloring = color_graph(g, RoundingConfig(seed=8, method="projection"))
        assert verify_coloring(g, coloring).legal

    def test_seed_flows_into_stats(self):
        g, _ = generate_planted(90, 3, 0.5, 30)
        a = color_graph(g, RoundingConfig(seed=1, method="hyperplane"))
        b = color_graph(g, RoundingConfig(seed=2, method="hyperplane"))
        assert a.stats["seed"] == 1
        assert b.stats["seed"] == 2
        assert verify_coloring(g, a).legal and verify_coloring(g, b).legal
