"""Command-line front end.

Subcommands tie the library into reproducible experiments: ``solve``
(vector-coloring SDP), ``color`` (end-to-end coloring), ``theta``
(theta function of the complement), ``gen`` (instance generators),
``bench`` (CSV benchmark sweep), and ``kneser-bounds`` (gap
calculators).  Every invocation derives all internal seeds from one
master seed and emits a run manifest, so re-running a recorded command
line reproduces its outputs byte for byte (the bench ``millis`` column
is measured and exempt).

Configuration precedence: flags > environment (VC_SEED, VC_EPS,
VC_TRIALS) > defaults.  Exit codes: 0 success, 1 input error,
2 numerical non-convergence, 3 internal contract violation.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import io
import json
import math
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .analysis import (
    KneserCertificate,
    kneser_chromatic_lower,
    kneser_vectors,
    kneser_weighted,
    verify_coloring,
)
from .graphs import Graph, KneserSpec, emit_dimacs, generate_kneser, generate_planted, parse_dimacs
from .rounding import Coloring, RoundingConfig, RoundingContractError, color_graph
from .solver import (
    NonConvergenceError,
    SolverConfig,
    SolverError,
    result_to_json_dict,
    solve_strict_vector_coloring,
    solve_vector_coloring,
)
from .theta import theta_dual

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NONCONVERGENCE = 2
EXIT_CONTRACT = 3

VECTOR_EMIT_LIMIT = 5000


class _CliParser(argparse.ArgumentParser):
    """Argument parser that raises instead of exiting, so usage problems
    map onto the input-error exit code."""

    def error(self, message: str):
        raise ValueError(f"argument error: {message}")


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    return int(raw) if raw not in (None, "") else None


def _env_float(name: str) -> float | None:
    raw = os.environ.get(name)
    return float(raw) if raw not in (None, "") else None


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = _env_int("VC_SEED")
    return env if env is not None else 0


def _resolve_eps(args) -> float | None:
    if getattr(args, "eps", None) is not None:
        return args.eps
    return _env_float("VC_EPS")


def _resolve_trials(args) -> int | None:
    if getattr(args, "trials", None) is not None:
        return args.trials
    return _env_int("VC_TRIALS")


def _solver_config(args, seed: int) -> SolverConfig:
    eps = _resolve_eps(args)
    kwargs: dict = {"seed": seed}
    if eps is not None:
        kwargs["objective_tol"] = eps
    return SolverConfig(**kwargs)


@dataclasses.dataclass
class RunManifest:
    """Reproducibility record emitted with every command."""

    command: list[str]
    seed: int | None
    config: dict
    input_sha256: str | None
    tool_version: str
    wall_clock_seconds: float


def _write_manifest(args, manifest: RunManifest) -> None:
    payload = json.dumps(dataclasses.asdict(manifest), indent=2, sort_keys=True)
    target = getattr(args, "manifest", None)
    if target is None and getattr(args, "out", None):
        target = str(args.out) + ".manifest.json"
    if target:
        Path(target).write_text(payload + "\n")
    else:
        print(payload, file=sys.stderr)


def _emit(args, data: bytes | str) -> None:
    if isinstance(data, str):
        data = data.encode()
    out = getattr(args, "out", None)
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def _hash_file(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _load_graph(path: str) -> Graph:
    return parse_dimacs(Path(path).read_bytes())


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def reference_bounds(n: int, k: float, max_degree: int) -> tuple[float, float]:
    """Benchmark reference values from the coloring guarantees.

    Returns ``(max_degree^(1-2/k) * sqrt(ln max_degree) * ln n,
    n^(1-3/(k+1)) * sqrt(ln n))``; natural logarithms throughout, k
    clamped to at least 2.
    """
    k = max(k, 2.0)
    log_d = math.log(max(max_degree, 2))
    log_n = math.log(max(n, 2))
    delta_bound = max_degree ** (1.0 - 2.0 / k) * math.sqrt(log_d) * log_n if max_degree >= 1 else 0.0
    n_bound = n ** (1.0 - 3.0 / (k + 1.0)) * math.sqrt(log_n)
    return delta_bound, n_bound


def _cmd_solve(args) -> int:
    start = time.perf_counter()
    g = _load_graph(args.path)
    seed = _resolve_seed(args)
    cfg = _solver_config(args, seed)
    solve = solve_strict_vector_coloring if args.strict else solve_vector_coloring
    mc, vc = solve(g, cfg)
    result = {
        "n": g.n,
        "m": g.m,
        "strict": bool(args.strict),
        "k_value": vc.k_value,
        "alpha": mc.alpha,
        "converged": mc.converged,
    }
    if args.vectors:
        result["vectors"] = result_to_json_dict(mc, vc)["vectors"]
    _emit(args, _json_dumps(result))
    _write_manifest(
        args,
        RunManifest(
            command=sys.argv[1:] if args._argv is None else args._argv,
            seed=seed,
            config={
                "strict": bool(args.strict),
                "objective_tol": cfg.objective_tol,
                "feasibility_tol": cfg.feasibility_tol,
            },
            input_sha256=_hash_file(args.path),
            tool_version=__version__,
            wall_clock_seconds=time.perf_counter() - start,
        ),
    )
    return EXIT_OK if mc.converged else EXIT_NONCONVERGENCE


def _coloring_lines(coloring: Coloring) -> str:
    lines = [
        f"v {vertex + 1} {color}" for vertex, color in enumerate(coloring.assignment)
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def _stats_payload(coloring: Coloring) -> dict:
    stats = coloring.stats
    return {
        "k_value": stats.get("k_value"),
        "colors_used": coloring.colors_used,
        "rounds": stats.get("rounds", []),
        "seed": stats.get("seed"),
        "method": stats.get("method"),
        "n": stats.get("n"),
        "alpha": stats.get("alpha"),
    }


def _cmd_color(args) -> int:
    start = time.perf_counter()
    g = _load_graph(args.path)
    seed = _resolve_seed(args)
    trials = _resolve_trials(args)
    cfg = RoundingConfig(
        method=args.method,
        seed=seed,
        trials_per_extraction=trials,
        wigderson_delta_override=args.delta,
    )
    coloring = color_graph(g, cfg)
    report = verify_coloring(g, coloring)
    if not report.legal:
        # never write an illegal coloring; this is a driver bug
        raise RoundingContractError(
            f"illegal coloring produced: {len(report.monochromatic_edges)} bad edges"
        )
    _emit(args, _coloring_lines(coloring))
    stats = _stats_payload(coloring)
    if args.out:
        Path(str(args.out) + ".stats.json").write_text(_json_dumps(stats))
    else:
        print(_json_dumps(stats), file=sys.stderr, end="")
    _write_manifest(
        args,
        RunManifest(
            command=sys.argv[1:] if args._argv is None else args._argv,
            seed=seed,
            config={
                "method": args.method,
                "trials_per_extraction": trials,
                "wigderson_delta_override": args.delta,
            },
            input_sha256=_hash_file(args.path),
            tool_version=__version__,
            wall_clock_seconds=time.perf_counter() - start,
        ),
    )
    return EXIT_OK


def _cmd_theta(args) -> int:
    start = time.perf_counter()
    g = _load_graph(args.path)
    value = theta_dual(g)
    _emit(args, repr(value) + "\n")
    _write_manifest(
        args,
        RunManifest(
            command=sys.argv[1:] if args._argv is None else args._argv,
            seed=None,
            config={},
            input_sha256=_hash_file(args.path),
            tool_version=__version__,
            wall_clock_seconds=time.perf_counter() - start,
        ),
    )
    return EXIT_OK


def _cmd_gen(args) -> int:
    start = time.perf_counter()
    seed = _resolve_seed(args)
    if args.kind == "kneser":
        spec = KneserSpec(args.m, args.r, args.t)
        g = generate_kneser(spec)
        config = {"kind": "kneser", "m": args.m, "r": args.r, "t": args.t}
        input_key = f"kneser {args.m} {args.r} {args.t}"
    else:
        g, _hidden = generate_planted(args.n, args.k, args.p, seed)
        config = {"kind": "planted", "n": args.n, "k": args.k, "p": args.p}
        input_key = f"planted {args.n} {args.k} {args.p} {seed}"
    _emit(args, emit_dimacs(g))
    _write_manifest(
        args,
        RunManifest(
            command=sys.argv[1:] if args._argv is None else args._argv,
            seed=seed,
            config=config,
            input_sha256=hashlib.sha256(input_key.encode()).hexdigest(),
            tool_version=__version__,
            wall_clock_seconds=time.perf_counter() - start,
        ),
    )
    return EXIT_OK


def _bench_instance(entry: dict, default_seed: int) -> tuple[str, Graph, str, int]:
    kind = entry.get("type")
    method = entry.get("method", "auto")
    seed = int(entry.get("seed", default_seed))
    if kind == "planted":
        n, k, p = int(entry["n"]), int(entry["k"]), float(entry["p"])
        g, _ = generate_planted(n, k, p, seed)
        return f"planted-{n}-{k}-{p}-{seed}", g, method, seed
    if kind == "kneser":
        spec = KneserSpec(int(entry["m"]), int(entry["r"]), int(entry["t"]))
        g = generate_kneser(spec)
        return f"kneser-{spec.m}-{spec.r}-{spec.t}", g, method, seed
    if kind == "dimacs":
        path = entry["path"]
        return Path(path).name, _load_graph(path), method, seed
    raise ValueError(f"unknown bench instance type: {kind!r}")


BENCH_COLUMNS = [
    "instance",
    "n",
    "m",
    "max_degree",
    "k_value",
    "method",
    "colors",
    "delta_bound",
    "n_bound",
    "seed",
    "millis",
]


def _cmd_bench(args) -> int:
    start = time.perf_counter()
    suite_raw = json.loads(Path(args.suite).read_text())
    entries = suite_raw["instances"] if isinstance(suite_raw, dict) else suite_raw
    default_seed = _resolve_seed(args)
    buffer = io.StringIO()
    writer = csv.writer(buffer)  # csv default CRLF line endings: RFC-4180
    writer.writerow(BENCH_COLUMNS)
    for entry in entries:
        name, g, method, seed = _bench_instance(entry, default_seed)
        t0 = time.perf_counter()
        coloring = color_graph(g, RoundingConfig(method=method, seed=seed))
        millis = int(round((time.perf_counter() - t0) * 1000.0))
        k_value = coloring.stats.get("k_value", 1.0)
        delta_bound, n_bound = reference_bounds(g.n, k_value, g.max_degree)
        writer.writerow(
            [
                name,
                g.n,
                g.m,
                g.max_degree,
                f"{k_value:.6f}",
                coloring.stats.get("method"),
                coloring.colors_used,
                f"{delta_bound:.6f}",
                f"{n_bound:.6f}",
                seed,
                millis,
            ]
        )
    _emit(args, buffer.getvalue())
    _write_manifest(
        args,
        RunManifest(
            command=sys.argv[1:] if args._argv is None else args._argv,
            seed=default_seed,
            config={"suite": str(args.suite)},
            input_sha256=_hash_file(args.suite),
            tool_version=__version__,
            wall_clock_seconds=time.perf_counter() - start,
        ),
    )
    return EXIT_OK


def _fraction_fields(value: Fraction | None) -> tuple[float | None, str | None]:
    if value is None:
        return None, None
    return float(value), str(value)


def _certificate_payload(cert: KneserCertificate, emit_vectors: bool) -> dict:
    bound_f, bound_s = _fraction_fields(cert.vcn_bound)
    worst_f, worst_s = _fraction_fields(cert.worst_adjacent_dot)
    payload = {
        "weight_a": float(cert.weight_a),
        "vcn_bound": bound_f,
        "vcn_bound_exact": bound_s,
        "worst_adjacent_dot": worst_f,
        "worst_adjacent_dot_exact": worst_s,
        "certified": cert.certified,
    }
    if emit_vectors:
        if cert.spec.n_vertices > VECTOR_EMIT_LIMIT:
            raise ValueError(
                f"refusing to emit {cert.spec.n_vertices} vectors "
                f"(limit {VECTOR_EMIT_LIMIT})"
            )
        payload["vectors"] = [[float(x) for x in row] for row in cert.vectors]
    return payload


def _cmd_kneser_bounds(args) -> int:
    start = time.perf_counter()
    spec = KneserSpec(args.m, args.r, args.t)
    unweighted = kneser_vectors(spec)
    milner, chrom_lower = kneser_chromatic_lower(spec)
    result = {
        "m": spec.m,
        "r": spec.r,
        "t": spec.t,
        "n_vertices": spec.n_vertices,
        "unweighted": _certificate_payload(unweighted, args.emit_vectors),
        "weighted": None,
        "milner_bound": milner,
        "chromatic_lower": str(chrom_lower),
        "chromatic_lower_float": float(chrom_lower),
        "chromatic_lower_log2": math.log2(chrom_lower),
    }
    if args.weighted:
        weighted = kneser_weighted(spec)  # raises ValueError when r^2 <= mt
        result["weighted"] = _certificate_payload(weighted, args.emit_vectors)
    _emit(args, _json_dumps(result))
    _write_manifest(
        args,
        RunManifest(
            command=sys.argv[1:] if args._argv is None else args._argv,
            seed=None,
            config={"m": spec.m, "r": spec.r, "t": spec.t, "weighted": args.weighted},
            input_sha256=hashlib.sha256(
                f"kneser-bounds {spec.m} {spec.r} {spec.t}".encode()
            ).hexdigest(),
            tool_version=__version__,
            wall_clock_seconds=time.perf_counter() - start,
        ),
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _CliParser(prog="vectorcolor", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve the vector-coloring SDP")
    p_solve.add_argument("path", help="DIMACS edge-format file")
    p_solve.add_argument("--strict", action="store_true", help="equality variant")
    p_solve.add_argument("--eps", type=float, default=None, help="objective tolerance")
    p_solve.add_argument("--seed", type=int, default=None)
    p_solve.add_argument("--vectors", action="store_true", help="include vectors")
    p_solve.add_argument("--out", default=None)
    p_solve.add_argument("--manifest", default=None)
    p_solve.set_defaults(func=_cmd_solve)

    p_color = sub.add_parser("color", help="color a graph end to end")
    p_color.add_argument("path")
    p_color.add_argument(
        "--method", choices=["hyperplane", "projection", "auto"], default="auto"
    )
    p_color.add_argument("--seed", type=int, default=None)
    p_color.add_argument("--trials", type=int, default=None)
    p_color.add_argument(
        "--delta", type=float, default=None, help="Wigderson degree threshold override"
    )
    p_color.add_argument("--out", default=None)
    p_color.add_argument("--manifest", default=None)
    p_color.set_defaults(func=_cmd_color)

    p_theta = sub.add_parser("theta", help="theta function of the complement")
    p_theta.add_argument("path")
    p_theta.add_argument("--out", default=None)
    p_theta.add_argument("--manifest", default=None)
    p_theta.set_defaults(func=_cmd_theta)

    p_gen = sub.add_parser("gen", help="generate instances as DIMACS")
    gen_sub = p_gen.add_subparsers(dest="kind", required=True)
    p_kneser = gen_sub.add_parser("kneser")
    p_kneser.add_argument("m", type=int)
    p_kneser.add_argument("r", type=int)
    p_kneser.add_argument("t", type=int)
    p_planted = gen_sub.add_parser("planted")
    p_planted.add_argument("n", type=int)
    p_planted.add_argument("k", type=int)
    p_planted.add_argument("p", type=float)
    for gp in (p_kneser, p_planted):
        gp.add_argument("--seed", type=int, default=None)
        gp.add_argument("--out", default=None)
        gp.add_argument("--manifest", default=None)
        gp.set_defaults(func=_cmd_gen)

    p_bench = sub.add_parser("bench", help="run a benchmark suite, emit CSV")
    p_bench.add_argument("suite", help="JSON suite file")
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument("--out", default=None)
    p_bench.add_argument("--manifest", default=None)
    p_bench.set_defaults(func=_cmd_bench)

    p_kb = sub.add_parser("kneser-bounds", help="Kneser gap calculators")
    p_kb.add_argument("m", type=int)
    p_kb.add_argument("r", type=int)
    p_kb.add_argument("t", type=int)
    p_kb.add_argument("--weighted", action="store_true")
    p_kb.add_argument("--emit-vectors", action="store_true", dest="emit_vectors")
    p_kb.add_argument("--out", default=None)
    p_kb.add_argument("--manifest", default=None)
    p_kb.set_defaults(func=_cmd_kneser_bounds)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args._argv = argv
        return args.func(args)
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SolverError, RoundingContractError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
