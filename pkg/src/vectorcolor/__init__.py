"""Approximate graph coloring through the vector-coloring SDP relaxation.

The pipeline: solve the relaxation (``solve_vector_coloring``), round the
unit vectors into a legal coloring with random hyperplanes or normal
projections (``color_graph``), and cross-check the strict relaxation
against the theta function of the complement (``theta_dual``).  Kneser
graphs supply certified gaps between the relaxation and the true
chromatic number (``kneser_vectors``, ``kneser_weighted``).
"""

__version__ = "0.1.0"

from .graphs import (
    DimacsWarning,
    Graph,
    KneserSpec,
    bipartition,
    complement,
    emit_dimacs,
    generate_kneser,
    generate_planted,
    induced_subgraph,
    parse_dimacs,
)
from .solver import (
    MatrixColoring,
    NonConvergenceError,
    SolverConfig,
    SolverError,
    VectorColoring,
    factor_gram,
    make_simplex_vectors,
    project_neighborhood,
    result_to_json_dict,
    solve_strict_vector_coloring,
    solve_vector_coloring,
)
from .theta import theta_dual
from .rounding import (
    CaptureResult,
    Coloring,
    RoundingConfig,
    RoundingContractError,
    Semicoloring,
    WigdersonResult,
    color_graph,
    compute_capture_params,
    extract_independent_set,
    hyperplane_semicolor,
    normal_density,
    normal_tail,
    projection_capture,
    projection_semicolor,
    sample_standard_normal_vector,
    semicolor_to_color,
    separation_probability_estimate,
    wigderson_reduce,
)
from .analysis import (
    ColoringReport,
    KneserCertificate,
    SemicoloringReport,
    VectorColoringReport,
    chromatic_brute_force,
    independence_brute_force,
    kneser_chromatic_lower,
    kneser_vectors,
    kneser_weighted,
    verify_coloring,
    verify_semicoloring,
    verify_vector_coloring,
)

__all__ = [
    "__version__",
    "CaptureResult",
    "Coloring",
    "ColoringReport",
    "DimacsWarning",
    "Graph",
    "KneserCertificate",
    "KneserSpec",
    "MatrixColoring",
    "NonConvergenceError",
    "RoundingConfig",
    "RoundingContractError",
    "Semicoloring",
    "SemicoloringReport",
    "SolverConfig",
    "SolverError",
    "VectorColoring",
    "VectorColoringReport",
    "WigdersonResult",
    "bipartition",
    "chromatic_brute_force",
    "color_graph",
    "complement",
    "compute_capture_params",
    "emit_dimacs",
    "extract_independent_set",
    "factor_gram",
    "generate_kneser",
    "generate_planted",
    "hyperplane_semicolor",
    "independence_brute_force",
    "induced_subgraph",
    "kneser_chromatic_lower",
    "kneser_vectors",
    "kneser_weighted",
    "make_simplex_vectors",
    "normal_density",
    "normal_tail",
    "parse_dimacs",
    "project_neighborhood",
    "projection_capture",
    "projection_semicolor",
    "result_to_json_dict",
    "sample_standard_normal_vector",
    "semicolor_to_color",
    "separation_probability_estimate",
    "solve_strict_vector_coloring",
    "solve_vector_coloring",
    "theta_dual",
    "verify_coloring",
    "verify_semicoloring",
    "verify_vector_coloring",
    "wigderson_reduce",
]
