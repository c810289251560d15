"""Exact tools for intersecting linear systems.

Build instances (cyclic two-apex systems, projective planes, the
ten-point system C and its four-line relatives, matchings, stars,
random systems), solve for the transversal number tau and the 2-packing
number nu2 with proof of optimality, test the inequalities relating
them, and compare instances up to isomorphism.
"""

from .canon import SearchBudgetExceeded, canonical_form, is_isomorphic
from .constructions import (
    C44Member,
    ConstructionLabeling,
    GenerationExhausted,
    InvalidParameterError,
    build_c,
    build_cnn,
    delete_triangle,
    enumerate_c44,
    find_triangles,
    matching,
    pad_uniform,
    projective_plane,
    random_linear_system,
    star,
)
from .core import (
    DuplicateLineError,
    LinearSystem,
    LinearSystemError,
    LinearityViolation,
    NotUniformError,
    degree_profile,
    delete_line,
    delete_point,
    is_intersecting,
    new_system,
    reduce_system,
    uniformity,
)
from .files import (
    InstanceFormatError,
    load_instance,
    read_instance,
    render_instance,
    write_instance,
)
from .solvers import (
    SearchBudget,
    SolveResult,
    TooLargeError,
    brute_force_nu2,
    brute_force_tau,
    degree_two_cover,
    greedy_transversal,
    transversal_number,
    two_packing_number,
)
from .verify import evaluate_instance, points_lines_ratio, run_suite

__all__ = [
    "C44Member",
    "ConstructionLabeling",
    "DuplicateLineError",
    "GenerationExhausted",
    "InstanceFormatError",
    "InvalidParameterError",
    "LinearSystem",
    "LinearSystemError",
    "LinearityViolation",
    "NotUniformError",
    "SearchBudget",
    "SearchBudgetExceeded",
    "SolveResult",
    "TooLargeError",
    "brute_force_nu2",
    "brute_force_tau",
    "build_c",
    "build_cnn",
    "canonical_form",
    "degree_profile",
    "degree_two_cover",
    "delete_line",
    "delete_point",
    "delete_triangle",
    "enumerate_c44",
    "evaluate_instance",
    "find_triangles",
    "greedy_transversal",
    "is_intersecting",
    "is_isomorphic",
    "load_instance",
    "matching",
    "new_system",
    "pad_uniform",
    "points_lines_ratio",
    "projective_plane",
    "random_linear_system",
    "read_instance",
    "reduce_system",
    "render_instance",
    "run_suite",
    "star",
    "transversal_number",
    "two_packing_number",
    "uniformity",
    "write_instance",
]

__version__ = "0.1.0"
