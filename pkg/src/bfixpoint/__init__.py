"""Fixed-point engine for set-valued contractions in b-metric spaces.

Builds Picard-style orbits for set-valued maps, certifies their geometric
decay and Cauchy tail bounds, checks quasi-contraction hypotheses, and
verifies computed fixed points, with brute-force oracles on finite spaces.
"""

from .bspace import (
    AxiomReport,
    AxiomViolation,
    BMetricSpace,
    Point,
    estimate_min_s,
    make_matrix_space,
    make_power_space,
    matrix_space_from_json,
    verify_axioms,
)
from .orbit import (
    CauchyCertificate,
    FixedPointCheck,
    OrbitTrace,
    RatioViolation,
    cauchy_bound,
    cauchy_series,
    chaining_bound,
    gamma_of,
    run_orbit,
    select_next,
    verify_fixed_point,
)
from .quasicontraction import (
    ContractionCertificate,
    QuasiParams,
    SetValuedMap,
    all_pairs,
    certify,
    check_hypotheses,
    enumerate_fixed_points,
    five_term_max,
    image_of,
    make_branch_map,
    make_table_map,
    map_from_json,
    n_functional,
)
from .scenarios import (
    Scenario,
    ScenarioFormatError,
    builtin,
    certify_scenario,
    instantiate,
    load,
    paper_example,
    random_finite,
    sample_points,
    save,
    scenario_digest,
)
from .setops import PointSet, SetDistance, dist_point_set, hausdorff, make_point_set

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "AxiomViolation",
    "BMetricSpace",
    "CauchyCertificate",
    "ContractionCertificate",
    "FixedPointCheck",
    "OrbitTrace",
    "Point",
    "PointSet",
    "QuasiParams",
    "RatioViolation",
    "Scenario",
    "ScenarioFormatError",
    "SetDistance",
    "SetValuedMap",
    "all_pairs",
    "builtin",
    "cauchy_bound",
    "cauchy_series",
    "certify",
    "certify_scenario",
    "chaining_bound",
    "check_hypotheses",
    "dist_point_set",
    "enumerate_fixed_points",
    "estimate_min_s",
    "five_term_max",
    "gamma_of",
    "hausdorff",
    "image_of",
    "instantiate",
    "load",
    "make_branch_map",
    "make_matrix_space",
    "make_point_set",
    "make_power_space",
    "make_table_map",
    "map_from_json",
    "matrix_space_from_json",
    "n_functional",
    "paper_example",
    "random_finite",
    "run_orbit",
    "sample_points",
    "save",
    "scenario_digest",
    "select_next",
    "verify_axioms",
    "verify_fixed_point",
]
