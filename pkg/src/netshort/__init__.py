"""Continuous diameter of plane networks and diameter-reducing shortcuts."""

from .approx import approx_optimal_shortcut, best_extension, enumerate_anchor_pairs, extension_eccentricities
from .augment import (
    Candidate,
    candidate_from_points,
    diameter_with_segment,
    insert_segment,
    is_shortcut,
    make_candidate,
    maximal_extension,
)
from .distance import continuous_diameter, diameter_value, ecc_profile, point_distance, vertex_distances
from .envelope import EnvelopeLine, upper_envelope
from .errors import NetshortError
from .network import LocusPoint, Network, PathNetwork, as_path, build_network, load_network, path_network
from .oracle import OracleConfig, grid_shortcut_search, sampled_diameter
from .pathfast import (
    decompose,
    optimal_fixed_orientation_shortcut,
    path_diameter_with_shortcut,
    two_chain_diameter,
)
from .pathsimple import Existence, existence_sufficient, optimal_simple_shortcut, simple_diagnostics

__all__ = [
    "Candidate",
    "EnvelopeLine",
    "Existence",
    "LocusPoint",
    "NetshortError",
    "Network",
    "OracleConfig",
    "PathNetwork",
    "approx_optimal_shortcut",
    "as_path",
    "best_extension",
    "build_network",
    "candidate_from_points",
    "continuous_diameter",
    "decompose",
    "diameter_value",
    "diameter_with_segment",
    "ecc_profile",
    "enumerate_anchor_pairs",
    "existence_sufficient",
    "extension_eccentricities",
    "grid_shortcut_search",
    "insert_segment",
    "is_shortcut",
    "load_network",
    "make_candidate",
    "maximal_extension",
    "optimal_fixed_orientation_shortcut",
    "optimal_simple_shortcut",
    "path_diameter_with_shortcut",
    "path_network",
    "point_distance",
    "sampled_diameter",
    "simple_diagnostics",
    "two_chain_diameter",
    "upper_envelope",
    "vertex_distances",
]
