"""Exact computations on transverse taut veering ideal triangulations."""
from .blowup import PseudoAnosovTree, fill_even_family, regional_blowup, validate_filling
from .boundary import build_boundary, check_veering_rule
from .carried import carried_cone, is_fiber_class, reconstruct_sheets, upward_flip
from .cli import DualityReport, run_duality_check
from .cones import RationalCone
from .homology import homology_h1, pairing, smith_normal_form, transversalize
from .stable_track import (build_stable_track, enumerate_minimal_stable_loops,
                           ladderpole_stable_loop)
from .triangulation import (IdealTriangulation, VeeringTriangulation, parse_explicit,
                            parse_taut_signature, read_census, serialize, validate_taut,
                            validate_veering)

__all__ = [
    "DualityReport", "IdealTriangulation", "PseudoAnosovTree", "RationalCone",
    "VeeringTriangulation", "build_boundary", "build_stable_track", "carried_cone",
    "check_veering_rule", "enumerate_minimal_stable_loops", "fill_even_family",
    "homology_h1", "is_fiber_class", "ladderpole_stable_loop", "pairing",
    "parse_explicit", "parse_taut_signature", "read_census", "reconstruct_sheets",
    "regional_blowup", "run_duality_check", "serialize", "smith_normal_form",
    "transversalize", "upward_flip", "validate_filling", "validate_taut",
    "validate_veering",
]
