"""Exact combinatorial Heegaard Floer homology for nice diagrams."""
from .contact import contact_class, contact_cycle_check, giroux_stabilize_marked, loss_class
from .diagram import (ContactMarking, Dart, PointedDiagram, Region, canonical_form, dump_diagram,
                      load_diagram, parse_diagram, quadrant_map, same_diagram, swap_roles)
from .domains import (delta_s, euler_measure, extremely_weak_admissibility, find_domain,
                      maslov_index, point_measure, strong_admissibility, weak_admissibility)
from .errors import NiceHFError
from .floer import differential, empty_polygons, hf_hat, is_nice
from .generators import enumerate_generators, epsilon, first_homology, partition_spinc
from .knot import hfk_hat, knot_differential, knot_trace
from .moves import collapse_bigon, connected_sum, destabilize, finger_move, stabilize

__version__ = "0.1.0"

__all__ = [
    "ContactMarking", "Dart", "PointedDiagram", "Region", "canonical_form", "dump_diagram",
    "load_diagram", "parse_diagram", "quadrant_map", "same_diagram", "swap_roles",
    "delta_s", "euler_measure", "extremely_weak_admissibility", "find_domain", "maslov_index",
    "point_measure", "strong_admissibility", "weak_admissibility", "NiceHFError", "differential",
    "empty_polygons", "hf_hat", "is_nice", "enumerate_generators", "epsilon", "first_homology",
    "partition_spinc", "hfk_hat", "knot_differential", "knot_trace", "collapse_bigon",
    "connected_sum", "destabilize", "finger_move", "stabilize", "contact_class",
    "contact_cycle_check", "giroux_stabilize_marked", "loss_class",
]
