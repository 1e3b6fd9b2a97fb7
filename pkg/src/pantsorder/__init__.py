"""Lengths, self-intersections and length orders of closed geodesics on a hyperbolic pair of pants."""

from .rep import PantsMetric, build_representation, length_of_word, metric_from_lengths, trace_of_word
from .selfint import selfint
from .systoles import enumerate_candidates, ksystole
from .theta import certify_order, theta, xi_length
from .words import CyclicWord, FreeWord, UnorientedClass, parse_word

__all__ = [
    "CyclicWord",
    "FreeWord",
    "PantsMetric",
    "UnorientedClass",
    "build_representation",
    "certify_order",
    "enumerate_candidates",
    "ksystole",
    "length_of_word",
    "metric_from_lengths",
    "parse_word",
    "selfint",
    "theta",
    "trace_of_word",
    "xi_length",
]
