"""Sunada pairs of surface covers and their simple length spectra.

Finite quotients of surface groups, Schreier covers built from almost
conjugate subgroups, and combinatorial self-intersection of curve elevations,
with trace polynomials and a hyperbolic oracle as independent checks.
"""

from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    CosetSpace,
    build_semidirect_z8,
    build_sl,
    build_symmetric,
    conjugating_element,
    gassmann_search,
    is_almost_conjugate,
    parse_cycles,
    subgroup_from_generators,
)
from .words import CyclicWord, SurfacePresentation, Word, make_quotient, parse_word
from .ribbon import RibbonGraph, self_intersection
from .cover import SchreierCover, build_cover, combinatorial_isospectrality, cover_genus, elevations_of
from .curves import count_simple_elevations, elevation_self_intersection
from .traces import TracePoly, no_length_twins_certificate, trace_polynomial
from .hyperbolic import length_of, rep_from_traces, self_intersection_oracle

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup",
    "GroupError",
    "Subgroup",
    "CosetSpace",
    "build_semidirect_z8",
    "build_sl",
    "build_symmetric",
    "conjugating_element",
    "gassmann_search",
    "is_almost_conjugate",
    "parse_cycles",
    "subgroup_from_generators",
    "CyclicWord",
    "SurfacePresentation",
    "Word",
    "make_quotient",
    "parse_word",
    "RibbonGraph",
    "self_intersection",
    "SchreierCover",
    "build_cover",
    "combinatorial_isospectrality",
    "cover_genus",
    "elevations_of",
    "count_simple_elevations",
    "elevation_self_intersection",
    "TracePoly",
    "no_length_twins_certificate",
    "trace_polynomial",
    "length_of",
    "rep_from_traces",
    "self_intersection_oracle",
]
