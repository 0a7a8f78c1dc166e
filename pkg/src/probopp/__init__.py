"""Probabilistic squares and hexagons of opposition over conditional events.

Sentences are pairs of a family of conditional events and a set of
probability assessments; their relations are decided on coherent
assessments only.  See :mod:`probopp.quantifiers` for the threshold
instantiations and :mod:`probopp.cli` for the batch front end.
"""

from .coherence import (
    AUTO,
    Auto,
    ExactPi,
    Grid,
    LambdaLP,
    check_coherence,
    compute_pi,
    find_dutch_book,
    g_coherent,
    pi_equal,
    pi_is_empty,
    pi_subset,
)
from .events import ConditionalEvent, EventContext, Family, parse_formula
from .oppositions import (
    Hexagon,
    Square,
    Tripartition,
    hexagon_from_contraries,
    hexagon_from_tripartition,
    square_from_contraries,
    square_from_tripartition,
    to_dot,
    verify_hexagon,
    verify_square,
)
from .quantifiers import basic_hexagon, basic_square, mean_hexagon, mean_tripartition
from .regions import Region, box, complement, halfspace, intersect, point, union
from .sentences import Sentence, is_contradictory, is_contrary, is_subaltern, is_subcontrary

__all__ = [
    "AUTO",
    "Auto",
    "ExactPi",
    "Grid",
    "LambdaLP",
    "check_coherence",
    "compute_pi",
    "find_dutch_book",
    "g_coherent",
    "pi_equal",
    "pi_is_empty",
    "pi_subset",
    "ConditionalEvent",
    "EventContext",
    "Family",
    "parse_formula",
    "Hexagon",
    "Square",
    "Tripartition",
    "hexagon_from_contraries",
    "hexagon_from_tripartition",
    "square_from_contraries",
    "square_from_tripartition",
    "to_dot",
    "verify_hexagon",
    "verify_square",
    "basic_hexagon",
    "basic_square",
    "mean_hexagon",
    "mean_tripartition",
    "Region",
    "box",
    "complement",
    "halfspace",
    "intersect",
    "point",
    "union",
    "Sentence",
    "is_contradictory",
    "is_contrary",
    "is_subaltern",
    "is_subcontrary",
]

__version__ = "0.1.0"
