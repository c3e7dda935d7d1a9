"""Integer linear algebra and finitely presented groups."""

from .fox import (GroupRingElement, InconsistentAbelianizationError, abelianization_vectors,
                  alexander_matrix, elementary_ideal_check, fox_derivative,
                  free_abelianization_map, fundamental_identity_holds)
from .groups import (AbelianGroup, GroupPresentation, TracedAbelianGroup, abelianization,
                     cokernel, eliminate_generator, free_reduce, h1_from_presentation,
                     homology_of_complex, invert, parse_presentation, parse_word,
                     simplify_presentation)
from .laurent import LaurentMatrix, LaurentPoly
from .snf import invariant_factors, rank, snf

__all__ = [
    "AbelianGroup", "GroupPresentation", "GroupRingElement", "InconsistentAbelianizationError",
    "LaurentMatrix", "LaurentPoly", "TracedAbelianGroup", "abelianization",
    "abelianization_vectors", "alexander_matrix", "cokernel", "elementary_ideal_check",
    "eliminate_generator", "fox_derivative", "free_abelianization_map", "free_reduce",
    "fundamental_identity_holds", "h1_from_presentation", "homology_of_complex",
    "invariant_factors", "invert", "parse_presentation", "parse_word", "rank",
    "simplify_presentation", "snf",
]
