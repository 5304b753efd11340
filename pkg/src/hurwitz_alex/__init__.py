"""Exact Alexander polynomials of C-groups and constructive realization of
cyclotomic targets as Hurwitz C-groups."""
from .alexmod import (ZERO, AlexanderResult, alexander_polynomial, central_power_certificate,
                      cyclic_shift_matrix, integral_module, rs_rewrite, shift_equivariance_check)
from .cgroup import (ConjRelation, CPresentation, HurwitzDatum, Word, abelian, builtin,
                     datum_product, example_4_1, example_4_2, free, g2, hurwitz_expand,
                     hurwitz_product, irreducible_components, is_hurwitz_presentation)
from .checks import betti_statistic, classify_realizability, grku_properties
from .errors import (HurwitzAlexError, NotInvolution, NotRealizable, NotRootsOfUnity, ParseError,
                     PreconditionFailed, Refusal, VerificationFailed)
from .involution import decompose, semidirect_stats, two_rank_of_quotient
from .linalg import IntMatrix, charpoly, smith_qt, smith_z
from .parsing import format_presentation, parse_matrix, parse_poly, parse_presentation
from .poly import LaurentPoly, Poly, cyclotomic, factor_cyclotomic
from .realize import (SemidirectModel, realize_auto, realize_irreducible, realize_irreducible_squarefree,
                      realize_pm,
                      realize_reducible_layer, realize_theorem2)

__version__ = "0.1.0"
