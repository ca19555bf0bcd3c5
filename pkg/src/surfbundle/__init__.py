"""Exact homology of surface bundles over surfaces from holonomy data.

The package computes, over the rationals and with exact arithmetic
throughout, the homology of the total space of an oriented surface bundle
whose base is either a closed surface or a surface with one boundary
component, directly from the symplectic matrices by which the holonomy acts
on the first homology of the fiber.  It also searches words in the holonomy
generators for products with eigenvalue 1, the homological candidates for
toroidal classes.
"""

from .linalg import (Matrix, Subspace, Vector, commutator, hstack,
                     image_basis, kernel_basis, membership, rank, rref,
                     subspace_intersection, subspace_sum, vstack)
from .symplectic import (CLOSED, ONE_BOUNDARY, HolonomyProblem,
                         SymplecticMatrix, TwistWord, ValidationError,
                         build_problem, check_surface_relation, evaluate_word,
                         is_symplectic, named_curve_class, omega,
                         parse_twist_word, standard_form, transvection)
from .homology import (BettiReport, CylinderClass, GeneratorEntry, Verdict,
                       beta_map, coinvariant_quotient, cylinder_space,
                       homology, homology_bounded, homology_closed,
                       invariant_space, validate_report)
from .search import (DEFAULT_MAX_STATES, SearchHit, StateLimitError,
                     cycle_from_hit, enumerate_products, find_fixed_classes,
                     word_str)
from .serialize import (ParseError, dumps, homology_report_dict,
                        parse_problem, search_report_dict, serialize_problem)
from .cli import kunneth_betti, main

__version__ = "0.1.0"
