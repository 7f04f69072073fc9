"""Null cones, their stabilizer Lie algebras and cofree fibers, computed exactly over Q."""

from .ideals import (EqualUpTo, FiberIdeal, GradedIdeal, MembershipCertificate, NotMember, NotPreservedAtHeadroom,
                     NotRegular, RegularUpTo, SyzygyNotKoszul, UndeterminedAtHeadroom, Witness, graded_comparison,
                     graded_piece_basis, jacobian_rank_at, koszul_reduce, leading_form_space, map_preserves_ideal,
                     membership, nullcone_ideal, regular_sequence_check, truncated_membership)
from .invariants import (GeneratorSet, WeightSystem, adjoint_trace_generators, contraction_generators,
                         invariants_equal_up_to, minimal_monomial_generators, pfaffian_scenario_generators,
                         sym2_vector_generators, weight_of_monomial)
from .liealg import (Indeterminate, MatrixLieAlgebra, NonReductive, Reductive, close_check, derived_series,
                     is_nilpotent, is_semisimple_matrix, radical, reductivity_verdict)
from .matrices import AffineMap, Matrix, bracket
from .poly import (Polynomial, derivation_apply, format_poly, monomials_of_degree, parse_poly,
                   partial_derivative)
from .stabilizer import (StabilizerResult, affine_stabilizer_algebra, annihilator_algebra, commutant_check,
                         ideal_stabilizer_algebra)

__version__ = "0.1.0"
