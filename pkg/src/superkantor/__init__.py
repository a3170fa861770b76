"""Exact computations with Jordan brackets, Kantor doubles and delta-superderivations."""

__version__ = "0.1.0"

from .exactlin import (Matrix, Subspace, as_scalar, format_scalar, intersect_subspaces,
                       kernel_basis, parse_scalar, rank, subspace_contains, subspaces_equal)
from .superalg import (CheckReport, Element, PreconditionError, SuperAlgebra, Witness,
                       find_unit, is_associative, is_commutative, is_supercommutative,
                       matrix_algebra, multiply, parity_of, simple_extension, tensor_product,
                       truncated_polynomials)
from .grassmann import grassmann_algebra, grassmann_envelope, grassmann_poisson_bracket
from .bracket import (Bracket, GradedOperator, LeibnizError, add_brackets, bracket_D,
                      bracket_eval, check_bracket_identities, check_general_jordan,
                      check_leibniz, check_poisson, check_product_shift, check_unital_jordan,
                      commutator_bracket, is_superskew, random_superskew_bracket,
                      scaled_bracket, vector_type_bracket, zero_bracket)
from .kantor import (DoubleJordanVerdict, KantorDouble, check_jordan_algebra,
                     check_jordan_superidentities, check_jordan_via_envelope,
                     double_jordan_verdict, kantor_double)
from .deltaderiv import (HalfDerivationReport, PrimeVerdict, SolutionSpace, bracket_half_derivations,
                         centroid, classify_triviality, delta_superderivations, derivations,
                         half_derivation_experiment, intersect, is_prime_associative_smalldim,
                         product_span_annihilator, supercentroid, verify_solution_space)
from .algebra_file import AlgebraFileError, dumps, load, loads

__all__ = [name for name in dir() if not name.startswith("_")]
