"""Permutation designs under the fixed-point distance, Charlier zeros and covering-radius bounds."""

from .bounds import (BoundReport, bound_report, half_strength, krasikov_upper, theorem1_bound,
                     theorem2_bound, verify_annihilation)
from .charlier import (RootBracket, charlier_poly, integer_root_scan, largest_zero, reversed_eval,
                       space_inner_product, sturm_count, verify_orthogonality)
from .combinatorics import RencontresTable, derangements, rencontres, space_moment
from .design import (FrequencyVector, StrengthReport, design_expectation, design_moment,
                     design_strength, frequencies, is_one_design)
from .perm import (Permutation, PermSet, compose, construct_named, distance, fixed_points,
                   generate_group, inverse, parse_permset, transitivity_degree)
from .polynomial import IntPolynomial
from .radius import RadiusResult, covering_radius, covering_radius_naive, farthest_points

__version__ = "0.1.0"
