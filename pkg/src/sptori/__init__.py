"""Exact construction and verification of symplectic Lie tori sp_2r(a) and their coordinate algebras."""
from .foundations import GroupSpec, GroupElement, qq, subgroup_generated
from .algebra import GradedAlgebra, Involution
from .constructors import (CliffordData, CocycleMatrix, cayley_dickson_double, clifford_torus, octonion_torus,
                           quantum_torus, reversal_involution)
from .sp import build_sp
from .verify import verify_lie_g_torus
from .coordinates import (classify, define_skew_product, extract_coordinates, lemma_checks, round_trip,
                          run_pipeline, seligman_suite, split_B)
from .serialize import algebra_from_config

__version__ = "0.1.0"
