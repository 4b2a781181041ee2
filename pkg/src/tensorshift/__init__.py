"""Norms of symmetric and antisymmetric tensor products of weighted shift powers."""

from .indexcomb import (CensusReport, MultiIndexClass, StrictIndexTuple, census, census_antisym,
                        enumerate_classes, enumerate_strict, partitions_P, partitions_Q)
from .specnorm import NormProfile, largest_singular_value, norm_profile, power_iteration
from .tensorblocks import GradedBlock, build_block, build_sym_block, build_wedge_block
from .verify import (VerificationReport, find_gap, lower_bound_operators, lower_bound_vectors,
                     run_lemma_suite, testvector_lower_bound, verify_theorem)
from .weights import (ExponentTuple, WeightSequence, beta, gamma, is_regular, parse_exponents,
                      parse_weightspec, power_norm)

__all__ = [
    "CensusReport", "ExponentTuple", "GradedBlock", "MultiIndexClass", "NormProfile",
    "StrictIndexTuple", "VerificationReport", "WeightSequence", "beta", "build_block",
    "build_sym_block", "build_wedge_block", "census", "census_antisym", "enumerate_classes",
    "enumerate_strict", "find_gap", "gamma", "is_regular", "largest_singular_value",
    "lower_bound_operators", "lower_bound_vectors", "norm_profile", "parse_exponents",
    "parse_weightspec", "partitions_P", "partitions_Q", "power_iteration", "power_norm",
    "run_lemma_suite", "testvector_lower_bound", "verify_theorem",
]
