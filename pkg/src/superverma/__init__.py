"""Exact determinant formula and irreducibility tests for parabolic Verma
modules over gl(m|n), osp(M|2n) and D(2,1;alpha)."""

from .algebra import AlgebraSpec, Root, RootSystem, build_algebra
from .characters import FormalChar, ParabolicDatum
from .errors import (ConsistencyError, DepthError, DomainError, ResourceError, SamplingError,
                     SpecError, SupervermaError)
from .formula import degree_check, enumerate_factors, eval_formula, verify_offset
from .irreducibility import (condition_M, condition_M_plus, condition_M_plus_plus,
                             criterion_global, criterion_per_class, delta_classes,
                             irreducibility_report, psi_sets)
from .linalg import RatMatrix, det
from .verma import brute_determinant, build_irrep_l, casimir, gram_block

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec", "Root", "RootSystem", "build_algebra", "FormalChar", "ParabolicDatum",
    "ConsistencyError", "DepthError", "DomainError", "ResourceError", "SamplingError",
    "SpecError", "SupervermaError", "degree_check", "enumerate_factors", "eval_formula",
    "verify_offset", "condition_M", "condition_M_plus", "condition_M_plus_plus",
    "criterion_global", "criterion_per_class", "delta_classes", "irreducibility_report",
    "psi_sets", "RatMatrix", "det", "brute_determinant", "build_irrep_l", "casimir",
    "gram_block",
]
