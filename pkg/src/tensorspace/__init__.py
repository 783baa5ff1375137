"""Symmetry groups of tensor spaces built from finite relational structures."""

from .autgroup import (
    MonomialGroup,
    brute_force_monomial_group,
    construction_forms,
    monomial_automorphism_search,
    rigidity_certificate,
    verify_construction,
    verify_diagonal,
)
from .caps import CapExceeded, Caps
from .cyclotomic import CyclotomicScalar
from .forms import SparseForm, Vector, diagonal_form, evaluate, pullback, relation_form
from .monomial import MonomialMap
from .polynomial import Polynomial, is_power_of_linear_form
from .relstruct import (
    OrbitPartition,
    PermGroup,
    RelationalStructure,
    automorphism_search,
    group_closure,
    orbit_partition,
)
from .repthy import irreducibility_check, length_report, summand_decomposition, tuple_character

__all__ = [
    "CapExceeded",
    "Caps",
    "CyclotomicScalar",
    "MonomialGroup",
    "MonomialMap",
    "OrbitPartition",
    "PermGroup",
    "Polynomial",
    "RelationalStructure",
    "SparseForm",
    "Vector",
    "automorphism_search",
    "brute_force_monomial_group",
    "construction_forms",
    "diagonal_form",
    "evaluate",
    "group_closure",
    "irreducibility_check",
    "is_power_of_linear_form",
    "length_report",
    "monomial_automorphism_search",
    "orbit_partition",
    "pullback",
    "relation_form",
    "rigidity_certificate",
    "summand_decomposition",
    "tuple_character",
    "verify_construction",
    "verify_diagonal",
]

__version__ = "0.1.0"
