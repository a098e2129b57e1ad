"""Restricted Lie superalgebras, their restricted enveloping algebras, and non-matrix identity conditions."""

from .analysis import (
    ConditionReport,
    check_condition2,
    check_condition3,
    check_nonmatrix_identity,
    check_petrogradsky,
    equivalence_audit,
)
from .envelope import (
    augmentation_ideal,
    commutator_ideal,
    envelope,
    ideal_power_chain,
    nil_index_probe,
    pbw_dimension,
    regular_representation,
)
from .exactfield import FieldElement, FieldSpec, NoRoot
from .liesuper import RestrictedLieSuperalgebra, verify_axioms

__version__ = "0.1.0"

__all__ = [
    "ConditionReport",
    "check_condition2",
    "check_condition3",
    "check_nonmatrix_identity",
    "check_petrogradsky",
    "equivalence_audit",
    "augmentation_ideal",
    "commutator_ideal",
    "envelope",
    "ideal_power_chain",
    "nil_index_probe",
    "pbw_dimension",
    "regular_representation",
    "FieldElement",
    "FieldSpec",
    "NoRoot",
    "RestrictedLieSuperalgebra",
    "verify_axioms",
]
