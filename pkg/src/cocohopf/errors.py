"""Exception hierarchy.  Every validation error may carry a ``witness``."""
from __future__ import annotations


class CocoHopfError(Exception):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ValidationError(CocoHopfError):
    """Input data violates a structural invariant."""


class GroupError(ValidationError):
    pass


class AutomorphismEnumerationInfeasible(CocoHopfError):
    pass


class LieAlgebraError(ValidationError):
    pass


class MorphismError(ValidationError):
    pass


class ActionError(ValidationError):
    pass


class NormalityError(ValidationError):
    pass


class CompatibilityError(CocoHopfError):
    """Two morphisms do not recombine into a morphism of semidirect products."""


class CertificationError(CocoHopfError):
    """An independent check disagreed with a computed result.

    This always points at an invalid input bypassing validation or at a bug;
    it is never swallowed.
    """
