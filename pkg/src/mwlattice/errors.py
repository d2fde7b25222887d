"""Exception hierarchy for mwlattice.

Every library error derives from MWLError so the CLI can map failures to
exit codes: input validation -> 2, computation -> 3, unsupported -> 4.
"""


class MWLError(Exception):
    """Base class for all mwlattice errors."""

    exit_code = 3


class InputValidationError(MWLError):
    exit_code = 2


class UnsupportedError(MWLError):
    exit_code = 4


class DivisionByZero(MWLError, ZeroDivisionError):
    pass


class FieldMismatch(InputValidationError):
    """Operands belong to different field specs."""


class UnsupportedField(UnsupportedError):
    """Operation needs tower structure the field does not carry."""


class FieldDegreeCap(UnsupportedError):
    """A requested extension would exceed the field degree cap."""


class ZeroPolynomial(InputValidationError):
    pass


class FactorizationFailure(UnsupportedError):
    """Factoring strategy exhausted; carries the partial splitting."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial or []


class SingularModel(InputValidationError):
    """Discriminant vanishes identically."""


class NotEllipticSurface(InputValidationError):
    """Sing(phi) is empty: every fiber smooth, no surface structure."""


class UnsupportedResidue(UnsupportedError):
    """Residue computation beyond the supported field strategy."""


class IrreducibleFiber(InputValidationError):
    """Intersection matrix requested for a one-component fiber."""


class ModelMismatch(InputValidationError):
    """Sections live on different Weierstrass models."""


class UnsupportedFiberType(UnsupportedError):
    """Component location not implemented for this Kodaira type."""


class InternalInconsistency(MWLError):
    """An invariant the algorithms rely on failed; signals a bug."""


class NotInSpan(MWLError):
    """Section is not generated by the claimed presentation."""


class CommonComponent(InputValidationError):
    """Two plane curves share a component."""


class WrongPencilShape(InputValidationError):
    """Quartic is not cubic and monic in x in pencil coordinates."""


class ScenarioError(InputValidationError):
    """Scenario file failed validation."""
