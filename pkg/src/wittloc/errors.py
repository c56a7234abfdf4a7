"""Exception hierarchy shared by every wittloc module."""


class WittlocError(Exception):
    """Base class for all library errors."""


class UnsupportedField(WittlocError):
    """Field descriptor outside the supported list (Q, R, F_p, one quadratic step)."""


class FieldMismatch(WittlocError):
    """Operands live over different fields."""


class DegenerateForm(WittlocError):
    """Gram matrix has determinant zero."""


class NonSymmetric(WittlocError):
    """Gram matrix is not symmetric."""


class ZeroInput(WittlocError):
    """A nonzero integer/element was required."""


class Undecided(WittlocError):
    """Equality/membership could not be certified either way."""


class NonCanonicalInput(WittlocError):
    """Operation needs a stored diagonal representative that is missing."""


class UnknownGenerator(WittlocError):
    """Generator symbol does not belong to the presentation."""


class PresentationMismatch(WittlocError):
    """Ring operands belong to different presentations."""


class NonHomogeneousDenominator(WittlocError):
    """Localization denominator is not homogeneous of positive degree."""


class NonPositiveExponent(WittlocError):
    """Character exponent m must be >= 1."""


class UnsupportedIrrep(WittlocError):
    """No closed Euler-class formula for this representation shape."""


class NonInvertibleNormalEuler(WittlocError):
    """Normal bundle Euler class cannot be inverted for the residue."""


class UnsupportedResidueField(WittlocError):
    """Fixed component has a residue field the engine does not model."""


class BadDimension(WittlocError):
    """Projective-space builder dimension outside {2n-1, 2n}."""


class BadParameters(WittlocError):
    """Grassmannian builder parameters out of range."""


class InconsistentField(WittlocError):
    """Problem components disagree about the base field."""


class ExprSyntaxError(WittlocError):
    """Literal expression failed to parse; carries the byte offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos
