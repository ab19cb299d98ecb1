"""Exception hierarchy shared by all modules."""


class BiorthoError(Exception):
    """Base class for every error raised by this package."""


class SymmetryViolation(BiorthoError):
    """Input is not an algebraic curvature tensor (pair symmetry or Bianchi)."""


class DegeneratePlane(BiorthoError):
    pass


class InvalidPlane(BiorthoError):
    pass


class NotSelfDual(BiorthoError):
    pass


class UnknownModel(BiorthoError):
    pass


class InvalidParameter(BiorthoError, ValueError):
    pass


class ConstraintVacuous(BiorthoError):
    """The constrained curvature quantity is already nonnegative; the certificate is 0."""


class NotEinstein(BiorthoError):
    pass


class NotHalfConformallyFlat(BiorthoError):
    pass


class UnsupportedModel(BiorthoError):
    pass


class MissingBeta(BiorthoError):
    pass


class MixedAmbient(BiorthoError):
    pass


class InvalidP(BiorthoError, ValueError):
    pass


class ParseError(BiorthoError):
    pass


class UnknownCheck(ParseError):
    pass
