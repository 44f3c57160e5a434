"""
Error hierarchy for the star point toolkit
Every library error is a ValueError so callers can treat bad input uniformly
"""


class StarPointError(ValueError):
    """Base class for all precondition and input errors"""


# Algebra
class DivisionByZero(StarPointError):
    pass


class FieldMismatch(StarPointError):
    pass


class NonSquare(StarPointError):
    pass


class SingularMatrix(StarPointError):
    pass


class ZeroPolynomial(StarPointError):
    pass


class InexactDivision(StarPointError):
    """Raised when a division that should be exact leaves a remainder"""


# Geometry and star points
class NotOnHypersurface(StarPointError):
    pass


class SingularPoint(StarPointError):
    pass


class NotApplicable(StarPointError):
    pass


class ZeroPolar(StarPointError):
    pass


class LineInX(StarPointError):
    pass


class KnownPointNotStar(StarPointError):
    pass


class RootsNotDistinct(StarPointError):
    pass


# Configurations
class VertexNotOnPlane(StarPointError):
    pass


class NotACone(StarPointError):
    pass


class BadCone(StarPointError):
    pass


class WrongDegree(StarPointError):
    pass


class EmptySystem(StarPointError):
    pass


class PointOnPlane(StarPointError):
    pass


# Classification and builders
class NotSuited(StarPointError):
    pass


class ShapeViolation(StarPointError):
    """A normal-form decomposition failed; indicates a bug, never bad input"""


class DegenerateTriple(StarPointError):
    pass


class NotRootOfUnity(StarPointError):
    pass


class DegreeMismatch(StarPointError):
    pass


class AmbientTooSmall(StarPointError):
    pass


# Text formats
class ParseError(StarPointError):
    """Syntax error in the text format, with the offending character offset"""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UndeclaredVariable(ParseError):
    pass


class InhomogeneousInput(StarPointError):
    pass


class ConfigError(StarPointError):
    """Validation failure inside a configuration file, tagged with the triple index"""

    def __init__(self, index, cause):
        self.index = index
        self.cause = cause
        super().__init__(f"triple {index}: {type(cause).__name__}: {cause}")


# Exit code 1 rather than 2: these mean the library itself is wrong
INTERNAL_ERRORS = (ShapeViolation, InexactDivision)
