"""Exception taxonomy shared across the package."""


class TringError(Exception):
    """Base class for all library errors."""


# ring construction / arithmetic

class ParseError(TringError):
    """Malformed ring spec, triangulation file or solution file."""


class NotPrime(ParseError):
    pass


class ReduciblePolynomial(ParseError):
    pass


class ModulusTooSmall(ParseError):
    pass


class RingTooLarge(ParseError):
    pass


class RingMismatch(TringError):
    """Operands belong to different rings."""


class NotAUnit(TringError):
    pass


class NotAShape(TringError):
    """x or 1-x fails to be invertible."""


# triangulation combinatorics

class NonInvolutiveGluing(ParseError):
    pass


class EvenPermutation(ParseError):
    """Face gluings must be orientation reversing (odd permutations)."""


class FaceReused(ParseError):
    pass


class FaceNotFree(TringError):
    pass


class EdgeNotInterior(TringError):
    pass


# cross ratio / projective line

class FormNotUnit(TringError):
    pass


class NotAdmissible(TringError):
    pass


# equations

class MissingQuadValue(TringError):
    pass


class InvalidSolution(TringError):
    pass


class NonUnitValue(TringError):
    pass


class NotAnHTESolution(TringError):
    pass


class NotUnitHTE(TringError):
    pass


# pachner moves

class InvalidSite(TringError):
    pass


class NotInLocalization(TringError):
    pass


class CorrespondenceMismatch(TringError):
    pass
