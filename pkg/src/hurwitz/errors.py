"""Exception hierarchy shared by every module of the package."""


class HurwitzError(ValueError):
    """Base class for all errors raised by :mod:`hurwitz`."""


class InvalidDatum(HurwitzError):
    """The branch datum is malformed."""


class BadPartition(InvalidDatum):
    pass


class NonPositivePart(BadPartition):
    pass


class SumMismatch(BadPartition):
    pass


class TooFewBranchPoints(InvalidDatum):
    pass


class OddEuler(InvalidDatum):
    """Euler characteristic is odd: no closed orientable source surface."""


class ChiTooLarge(InvalidDatum):
    """Euler characteristic exceeds 2."""


class HTooSmall(HurwitzError):
    pass


class DegreeMismatch(HurwitzError):
    pass


class Unsupported(HurwitzError):
    pass


class NotThreePoint(HurwitzError):
    pass


class BadFaceId(HurwitzError):
    pass


class MalformedLoop(HurwitzError):
    pass
