"""Exception hierarchy shared by every module."""


class CurveError(Exception):
    """Base class for all errors raised by rank0quot."""


class ZeroPolynomial(CurveError, ValueError):
    pass


class BadPrime(CurveError, ValueError):
    pass


class WrongDegree(CurveError, ValueError):
    pass


class NotSmooth(CurveError, ValueError):
    pass


class ZeroForm(CurveError, ValueError):
    pass


class PointNotOnCurve(CurveError, ValueError):
    pass


class PointNotOnD(PointNotOnCurve):
    pass


class QuotientNotGenus1(CurveError):
    pass


class MixedCurves(CurveError, ValueError):
    pass


class UnclassifiableTorsion(CurveError):
    """The computed torsion group is not one of Mazur's fifteen groups."""


class RankPositive(CurveError):
    """Raised when rank-0 data is requested for a curve with a known non-torsion point."""

    def __init__(self, witness):
        super().__init__(f"non-torsion point {witness}")
        self.witness = witness


class ConsistencyError(CurveError):
    """Internal contradiction: a searched point is missing, or a bound is violated."""


class BoundViolated(ConsistencyError):
    pass


class ParseError(CurveError, ValueError):
    def __init__(self, reason, line_number=None):
        where = f"line {line_number}: " if line_number is not None else ""
        super().__init__(where + reason)
        self.reason = reason
        self.line_number = line_number
