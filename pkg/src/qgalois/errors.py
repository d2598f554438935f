"""Exception hierarchy.

Every numerical refusal raises a subclass of :class:`QGaloisError`; callers
that only care about "could not compute" can catch the base class.
"""


class QGaloisError(Exception):
    """Base class for all package errors."""


class NonConvergent(QGaloisError):
    pass


class PoleAt(QGaloisError):
    pass


class PoleAtSpiral(PoleAt):
    """Argument sits (numerically) on the zero spiral ``q^Z`` of theta."""


class NonInvertible(QGaloisError):
    pass


class NumericallyDefective(QGaloisError):
    """Eigenvalues are too close to split but not exactly equal."""


class DivergentInput(QGaloisError):
    pass


class PoleInC(QGaloisError):
    pass


class UnsupportedResonant(QGaloisError):
    pass


class OutOfDomain(QGaloisError):
    pass


class PathThroughPole(QGaloisError):
    pass


class NoReentry(QGaloisError):
    pass


class DegenerateDenominator(QGaloisError):
    pass


class BasePointSingular(QGaloisError):
    pass


class ZeroInput(QGaloisError):
    pass


class BorderlineMembership(QGaloisError):
    """Membership distance falls in the refusal band between tol and guard."""


class NotUnimodular(QGaloisError):
    pass


class AnnulusEmpty(QGaloisError):
    pass
