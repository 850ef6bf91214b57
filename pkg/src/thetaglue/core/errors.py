# Exception hierarchy shared by the core modules and the CLI.


class ThetaGlueError(Exception):
    """Base class for every error raised by thetaglue."""


class NotDivisible(ThetaGlueError):
    """An exact division would need a non-integer coefficient or leaves a remainder."""


class DivisionByZero(ThetaGlueError, ZeroDivisionError):
    """Division by the zero series or the zero polynomial."""


class BeyondTruncation(ThetaGlueError):
    """A coefficient was requested at or above the series truncation."""


class OddCoefficient(ThetaGlueError):
    """halve_exact met an odd coefficient."""


class NotInBasis(ThetaGlueError):
    """A polynomial has no expansion in the (E, Delta) basis."""


class SizeMismatch(ThetaGlueError):
    """Pattern block sizes do not add up to the number of indices."""


class SpecError(ThetaGlueError, ValueError):
    """Invalid lattice spec or spec file."""


class NonIntegerResult(ThetaGlueError):
    """A theorem display did not resolve to an integer series."""


class BoundsTooLarge(ThetaGlueError):
    """Lattice-point enumeration would visit too many candidates."""


class UnknownSeries(ThetaGlueError, ValueError):
    """A series name outside theta2|theta3|theta4|E4|Delta24|h:n|rho:n."""
