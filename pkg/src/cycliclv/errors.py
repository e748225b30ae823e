"""Exception types raised across the package.

All indices reported by these exceptions are 1-based, matching the
coordinate labels x1..xn used everywhere in the public interface.
"""

from __future__ import annotations


class CyclicLVError(Exception):
    """Base class for every error raised by this package."""


# -- system construction / model ------------------------------------------

class DimensionTooSmall(CyclicLVError):
    """Fewer than two rate parameters were supplied."""


class ZeroParameter(CyclicLVError):
    """A rate parameter is zero (every k_i must be nonzero)."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"rate parameter k{index} is zero; all rates must be nonzero")


class DimensionMismatch(CyclicLVError):
    """A state or exponent vector does not match the system dimension."""


class IndexOutOfRange(CyclicLVError):
    """A 1-based coordinate index lies outside 1..n."""


# -- exponent machinery -----------------------------------------------------

class UnsupportedDimension(CyclicLVError):
    """The exponent linear system is not defined for n = 2."""


class WrongParity(CyclicLVError):
    """An odd-n formula was requested for even n, or vice versa."""


class ResonanceViolated(CyclicLVError):
    """The even-n product condition k1*k3*...*k(n-1) = k2*k4*...*kn fails."""


class DomainViolation(CyclicLVError):
    """A state lies outside the domain of the requested evaluation."""


# -- verification ------------------------------------------------------------

class EmptySampleSet(CyclicLVError):
    """A pointwise check was invoked with no sample points."""


class ZeroCoordinate(CyclicLVError):
    """A sample point has a zero coordinate where nonzero is required."""


# -- simulation ---------------------------------------------------------------

class NonPositiveInitialState(CyclicLVError):
    """Trajectory initial conditions must be strictly positive."""


class IntegrationAborted(CyclicLVError):
    """Base for runtime integration failures; carries the partial trajectory."""

    def __init__(self, message: str, records: list):
        self.records = records
        super().__init__(message)


class PositivityBreached(IntegrationAborted):
    """A coordinate fell below the positivity floor during integration."""

    def __init__(self, t: float, coordinate: int, records: list):
        self.t = t
        self.coordinate = coordinate
        super().__init__(
            f"coordinate x{coordinate} fell below the positivity floor at t={t:.17g}",
            records,
        )


class StepUnderflow(IntegrationAborted):
    """The adaptive step size fell below the configured minimum."""

    def __init__(self, t: float, step: float, records: list):
        self.t = t
        self.step = step
        super().__init__(
            f"adaptive step {step:.17g} fell below the minimum at t={t:.17g}", records
        )


class NotMeasurable(CyclicLVError):
    """A convergence-order measurement is dominated by roundoff or is 0/0."""
