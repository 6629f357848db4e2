"""Exception types raised by the simulation layers."""


class WeakDelayError(Exception):
    """Base class for all package errors."""


class ConfigError(WeakDelayError):
    """Invalid or inconsistent configuration input."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class DegenerateConfigError(WeakDelayError):
    """All decay channels vanish; the steady state is not unique."""


class SingularDenominatorError(WeakDelayError):
    """A linear-response denominator underflowed (zero dephasing on resonance)."""


class GridTooCoarseError(WeakDelayError):
    """Finite-difference stencils disagree beyond tolerance."""


class AliasingError(WeakDelayError):
    """Significant pulse energy sits near the edge of the time window."""


class BoundaryPeakError(WeakDelayError):
    """The intensity maximum is the first or last sample."""


class GridMismatchError(WeakDelayError):
    """Field envelopes do not share a common time grid."""


class VanishingIntensityError(WeakDelayError):
    """Post-selected intensity is too small for a mean arrival time."""


class ZeroKappaError(WeakDelayError):
    """Medium is non-dispersive at the operating point; density not invertible."""


class NoSolutionError(WeakDelayError):
    """Numerical inversion failed to bracket a root."""
