"""Exception hierarchy shared by all spiralflow modules."""


class SpiralFlowError(Exception):
    """Base class for every error raised by this package."""


class DegenerateSpiral(SpiralFlowError, ValueError):
    """The two spiral arms are antiparallel (|theta_plus - theta_minus| = pi)."""


class DegenerateAmplitude(SpiralFlowError):
    """The oscillation amplitude d vanishes, so the connection phase is undefined."""


class PoleOfGamma(SpiralFlowError, ValueError):
    """Gamma was evaluated at a non-positive integer."""


class BlowUp(SpiralFlowError):
    """The integrated trajectory left the bounded regime."""


class NoConvergence(SpiralFlowError):
    """The shooting root finder exhausted its iteration budget."""


class WindowTooShort(SpiralFlowError, ValueError):
    """The envelope-fit window does not contain enough oscillations."""


class DegenerateFit(SpiralFlowError):
    """The fitted amplitude is indistinguishable from zero."""


class OutOfRange(SpiralFlowError, ValueError):
    """A requested abscissa lies outside the computed grid."""


class ZeroArgument(SpiralFlowError, ValueError):
    """A function with a singularity at x = 0 was evaluated there."""


class GridTooShort(SpiralFlowError, ValueError):
    """The grid does not reach far enough for the requested limit."""


class RegionViolation(SpiralFlowError, ValueError):
    """A point lies outside the region where an expansion is valid."""


class UnknownSuite(SpiralFlowError, ValueError):
    """The requested verification suite does not exist."""
