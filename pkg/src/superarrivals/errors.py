"""Exception and warning types shared across the package."""


class SuperarrivalsError(Exception):
    """Base class for all package errors."""


class ConfigError(SuperarrivalsError):
    """Invalid configuration; the message names the violated constraint."""


class GridResolutionError(ConfigError):
    """Grid spacing too coarse for the packet's carrier wavelength."""


class OverlapError(ConfigError):
    """Initial packet overlaps the barrier support beyond tolerance."""


class DetectionError(SuperarrivalsError):
    """Base class for series event-detection failures."""


class NoDeviationError(DetectionError):
    """Perturbed series never deviates from the static one above threshold."""


class DownwardDeviationError(DetectionError):
    """First deviation is downward; no superarrival window exists."""


class NoCrossingError(DetectionError):
    """Series end before the perturbed curve crosses back below the static one."""


class DegenerateWindowError(DetectionError):
    """Integration window is empty or inverted."""


class SnapshotTimeError(SuperarrivalsError):
    """Requested snapshot instant lies outside (0, t_end]."""


class BoundaryContaminationWarning(UserWarning):
    """Probability has reached the outer 10% of the box; hard-wall returns possible."""


class UnderResolvedBarrierWarning(UserWarning):
    """Barrier width spans fewer than 3 grid cells."""


class SpreadingWarning(UserWarning):
    """Packet width grows severely over the run; quasi-particle picture degraded."""


class NonConvergedTailWarning(UserWarning):
    """Series tail still has a significant slope; asymptote estimate unreliable."""
