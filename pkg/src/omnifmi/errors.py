"""Exception types raised across the package."""


class OmnifmiError(Exception):
    """Base class for all package errors."""


class CalibrationParseError(OmnifmiError):
    """Calibration text could not be parsed; ``section`` names the offender."""

    def __init__(self, section: str, reason: str):
        self.section = section
        self.reason = reason
        super().__init__(f"calibration section '{section}': {reason}")


class DegenerateRayError(OmnifmiError):
    """Pixel unprojects to a vector with near-zero norm."""


class OutOfFovError(OmnifmiError):
    """Ray falls outside the field of view representable by the lens model."""


class AmbiguousProjectionError(OmnifmiError):
    """Ray projects onto more than one radius; all candidates are reported."""

    def __init__(self, candidates):
        self.candidates = list(candidates)
        super().__init__(f"ambiguous projection, candidate radii: {self.candidates}")


class OutOfAnnulusError(OmnifmiError):
    """Omni-image point lies outside the unwrapped radial annulus."""


class ConfigurationError(OmnifmiError):
    """Invalid parameter combination (e.g. tile size not a power of two)."""


class DegenerateSignalError(OmnifmiError):
    """Spectral input is identically zero; no correlation peak exists."""


class EmptyFlowFieldError(OmnifmiError):
    """Every tile registration was rejected; carries the rejected field."""

    def __init__(self, field=None):
        self.field = field
        super().__init__("no tile registration passed the quality thresholds")


class InsufficientCorrespondencesError(OmnifmiError):
    """Fewer ray correspondences than pose recovery needs."""

    def __init__(self, count: int, required: int = 8):
        self.count = count
        self.required = required
        super().__init__(f"{count} correspondences, {required} required")


class NoConsensusError(OmnifmiError):
    """RANSAC could not assemble a large enough inlier set."""

    def __init__(self, best_inlier_count: int):
        self.best_inlier_count = best_inlier_count
        super().__init__(f"no consensus, best inlier count {best_inlier_count}")


class EvaluationError(OmnifmiError):
    """Trajectory comparison is impossible (too few aligned frames)."""
