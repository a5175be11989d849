"""Exception types shared across the toolkit."""


class PipeflowError(Exception):
    """Base class for all toolkit errors."""


class DomainError(PipeflowError):
    """Input parameters outside their admissible domain."""


class InfeasibleError(PipeflowError):
    """No admissible value exists for a derived constant."""


class RangeError(PipeflowError):
    """Index argument outside its allowed range."""


class NotFoundError(PipeflowError):
    """Search exhausted its cap without a feasible value."""

    def __init__(self, message, worst_id=None, worst_margin=None):
        super().__init__(message)
        self.worst_id = worst_id
        self.worst_margin = worst_margin


class OutOfBallError(PipeflowError):
    """Matrix argument outside the certified positivity ball."""


class MeanError(PipeflowError):
    """Operation requires a mean-zero field."""


class GapError(PipeflowError):
    """Declared frequency-gap condition is violated."""


class BandError(PipeflowError):
    """Band edges violate the operation's hypothesis."""


class BandPlanError(PipeflowError):
    """Band plan does not tile the required frequency range."""


class ConditioningError(PipeflowError):
    """Linear solve too ill-conditioned at the requested order."""


class ResolutionError(PipeflowError):
    """Grid resolution insufficient for the requested object."""


class GridError(PipeflowError):
    """Incompatible lattice parameters (e.g. non-integer lambda*r)."""


class StepError(PipeflowError):
    """Integrator step-size criterion unreachable."""


class BlowupError(PipeflowError):
    """Trajectory norm diverged during integration."""


class WindowError(PipeflowError):
    """Time window exceeds the declared Lipschitz window."""


class TilingError(PipeflowError):
    """Prism dimensions do not tile the torus evenly."""


class ScaleError(PipeflowError):
    """A normalization scale is zero or negative."""


class DensityError(PipeflowError):
    """Obstacle set violates the segment-density hypothesis."""


class NoFreeShiftError(PipeflowError):
    """Pigeonhole failed: every shift is occupied."""


class TimeBracketError(PipeflowError):
    """Velocity time samples do not bracket the evaluation time."""


class SchemaError(PipeflowError):
    """Report schema mismatch."""
