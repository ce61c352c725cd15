"""Exception types shared across the package.

Validation errors signal bad problem input; the remaining types signal
numerical events (solver blow-up, conditioning loss, pole crossings) that
callers may want to catch and map to diagnostics or exit codes.
"""


class Error(Exception):
    """Base class for all levycf exceptions."""


class ValidationError(Error, ValueError):
    """Base class for problem/frequency-point validation failures."""


class NonIncreasingTimes(ValidationError):
    """Observation times are not strictly increasing (or a gap is below
    the relative floor of 1e-9 * t_n, or t_1 <= 0)."""


class DimensionMismatch(ValidationError):
    """Array shapes disagree with the declared dimension or level count."""


class NonFiniteInput(ValidationError):
    """An input entry is NaN or infinite.  Carries the offending index."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DimensionError(ValidationError):
    """Input outside a module's supported shape family (e.g. the planar
    closed-form evaluator fed matrices it does not cover)."""


class GridMiss(Error, KeyError):
    """A time was requested that is not a stored grid sample."""


class SnapError(Error):
    """An observation time failed to coincide with its grid node.

    Defensive: the grid builder places every observation time on a node by
    construction, so this firing indicates an internal inconsistency.
    """


class BlowUp(Error, ArithmeticError):
    """A Riccati component left the trust region (entry magnitude above the
    blow-up cap) before reaching t = 0.  Carries the level ``j`` (1-based)
    and the time ``t`` at which the cap was crossed."""

    def __init__(self, j, t):
        super().__init__(
            "Riccati component %d exceeded the blow-up cap near t=%.6g" % (j, t)
        )
        self.j = j
        self.t = t


class IllConditioned(Error, ArithmeticError):
    """A transported factor and its inverse have a norm product so large
    that star-inverse products lose more than ~6 digits."""


class SingularMatrix(Error, ArithmeticError):
    """Pivot magnitude fell below 1e-14 * ||M||_inf during elimination."""


class PoleEncountered(Error, ArithmeticError):
    """A closed-form denominator vanished (the planar formulas sit on a
    pole of the area law for the supplied weights and times)."""
