"""Problem description and result value types.

A *problem* fixes the deterministic data: dimension ``d``, strictly
increasing observation times ``t_1 < ... < t_n`` and one real coupling
matrix per observation time.  A *frequency point* fixes where the joint
transform is evaluated: one frequency vector and one area weight per level,
plus the mode -- ``"characteristic"`` (purely oscillatory, weight enters as
``i * lambda``) or ``"mgf"`` (real area weight, may blow up).

Validation is centralized in :func:`validate`; constructors only coerce to
numpy arrays so that partially built objects stay cheap.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    DimensionMismatch,
    NonFiniteInput,
    NonIncreasingTimes,
    ValidationError,
)

#: consecutive observation gaps below this fraction of the horizon are rejected
MIN_GAP_FRACTION = 1e-9

MODES = ("characteristic", "mgf")


@dataclass
class ProblemSpec:
    """Deterministic problem data.

    Parameters
    ----------
    d : int
        State dimension of the Brownian motion.
    times : array_like, shape (n,)
        Strictly increasing observation times, all positive.
    matrices : array_like, shape (n, d, d)
        Real coupling matrix for each level's area functional.
    """

    d: int
    times: np.ndarray
    matrices: np.ndarray

    def __post_init__(self):
        self.d = int(self.d)
        self.times = np.atleast_1d(np.asarray(self.times, dtype=float))
        self.matrices = np.asarray(self.matrices, dtype=float)
        if self.matrices.ndim == 2:
            self.matrices = self.matrices[None, :, :]

    @property
    def n(self):
        """Number of observation levels."""
        return self.times.shape[0]


@dataclass
class FrequencyPoint:
    """Evaluation point of the joint transform.

    ``gammas[k]`` pairs with the Brownian state at the k-th time and
    ``lambdas[k]`` with the k-th area; ``mode`` selects how the area weights
    enter the exponent (see module docstring).
    """

    gammas: np.ndarray
    lambdas: np.ndarray
    mode: str = "characteristic"

    def __post_init__(self):
        self.gammas = np.atleast_2d(np.asarray(self.gammas, dtype=float))
        self.lambdas = np.atleast_1d(np.asarray(self.lambdas, dtype=float))

    @classmethod
    def zeros(cls, n, d, mode="characteristic"):
        """Origin point (transform value is exactly 1 there)."""
        return cls(np.zeros((n, d)), np.zeros(n), mode)


@dataclass
class LevelFactors:
    """Per-level exponent pieces: the value is
    ``prod_j exp(0.5 * trace_integral - 0.5 * quadratic_integral)``."""

    j: int
    trace_integral: complex
    quadratic_integral: complex


@dataclass
class Diagnostics:
    grid_step: float
    max_K_norm: float


@dataclass
class CFValue:
    """Evaluated transform with its per-level factor breakdown."""

    value: complex
    factors: list = field(default_factory=list)
    diagnostics: Optional[Diagnostics] = None

    def reassemble(self):
        """Recompute the value from the stored factors (consistency check)."""
        log_total = sum(0.5 * f.trace_integral - 0.5 * f.quadratic_integral for f in self.factors)
        return complex(np.exp(log_total))


def _check_finite(arr, label):
    bad = np.argwhere(~np.isfinite(arr))
    if bad.size:
        idx = tuple(int(i) for i in bad[0])
        raise NonFiniteInput("%s contains a non-finite entry at %r" % (label, idx), index=idx)


def validate(spec, point=None):
    """Check a problem (and optionally a frequency point) for well-formedness.

    Raises the specific :mod:`levycf.errors` subclass for the first violation
    found; returns None on success.
    """
    if spec.d < 1:
        raise DimensionMismatch("dimension must be >= 1, got %d" % spec.d)
    n = spec.n
    if n < 1:
        raise DimensionMismatch("at least one observation time is required")
    _check_finite(spec.times, "times")
    t_end = spec.times[-1]
    if spec.times[0] <= 0.0:
        raise NonIncreasingTimes("first observation time must be positive, got %g" % spec.times[0])
    gaps = np.diff(spec.times)
    if n > 1 and gaps.min() <= 0.0:
        raise NonIncreasingTimes("observation times must be strictly increasing")
    floor = MIN_GAP_FRACTION * t_end
    if n > 1 and gaps.min() < floor:
        raise NonIncreasingTimes(
            "smallest gap %.3e is below the resolvable floor %.3e" % (gaps.min(), floor)
        )
    if spec.matrices.shape != (n, spec.d, spec.d):
        raise DimensionMismatch(
            "matrices must have shape (%d, %d, %d), got %r"
            % (n, spec.d, spec.d, spec.matrices.shape)
        )
    _check_finite(spec.matrices, "matrices")

    if point is None:
        return
    if point.mode not in MODES:
        raise ValidationError("mode must be one of %r, got %r" % (MODES, point.mode))
    if point.gammas.shape != (n, spec.d):
        raise DimensionMismatch(
            "gammas must have shape (%d, %d), got %r" % (n, spec.d, point.gammas.shape)
        )
    if point.lambdas.shape != (n,):
        raise DimensionMismatch(
            "lambdas must have shape (%d,), got %r" % (n, point.lambdas.shape)
        )
    _check_finite(point.gammas, "gammas")
    _check_finite(point.lambdas, "lambdas")
