"""Shared integration grid.

All solvers in this package run on one *piecewise-uniform* grid: each
observation interval ``[t_{j-1}, t_j]`` is cut into an even number of equal
steps (at least 16), so every observation time is exactly a node and no
stage of any solver ever needs interpolation.  Samples are stored at *half*
resolution -- nodes plus step midpoints -- which is what the backward
Riccati sweep produces and what the forward transport solves and Simpson
quadratures consume.

The default resolution targets 4096 full steps across the horizon,
distributed proportionally to interval lengths; an explicit step override
(CLI flag / environment variable) tightens it but is never allowed to
coarsen an interval below 16 steps.
"""

from dataclasses import dataclass

import numpy as np

from .errors import GridMiss, SnapError, ValidationError

DEFAULT_TARGET_STEPS = 4096
MIN_STEPS_PER_INTERVAL = 16
#: hard cap on total full steps, guards against absurd overrides
MAX_TOTAL_STEPS = 4_000_000


@dataclass
class Grid:
    """Piecewise-uniform grid over ``[0, t_n]`` with half-step samples.

    Attributes
    ----------
    times : (n,) float array
        Observation times (each one exactly a node).
    seg_steps : (n,) int array
        Full steps per interval; always even and >= 16.
    seg_h : (n,) float array
        Step size per interval.
    points : (2M+1,) float array
        All sample times at half-step resolution; even indices are nodes,
        odd indices are step midpoints.
    node_marks : (n,) int array
        Node index of each observation time.
    """

    times: np.ndarray
    seg_steps: np.ndarray
    seg_h: np.ndarray
    points: np.ndarray
    node_marks: np.ndarray

    @classmethod
    def build(cls, times, step_override=None, target_steps=DEFAULT_TARGET_STEPS):
        """Construct the grid for the given observation times.

        ``step_override``, if given, is an upper bound on the step size
        actually used (each interval rounds its step count up, then up again
        to the next even integer).
        """
        times = np.asarray(times, dtype=float)
        t_end = times[-1]
        gaps = np.diff(np.concatenate(([0.0], times)))
        if step_override is not None:
            if not np.isfinite(step_override) or step_override <= 0:
                raise ValidationError("grid step override must be positive, got %r" % step_override)
            h_target = float(step_override)
        else:
            h_target = t_end / float(target_steps)
        steps = np.maximum(np.ceil(gaps / h_target - 1e-12).astype(np.int64),
                           MIN_STEPS_PER_INTERVAL)
        steps += steps % 2  # even counts so node-only Simpson panels align
        if int(steps.sum()) > MAX_TOTAL_STEPS:
            raise ValidationError(
                "grid would need %d steps (cap %d); raise the step size"
                % (int(steps.sum()), MAX_TOTAL_STEPS)
            )
        seg_h = gaps / steps

        total = int(steps.sum())
        points = np.empty(2 * total + 1, dtype=float)
        node_marks = np.cumsum(steps)
        lo = 0.0
        q = 0
        for j in range(times.shape[0]):
            m = int(steps[j])
            seg = lo + (times[j] - lo) * (np.arange(2 * m + 1) / (2.0 * m))
            points[q:q + 2 * m + 1] = seg
            q += 2 * m
            points[q] = times[j]  # land exactly on the observation time
            lo = times[j]
        grid = cls(times=times, seg_steps=steps, seg_h=seg_h, points=points,
                   node_marks=node_marks)
        for j, t in enumerate(times):
            if grid.points[2 * int(node_marks[j])] != t:
                raise SnapError("observation time %g missed its grid node" % t)
        return grid

    # -- basic geometry -------------------------------------------------

    @property
    def n_steps(self):
        """Total number of full steps M."""
        return int(self.seg_steps.sum())

    @property
    def nodes(self):
        return self.points[::2]

    @property
    def half_nodes(self):
        """Step midpoints only (the odd-index samples)."""
        return self.points[1::2]

    @property
    def max_step(self):
        return float(self.seg_h.max())

    def half_count(self, j):
        """Number of half-grid samples on ``[0, t_j]`` (1-based j)."""
        return 2 * int(self.node_marks[j - 1]) + 1

    def node_count(self, j):
        """Number of node samples on ``[0, t_j]`` (1-based j)."""
        return int(self.node_marks[j - 1]) + 1

    # -- exact lookups ---------------------------------------------------

    def _lookup(self, array, t):
        idx = int(np.searchsorted(array, t))
        tol = 1e-12 * max(1.0, abs(float(self.times[-1])))
        for cand in (idx - 1, idx, idx + 1):
            if 0 <= cand < array.shape[0] and abs(array[cand] - t) <= tol:
                return cand
        raise GridMiss("t=%r is not a stored grid sample" % (t,))

    def half_index_of(self, t):
        """Index of ``t`` in :attr:`points`; GridMiss if absent."""
        return self._lookup(self.points, t)

    def node_index_of(self, t):
        """Node index of ``t``; GridMiss if ``t`` is not a node."""
        idx = self._lookup(self.points, t)
        if idx % 2:
            raise GridMiss("t=%r is a midpoint, not a node" % (t,))
        return idx // 2


def integrate_half_grid(values, grid, j):
    """Composite Simpson of half-grid samples over ``[0, t_j]`` (1-based j).

    ``values`` holds samples at grid.points[:grid.half_count(j)]; each full
    step contributes ``h/6 * (left + 4*mid + right)``.
    """
    total = 0.0 + 0.0j
    q = 0
    for l in range(j):
        m = int(grid.seg_steps[l])
        seg = values[q:q + 2 * m + 1]
        total += (grid.seg_h[l] / 6.0) * (seg[0:-1:2].sum() + 4.0 * seg[1::2].sum() + seg[2::2].sum())
        q += 2 * m
    return complex(total)


def integrate_interval_nodes(values, grid, j):
    """Composite Simpson over the single interval ``[t_{j-1}, t_j]`` from
    node-resolution samples (length ``seg_steps[j-1] + 1``; count is even so
    two-step panels tile the interval exactly)."""
    m = int(grid.seg_steps[j - 1])
    if values.shape[0] != m + 1:
        raise ValidationError("expected %d node samples, got %d" % (m + 1, values.shape[0]))
    h = float(grid.seg_h[j - 1])
    return complex((h / 3.0) * (values[0] + values[-1]
                                + 4.0 * values[1:-1:2].sum()
                                + 2.0 * values[2:-1:2].sum()))
