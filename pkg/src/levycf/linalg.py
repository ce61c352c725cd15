"""Complex matrix helpers carrying the package-wide conventions.

Two conventions matter everywhere and are easy to get silently wrong with
generic numerics:

* the *star* of a complex matrix is its transpose **without** conjugation
  (the analytic continuation of the real transpose), and
* the *square* of a complex vector is the unconjugated bilinear form
  ``sum(z_k ** 2)``, not the Hermitian norm.

Matrices are plain ``numpy`` arrays of ``complex128``; products, sums and
traces are used directly through numpy.  ``mat_inverse`` is a small
partial-pivot elimination kept explicit so the singularity threshold is a
contract (``SingularMatrix`` when a pivot drops below ``1e-14 * ||M||_inf``)
rather than a library detail; dimensions here are tiny, so speed is not a
concern.
"""

import numpy as np

from .errors import DimensionMismatch, SingularMatrix

#: pivot threshold for mat_inverse, relative to the row-sum norm of the input
PIVOT_RTOL = 1e-14


def transpose_star(m):
    """Unconjugated transpose of a complex matrix.

    For matrices with real entries this is the ordinary transpose; for the
    complexified factors it is the analytic continuation of it, which is
    what the backward recursion requires (no conjugation anywhere).
    """
    m = np.asarray(m)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise DimensionMismatch("transpose_star expects square matrices, got %r" % (m.shape,))
    return np.swapaxes(m, -1, -2)


def bilinear_square(v):
    """Unconjugated square ``sum(v_k ** 2)`` of a complex vector.

    Coincides with ``|v|^2`` for real vectors; differs from it off the real
    axis, which is exactly the point: the quadratic exponent is holomorphic
    in the frequencies.
    """
    v = np.asarray(v)
    return complex(np.sum(v * v, axis=-1))


def inf_norm(m):
    """Induced infinity norm (max absolute row sum)."""
    m = np.asarray(m)
    return float(np.abs(m).sum(axis=-1).max())


def mat_inverse(m):
    """Invert a square complex matrix by Gauss-Jordan with partial pivoting.

    Raises
    ------
    SingularMatrix
        if at any elimination step the best available pivot has magnitude
        below ``PIVOT_RTOL * ||M||_inf``.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch("mat_inverse expects a square matrix, got %r" % (m.shape,))
    d = m.shape[0]
    scale = inf_norm(m)
    if scale == 0.0:
        raise SingularMatrix("zero matrix")
    a = m.copy()
    inv = np.eye(d, dtype=np.complex128)
    for col in range(d):
        pivot_row = col + int(np.argmax(np.abs(a[col:, col])))
        pivot = a[pivot_row, col]
        if abs(pivot) < PIVOT_RTOL * scale:
            raise SingularMatrix(
                "pivot %.3e below threshold %.3e at column %d" % (abs(pivot), PIVOT_RTOL * scale, col)
            )
        if pivot_row != col:
            a[[col, pivot_row]] = a[[pivot_row, col]]
            inv[[col, pivot_row]] = inv[[pivot_row, col]]
        inv[col] /= pivot
        a[col] /= pivot
        for row in range(d):
            if row != col:
                factor = a[row, col]
                a[row] -= factor * a[col]
                inv[row] -= factor * inv[col]
    return inv


def sym_defect(m):
    """Largest entry magnitude of ``M - M^T`` (symmetry check helper)."""
    m = np.asarray(m)
    return float(np.abs(m - np.swapaxes(m, -1, -2)).max())
