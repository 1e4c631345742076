"""Toeplitz and Hankel builders and the factored Gram determinant.

A point (x_1, ..., x_n) of normalized point-count deviations has Gram matrix
T_{n+1}(1, x_1, ..., x_n), the symmetric Toeplitz matrix whose (i, j) entry is
x_{|i-j|} with x_0 = 1.  Its determinant splits into a product of a "minus"
and a "plus" factor built from half-size Toeplitz-plus-Hankel blocks.  The
minus factor vanishes on the boundary piece that carries the minimizing
points, so this module also provides its analytic gradient.

Block construction, 0-indexed, with c = (1, x_1, ..., x_n):

* n odd, n = 2m - 1: both factors are m x m.
  T[i][j] = c[|i - j|],  H[i][j] = c[n - i - j].
  minus = det(T + H), plus = det(T - H).
* n even, n = 2m: the plus factor is det(T - H) with the same m x m blocks.
  The minus factor is the determinant of the (m+1) x (m+1) matrix whose
  top-left m x m block is T + H, last column is (x_m, ..., x_1, 1), and last
  row is (2 x_m, ..., 2 x_1, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GramPoint",
    "FactorPair",
    "toeplitz",
    "hankel",
    "det",
    "gram_matrix",
    "gram_det",
    "factor_pair",
    "minus_factor",
    "plus_factor",
    "minus_factor_matrix",
    "plus_factor_matrix",
    "leading_minors",
    "minus_factor_gradient",
    "minus_factor_gradient_fd",
]


@dataclass(frozen=True)
class GramPoint:
    """Point (x_1, ..., x_n) of normalized count deviations.

    Coordinates are dimensionless and conceptually lie in [-1, 1]; the
    constructor only enforces that they are finite.
    """

    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        coords = tuple(float(c) for c in self.coords)
        if not coords:
            raise ValueError("GramPoint needs at least one coordinate")
        if not all(math.isfinite(c) for c in coords):
            raise ValueError("GramPoint coordinates must be finite")
        object.__setattr__(self, "coords", coords)

    @property
    def order(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class FactorPair:
    """The two factors of the Gram determinant; minus * plus equals it."""

    minus: float
    plus: float

    @property
    def product(self) -> float:
        return self.minus * self.plus


def toeplitz(values) -> np.ndarray:
    """Symmetric Toeplitz matrix with entry (i, j) = values[|i - j|]."""
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 1 or vals.size == 0:
        raise ValueError("toeplitz needs a non-empty one-dimensional sequence")
    n = vals.size
    idx = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
    return vals[idx]


def hankel(values) -> np.ndarray:
    """Square Hankel matrix with entry (i, j) = values[i + j].

    The input lists the anti-diagonal values and must have odd length 2m-1,
    which fixes the output size m.
    """
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 1 or vals.size == 0 or vals.size % 2 == 0:
        raise ValueError("hankel needs an odd-length one-dimensional sequence")
    m = (vals.size + 1) // 2
    idx = np.add.outer(np.arange(m), np.arange(m))
    return vals[idx]


def det(matrix) -> float:
    """Determinant: closed forms for sizes 1 and 2, pivoted LU above."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("det needs a square matrix")
    size = m.shape[0]
    if size == 1:
        return float(m[0, 0])
    if size == 2:
        return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    return float(np.linalg.det(m))


def gram_matrix(point: GramPoint) -> np.ndarray:
    """The (n+1) x (n+1) Gram matrix T_{n+1}(1, x_1, ..., x_n)."""
    return toeplitz((1.0,) + point.coords)


def gram_det(point: GramPoint) -> float:
    """Determinant of the Gram matrix of the point."""
    return det(gram_matrix(point))


def _padded(point: GramPoint) -> np.ndarray:
    return np.concatenate(([1.0], np.asarray(point.coords, dtype=float)))


def _half_blocks(point: GramPoint) -> tuple[np.ndarray, np.ndarray, int]:
    """Half-size Toeplitz block T, Hankel block H, and the half size m."""
    c = _padded(point)
    n = point.order
    m = (n + 1) // 2
    rng = np.arange(m)
    top = toeplitz(c[:m]) if m > 0 else np.zeros((0, 0))
    han = c[n - np.add.outer(rng, rng)] if m > 0 else np.zeros((0, 0))
    return top, han, m


def minus_factor_matrix(point: GramPoint) -> np.ndarray:
    """Matrix whose determinant is the minus factor of the Gram determinant."""
    top, han, m = _half_blocks(point)
    if point.order % 2 == 1:
        return top + han
    c = _padded(point)
    out = np.empty((m + 1, m + 1))
    out[:m, :m] = top + han
    tail = c[m:0:-1]  # (x_m, ..., x_1)
    out[:m, m] = tail
    out[m, :m] = 2.0 * tail
    out[m, m] = 1.0
    return out


def plus_factor_matrix(point: GramPoint) -> np.ndarray:
    """Matrix whose determinant is the plus factor of the Gram determinant."""
    top, han, _ = _half_blocks(point)
    return top - han


def minus_factor(point: GramPoint) -> float:
    return det(minus_factor_matrix(point))


def plus_factor(point: GramPoint) -> float:
    return det(plus_factor_matrix(point))


def factor_pair(point: GramPoint) -> FactorPair:
    """Split the Gram determinant into its minus and plus factors."""
    return FactorPair(minus=minus_factor(point), plus=plus_factor(point))


def leading_minors(point: GramPoint) -> tuple[float, ...]:
    """Leading principal minors of orders 2..n+1 of the Gram matrix.

    Entry i (0-based) is the determinant of the Gram matrix of the prefix
    (x_1, ..., x_{i+1}); all of them positive means the full matrix is
    positive definite.
    """
    full = gram_matrix(point)
    return tuple(det(full[: k + 2, : k + 2]) for k in range(point.order))


def _adjugate(matrix: np.ndarray) -> np.ndarray:
    size = matrix.shape[0]
    if size == 1:
        return np.ones((1, 1))
    adj = np.empty((size, size))
    for i in range(size):
        rows = [r for r in range(size) if r != i]
        for j in range(size):
            cols = [c for c in range(size) if c != j]
            adj[j, i] = (-1) ** (i + j) * det(matrix[np.ix_(rows, cols)])
    return adj


def minus_factor_gradient(point: GramPoint) -> np.ndarray:
    """Analytic gradient of the minus factor with respect to (x_1, ..., x_n).

    The minus-factor matrix M(x) is affine in the coordinates, so each
    derivative matrix dM/dx_k is a constant pattern and the Jacobi rule gives
    d det / dx_k = trace(adj(M) dM/dx_k).  This stays accurate on the zero set
    of the determinant, where the criteria checks need reliable signs.
    """
    n = point.order
    adj_t = _adjugate(minus_factor_matrix(point)).T
    base = minus_factor_matrix(GramPoint((0.0,) * n))
    grad = np.empty(n)
    for k in range(n):
        unit = [0.0] * n
        unit[k] = 1.0
        pattern = minus_factor_matrix(GramPoint(tuple(unit))) - base
        grad[k] = float(np.sum(adj_t * pattern))
    return grad


def minus_factor_gradient_fd(point: GramPoint, step: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of the minus factor, the numeric fallback."""
    coords = np.asarray(point.coords, dtype=float)
    grad = np.empty(coords.size)
    for k in range(coords.size):
        hi = coords.copy()
        lo = coords.copy()
        hi[k] += step
        lo[k] -= step
        grad[k] = (minus_factor(GramPoint(tuple(hi))) - minus_factor(GramPoint(tuple(lo)))) / (2 * step)
    return grad
