"""Independent reference implementations used to pin expected test values.

Everything here is deliberately naive: permutation-expansion determinants,
explicit low-order factor polynomials, closed-form quadratic roots and brute
force principal-minor enumeration.  The point is to check the library against
code that shares none of its numerics.
"""

from __future__ import annotations

import itertools
import math


def perm_det(matrix) -> float:
    """Determinant by permutation expansion; fine for sizes up to ~8."""
    size = len(matrix)
    total = 0.0
    for perm in itertools.permutations(range(size)):
        inversions = sum(
            1 for a in range(size) for b in range(a + 1, size) if perm[a] > perm[b]
        )
        term = 1.0 if inversions % 2 == 0 else -1.0
        for row, col in enumerate(perm):
            term *= matrix[row][col]
        total += term
    return total


def principal_minors_psd(matrix, tol: float = 1e-9) -> bool:
    """PSD test by enumerating every principal minor (exponential, tiny sizes)."""
    size = len(matrix)
    for r in range(1, size + 1):
        for subset in itertools.combinations(range(size), r):
            sub = [[matrix[i][j] for j in subset] for i in subset]
            if perm_det(sub) < -tol:
                return False
    return True


def central_diff_gradient(func, coords, step: float = 1e-6) -> list[float]:
    grad = []
    for k in range(len(coords)):
        up = list(coords)
        down = list(coords)
        up[k] += step
        down[k] -= step
        grad.append((func(up) - func(down)) / (2.0 * step))
    return grad


# Explicit factor polynomials for orders 1..3.

def minus1(x1: float) -> float:
    return 1.0 + x1


def plus1(x1: float) -> float:
    return 1.0 - x1


def minus2(x1: float, x2: float) -> float:
    return 1.0 + x2 - 2.0 * x1 * x1


def plus2(x1: float, x2: float) -> float:
    return 1.0 - x2


def minus3(x1: float, x2: float, x3: float) -> float:
    return (1.0 + x3) * (1.0 + x1) - (x1 + x2) ** 2


def plus3(x1: float, x2: float, x3: float) -> float:
    return (1.0 - x3) * (1.0 - x1) - (x1 - x2) ** 2


# Closed-form minimizers on the constraint line.

def mu2_closed(q: int, g: float) -> float:
    alpha = 1.0 / math.sqrt(q)
    return (alpha - math.sqrt(alpha * alpha + 8.0 + 4.0 * (q - 1) / g)) / 4.0


def mu3_quadratic(q: int, g: float) -> float:
    """Negative root of the order-3 quadratic along the constraint line."""
    alpha = 1.0 / math.sqrt(q)
    a = 1.0 + 2.0 * alpha
    b = (q - 1) * (1.0 + alpha) / g - (1.0 + alpha * alpha) - (q * q - 1) / (2.0 * g * math.sqrt(q))
    c = (q - 1) ** 2 / (4.0 * g * g) - 1.0 - (q * q - 1) / (2.0 * g * math.sqrt(q))
    disc = b * b - 4.0 * a * c
    return (-b - math.sqrt(disc)) / (2.0 * a)


def mu2_infinity(q: int) -> float:
    alpha = 1.0 / math.sqrt(q)
    return (alpha - math.sqrt(alpha * alpha + 8.0)) / 4.0


def mu3_infinity(q: int) -> float:
    alpha = 1.0 / math.sqrt(q)
    a = 1.0 + 2.0 * alpha
    b = -(1.0 + alpha * alpha)
    c = -1.0
    return (-b - math.sqrt(b * b - 4.0 * a * c)) / (2.0 * a)


def threshold2_closed(q: int) -> float:
    return math.sqrt(q) * (math.sqrt(q) - 1.0) / 2.0


def threshold3_closed(q: int) -> float:
    return math.sqrt(q) * (q - 1.0) / math.sqrt(2.0)
