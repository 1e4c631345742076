"""Feasible-region tests for point-count vectors of curves over finite fields.

Two kinds of constraints are handled.  The Weil side requires the Gram matrix
T_{n+1}(1, x_1, ..., x_n) to be positive (semi)definite; the open domain asks
for all leading minors positive, the closed domain for positive semidefinite,
checked by the smallest eigenvalue.  The Ihara side encodes that a curve has
at least as many points over every extension field as over the base field,
which pins each x_i below an affine function of x_1.  Equality in all Ihara
constraints defines a line through the domain, parametrized here by x_1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gram import GramPoint, gram_matrix, leading_minors

__all__ = [
    "INFINITE_GENUS",
    "IharaLine",
    "CurveCounts",
    "DomainVerdict",
    "in_open_domain",
    "in_closed_domain",
    "ihara_point",
    "ihara_slacks",
    "point_from_counts",
    "point_count_bound",
    "second_extension_bound",
]

#: Distinguished genus value for the limiting line x_i = alpha^(i-1) x_1.
INFINITE_GENUS = math.inf

OPEN_TOL = 1e-12
CLOSED_TOL = 1e-9


@dataclass(frozen=True)
class IharaLine:
    """The line of points saturating every Ihara constraint at genus g.

    The point at parameter t has coordinates
    x_1 = t,  x_i = alpha^(i-1) t + (q^(i-1) - 1) / (2 g q^((i-2)/2))
    with alpha = 1/sqrt(q).  At infinite genus the additive drift vanishes.
    """

    q: int
    genus: float
    order: int

    def __post_init__(self) -> None:
        if int(self.q) != self.q or self.q < 2:
            raise ValueError("field size q must be an integer >= 2")
        object.__setattr__(self, "q", int(self.q))
        if self.order < 1:
            raise ValueError("order must be >= 1")
        g = float(self.genus)
        if not g > 0:
            raise ValueError("genus must be positive (or INFINITE_GENUS)")
        object.__setattr__(self, "genus", g)

    @property
    def alpha(self) -> float:
        return 1.0 / math.sqrt(self.q)

    @property
    def infinite(self) -> bool:
        return math.isinf(self.genus)


@dataclass(frozen=True)
class CurveCounts:
    """Point counts N_1..N_n of one curve over the extension tower of F_q."""

    q: int
    genus: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError("field size q must be >= 2")
        if self.genus < 1:
            raise ValueError("genus must be a positive integer")
        if not self.counts:
            raise ValueError("need at least one point count")
        if any(c < 0 for c in self.counts):
            raise ValueError("point counts must be nonnegative")
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))

    @property
    def order(self) -> int:
        return len(self.counts)

    def ihara_violations(self) -> tuple[int, ...]:
        """Extension degrees i >= 2 where N_i < N_1, which no curve allows."""
        first = self.counts[0]
        return tuple(i + 1 for i, c in enumerate(self.counts[1:], start=1) if c < first)


@dataclass(frozen=True)
class DomainVerdict:
    inside_open: bool
    inside_closed: bool
    minors: tuple[float, ...]
    min_eigenvalue: float


def _verdict(point: GramPoint, open_tol: float, closed_tol: float) -> DomainVerdict:
    minors = leading_minors(point)
    min_eig = float(np.linalg.eigvalsh(gram_matrix(point))[0])
    return DomainVerdict(
        inside_open=all(m > open_tol for m in minors),
        inside_closed=min_eig >= -closed_tol,
        minors=minors,
        min_eigenvalue=min_eig,
    )


def in_open_domain(point: GramPoint, tol: float = OPEN_TOL) -> DomainVerdict:
    """Verdict with inside_open true iff every leading minor exceeds tol."""
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    return _verdict(point, tol, CLOSED_TOL)


def in_closed_domain(point: GramPoint, tol: float = CLOSED_TOL) -> DomainVerdict:
    """Verdict with inside_closed true iff the smallest Gram eigenvalue is >= -tol.

    Positive semidefiniteness is equivalent to every principal minor (not just
    the leading ones) being nonnegative; the eigenvalue test gives the same
    verdict in O(n^3) instead of enumerating 2^(n+1) minors.
    """
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    return _verdict(point, OPEN_TOL, tol)


def _drift(q: int, genus: float, i: int) -> float:
    # (q^(i-1) - 1) / (2 g q^((i-2)/2)); zero at infinite genus.
    if math.isinf(genus):
        return 0.0
    return (q ** (i - 1) - 1) / (2.0 * genus * math.sqrt(q) ** (i - 2))


def ihara_point(line: IharaLine, x1: float) -> GramPoint:
    """The point of the line at parameter x_1."""
    alpha = line.alpha
    coords = [float(x1)]
    for i in range(2, line.order + 1):
        coords.append(alpha ** (i - 1) * x1 + _drift(line.q, line.genus, i))
    return GramPoint(tuple(coords))


def ihara_slacks(line: IharaLine, point: GramPoint) -> np.ndarray:
    """Slack of each Ihara constraint at the point, for i = 2..n.

    Slack i is x_i - alpha^(i-1) x_1 - drift_i; the point satisfies every
    constraint iff all slacks are <= 0.  Requires finite genus, since the
    drift normalization divides by g.
    """
    if line.infinite:
        raise ValueError("Ihara slacks need a finite genus")
    if point.order != line.order:
        raise ValueError("point order does not match the line")
    x1 = point.coords[0]
    alpha = line.alpha
    return np.array(
        [
            point.coords[i - 1] - alpha ** (i - 1) * x1 - _drift(line.q, line.genus, i)
            for i in range(2, line.order + 1)
        ]
    )


def point_from_counts(counts: CurveCounts) -> GramPoint:
    """Normalized deviation point x_i = (q^i + 1 - N_i) / (2 g q^(i/2))."""
    if counts.genus < 1:
        raise ValueError("normalization needs genus >= 1")
    q = counts.q
    sq = math.sqrt(q)
    coords = tuple(
        (q**i + 1 - counts.counts[i - 1]) / (2.0 * counts.genus * sq**i)
        for i in range(1, counts.order + 1)
    )
    return GramPoint(coords)


def point_count_bound(q: int, genus: float, min_x1: float) -> int:
    """Integer point-count bound floor(q + 1 - 2 g sqrt(q) min_x1).

    A 1e-9 guard absorbs representation error: several of these bounds are
    exact integers in exact arithmetic (for instance 5 at q=2, g=1).
    """
    return math.floor(q + 1 - 2.0 * genus * math.sqrt(q) * min_x1 + 1e-9)


def second_extension_bound(q: int, genus: float, n1: float) -> float:
    """Upper bound for N_2 given N_1: q^2 + 1 + 2 g q - (N_1 - (q+1))^2 / g."""
    if not genus > 0:
        raise ValueError("genus must be positive")
    return q**2 + 1 + 2.0 * genus * q - (n1 - (q + 1)) ** 2 / genus
