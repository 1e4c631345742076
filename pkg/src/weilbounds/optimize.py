"""Minimization of x_1 over the closed Weil domain cut by the Ihara constraints.

For fixed field size q, genus g and order n, the minimum of x_1 is attained on
the Ihara line, where the domain cuts out a segment [A, B] (possibly empty or
a single tangency point).  The left endpoint lies on the zero set of the minus
factor of the Gram determinant, so the optimizer locates the segment on a
grid, polishes the endpoint as a root of the minus factor along the line, and
certifies it with the sign conditions on the minus-factor gradient.

The threshold genus g_n below which the line misses the domain entirely is
found by bisection on 1/g, using a contact detector that survives the
tangency case where the feasible segment has zero width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domain import CLOSED_TOL, INFINITE_GENUS, IharaLine, ihara_point, in_closed_domain
from .gram import (
    GramPoint,
    minus_factor,
    minus_factor_gradient,
    minus_factor_matrix,
    plus_factor,
)

__all__ = [
    "NumericalError",
    "FeasibleSegment",
    "CriteriaReport",
    "ThresholdResult",
    "feasible_segment",
    "min_x1",
    "min_x1_infinite",
    "threshold_genus",
]

DEFAULT_GRID = 4096
SEGMENT_TOL = 1e-13
ROOT_TOL = 1e-12
#: |minus factor| accepted at a segment endpoint when no sign change brackets
#: the root (tangency, genus exactly at threshold).
TANGENT_TOL = 1e-9
CRITERIA_TOL = 1e-9
MAX_ITER = 200


class NumericalError(RuntimeError):
    """Root polishing or bracketing failed; the message carries diagnostics."""


@dataclass(frozen=True)
class FeasibleSegment:
    """Endpoints of the intersection of the Ihara line with the closed domain."""

    x1_lo: float
    x1_hi: float
    found: bool


@dataclass(frozen=True)
class CriteriaReport:
    """Optimality certificate at a candidate minimizer.

    certified requires the point to sit on the minus-factor zero set
    (|minus_value| small), all partial derivatives of the minus factor beyond
    the first to be nonnegative, and the directional derivative along the line
    to be strictly positive.
    """

    minus_value: float
    partials_ok: bool
    directional_ok: bool
    certified: bool
    gradient: tuple[float, ...]
    directional: float


@dataclass(frozen=True)
class ThresholdResult:
    """Bisection estimate of the smallest genus at which an order applies."""

    order: int
    q: int
    genus: float
    bracket: tuple[float, float]


def _line_min_eigs(line: IharaLine, ts: np.ndarray) -> np.ndarray:
    """Smallest Gram eigenvalue at each line parameter, evaluated as a batch."""
    n = line.order
    base = np.asarray(ihara_point(line, 0.0).coords)
    slope = np.asarray(ihara_point(line, 1.0).coords) - base
    coords = base + np.outer(ts, slope)  # (k, n)
    first = np.concatenate([np.ones((ts.size, 1)), coords], axis=1)  # (k, n+1)
    idx = np.abs(np.subtract.outer(np.arange(n + 1), np.arange(n + 1)))
    stack = first[:, idx]  # (k, n+1, n+1) Toeplitz per row
    return np.linalg.eigvalsh(stack)[:, 0]


def _member(line: IharaLine, t: float, tol: float = CLOSED_TOL) -> bool:
    return in_closed_domain(ihara_point(line, t), tol).inside_closed


def _minus_on_line(line: IharaLine, t: float) -> float:
    return minus_factor(ihara_point(line, t))


def _minus_on_line_many(line: IharaLine, ts: np.ndarray) -> np.ndarray:
    # The minus-factor matrix is affine along the line, so two evaluations
    # determine the whole family and the determinants batch.
    base = minus_factor_matrix(ihara_point(line, 0.0))
    slope = minus_factor_matrix(ihara_point(line, 1.0)) - base
    stack = base[None, :, :] + ts[:, None, None] * slope[None, :, :]
    return np.linalg.det(stack)


def _polish_minus_root(line: IharaLine, lo: float, hi: float, tol: float) -> float:
    """Bisection to |minus| <= tol inside a sign-change bracket, Newton-sharpened."""
    flo = _minus_on_line(line, lo)
    fhi = _minus_on_line(line, hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise NumericalError(
            f"no sign change in [{lo}, {hi}]: minus factor {flo:.3e} .. {fhi:.3e}"
        )
    a, b, fa = lo, hi, flo
    mid, fmid = a, fa
    for _ in range(MAX_ITER):
        mid = 0.5 * (a + b)
        fmid = _minus_on_line(line, mid)
        if abs(fmid) <= tol or (b - a) <= 1e-16:
            break
        if math.copysign(1.0, fa) == math.copysign(1.0, fmid):
            a, fa = mid, fmid
        else:
            b = mid
    else:
        raise NumericalError(
            f"bisection stalled after {MAX_ITER} iterations at t={mid}, minus={fmid:.3e}"
        )
    # One or two Newton corrections along the line direction.
    alpha = line.alpha
    direction = alpha ** np.arange(line.order)
    t = mid
    for _ in range(2):
        val = _minus_on_line(line, t)
        if abs(val) <= tol:
            break
        grad = minus_factor_gradient(ihara_point(line, t))
        deriv = float(grad @ direction)
        if deriv == 0.0:
            break
        step = val / deriv
        candidate = t - step
        if candidate < a - 1e-9 or candidate > b + 1e-9:
            break
        t = candidate
    if abs(_minus_on_line(line, t)) > max(tol, 1e-11):
        raise NumericalError(f"root polish left residual {_minus_on_line(line, t):.3e} at t={t}")
    return min(max(t, -1.0), 1.0)


def _domain_contacts(line: IharaLine, samples: int = 2048) -> list[float]:
    """Roots of the minus factor on [-1, 0] whose points pass the closed test.

    These are the contact parameters of the line with the domain boundary;
    the smallest one is the left endpoint of the feasible segment whenever the
    segment is nonempty, and the single tangency point when it degenerates.
    """
    ts = np.linspace(-1.0, 0.0, samples + 1)
    fs = _minus_on_line_many(line, ts)
    roots: list[float] = []
    for k in range(samples):
        fa, fb = fs[k], fs[k + 1]
        if fa == 0.0:
            roots.append(float(ts[k]))
        elif fa * fb < 0.0:
            roots.append(_polish_minus_root(line, float(ts[k]), float(ts[k + 1]), ROOT_TOL))
    if fs[-1] == 0.0:
        roots.append(0.0)
    return [t for t in roots if _member(line, t)]


def feasible_segment(
    line: IharaLine, grid: int = DEFAULT_GRID, tol: float = SEGMENT_TOL
) -> FeasibleSegment:
    """Locate the x_1 segment cut out of the line by the closed domain.

    Scans the grid over [-1, 1] for closed-domain membership and bisects the
    two edges outward; convexity of the domain makes membership an interval,
    so a single true run is all there is.  If no grid sample is feasible the
    segment may still be a tangency narrower than the grid spacing, which the
    contact detector recovers; only when that also finds nothing is the order
    reported as infeasible (genus at or below the threshold).
    """
    if grid < 64:
        raise ValueError("grid must be >= 64")
    ts = np.linspace(-1.0, 1.0, grid)
    ok = _line_min_eigs(line, ts) >= -CLOSED_TOL
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        contacts = _domain_contacts(line)
        if contacts:
            t = min(contacts)
            return FeasibleSegment(x1_lo=t, x1_hi=t, found=True)
        return FeasibleSegment(x1_lo=math.nan, x1_hi=math.nan, found=False)
    lo = float(ts[hits[0]])
    hi = float(ts[hits[-1]])
    if hits[0] > 0:
        lo = _bisect_edge(line, float(ts[hits[0] - 1]), lo, tol)
    if hits[-1] < grid - 1:
        hi = _bisect_edge(line, float(ts[hits[-1] + 1]), hi, tol)
    return FeasibleSegment(x1_lo=lo, x1_hi=hi, found=True)


def _bisect_edge(line: IharaLine, outside: float, inside: float, tol: float) -> float:
    while abs(inside - outside) > tol:
        mid = 0.5 * (inside + outside)
        if _member(line, mid):
            inside = mid
        else:
            outside = mid
    return inside


def _criteria(line: IharaLine, t: float) -> CriteriaReport:
    point = ihara_point(line, t)
    value = minus_factor(point)
    grad = minus_factor_gradient(point)
    partials_ok = bool(np.all(grad[1:] >= -CRITERIA_TOL))
    direction = line.alpha ** np.arange(line.order)
    directional = float(grad @ direction)
    directional_ok = directional > CRITERIA_TOL
    certified = partials_ok and directional_ok and abs(value) <= TANGENT_TOL
    return CriteriaReport(
        minus_value=value,
        partials_ok=partials_ok,
        directional_ok=directional_ok,
        certified=certified,
        gradient=tuple(float(v) for v in grad),
        directional=directional,
    )


def min_x1(
    q: int, genus: float, order: int, tol: float = ROOT_TOL
) -> tuple[float, CriteriaReport] | None:
    """Minimum of x_1 over the order-n closed domain under the Ihara constraints.

    Returns the minimizing x_1 together with its optimality certificate, or
    None when the Ihara line misses the domain (order not applicable at this
    genus).  Order 1 short-circuits to -1: the domain is [-1, 1] and there is
    no Ihara constraint yet.
    """
    line = IharaLine(q=q, genus=genus, order=order)
    if order == 1:
        # The order-1 domain is [-1, 1] with no Ihara constraint; the minus
        # factor 1 + x_1 vanishes at -1 with unit gradient.
        report = CriteriaReport(
            minus_value=0.0,
            partials_ok=True,
            directional_ok=True,
            certified=True,
            gradient=(1.0,),
            directional=1.0,
        )
        return -1.0, report
    segment = feasible_segment(line)
    if not segment.found:
        return None
    root = _left_endpoint_root(line, segment.x1_lo, tol)
    return root, _criteria(line, root)


def _left_endpoint_root(line: IharaLine, lo: float, tol: float) -> float:
    """Polish the left segment endpoint to a root of the minus factor."""
    value = _minus_on_line(line, lo)
    if abs(value) <= tol:
        return min(max(lo, -1.0), 1.0)
    # The endpoint is within a grid step of the root; expand a bracket around
    # it until the minus factor changes sign.
    for width in (1e-9, 1e-7, 1e-5, 1e-3, 4.0 / DEFAULT_GRID * 8):
        a = max(lo - width, -1.0 - 1e-6)
        b = lo + width
        fa = _minus_on_line(line, a)
        fb = _minus_on_line(line, b)
        if fa == 0.0:
            return max(a, -1.0)
        if fb == 0.0:
            return b
        if math.copysign(1.0, fa) != math.copysign(1.0, fb):
            root = _polish_minus_root(line, a, b, tol)
            # A wide bracket can latch onto an unrelated root outside the
            # domain, so anything found beyond the first two widths must
            # still sit on the boundary.
            if width <= 1e-7 or _member(line, root, tol=1e-6):
                return root
    if abs(value) <= TANGENT_TOL:
        # Tangency: the segment degenerated and the endpoint is the contact.
        return min(max(lo, -1.0), 1.0)
    if abs(plus_factor(ihara_point(line, lo))) <= 1e-6:
        # Below the threshold genus the line can still clip the domain, but
        # then the left edge sits on the plus-factor face and there is no
        # minus-factor root to polish.  Return the edge; the optimality
        # criteria fail there and the order is reported as not applicable.
        return min(max(lo, -1.0), 1.0)
    raise NumericalError(
        f"no minus-factor sign change near segment endpoint t={lo} "
        f"(q={line.q}, genus={line.genus}, order={line.order}, minus={value:.3e})"
    )


def min_x1_infinite(q: int, order: int, tol: float = ROOT_TOL) -> float:
    """Limit of the order-n minimum of x_1 as the genus grows without bound."""
    line = IharaLine(q=q, genus=INFINITE_GENUS, order=order)
    if order == 1:
        return -1.0
    segment = feasible_segment(line)
    if not segment.found:
        raise NumericalError(f"infinite-genus line missed the domain at order {order}")
    root = _left_endpoint_root(line, segment.x1_lo, tol)
    # Every order applies in the infinite-genus limit, so the endpoint must be
    # a genuine minus-factor root rather than a plus-face contact.
    residual = _minus_on_line(line, root)
    if abs(residual) > TANGENT_TOL:
        raise NumericalError(
            f"infinite-genus endpoint is not a minus-factor root at order {order} "
            f"(residual {residual:.3e})"
        )
    return root


def _touches(q: int, order: int, inverse_genus: float) -> bool:
    genus = INFINITE_GENUS if inverse_genus == 0.0 else 1.0 / inverse_genus
    line = IharaLine(q=q, genus=genus, order=order)
    return bool(_domain_contacts(line))


def threshold_genus(q: int, order: int, tol: float = 1e-9) -> ThresholdResult:
    """Smallest genus at which the order-n line reaches the domain.

    Bisection runs on u = 1/g, where the set of u with a nonempty segment is
    an interval [0, 1/g_n); the contact detector keeps the predicate sharp
    near the threshold, where the segment width collapses to zero.
    """
    if order < 2:
        raise ValueError("threshold is defined for order >= 2")
    u_feasible = 1e-6
    for _ in range(60):
        if _touches(q, order, u_feasible):
            break
        u_feasible /= 4.0
    else:
        raise NumericalError(f"could not find a feasible genus for order {order}")
    u_infeasible = 4.0
    for _ in range(60):
        if not _touches(q, order, u_infeasible):
            break
        u_infeasible *= 4.0
    else:
        raise NumericalError(f"could not find an infeasible genus for order {order}")
    for _ in range(200):
        g_lo = 1.0 / u_infeasible
        g_hi = 1.0 / u_feasible
        if g_hi - g_lo <= tol * max(1.0, g_lo):
            break
        mid = 0.5 * (u_feasible + u_infeasible)
        if _touches(q, order, mid):
            u_feasible = mid
        else:
            u_infeasible = mid
    g_lo = 1.0 / u_infeasible
    g_hi = 1.0 / u_feasible
    return ThresholdResult(order=order, q=q, genus=0.5 * (g_lo + g_hi), bracket=(g_lo, g_hi))
