"""Point-count upper bounds per order, best-order selection, and companions.

Orders 1 and 2 are the classical Weil and Ihara bounds with closed forms;
order 3 has a closed form as the negative root of an explicit quadratic.  All
orders are also available through the numeric optimizer, and best_bound sweeps
them to report the smallest bound with its order.  The module further exposes
the infinite-genus asymptotic slopes, Tsfasman defect sums for tower limits,
and the relative bounds for coverings and fiber products.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass

from . import optimize
from .domain import point_count_bound

__all__ = [
    "OrderBound",
    "BestBoundReport",
    "TowerSpec",
    "Order3Coefficients",
    "order2_genus_threshold",
    "order3_genus_threshold",
    "weil_order1",
    "ihara_order2",
    "order3_closed",
    "order3_printed_coefficients",
    "order3_printed_min_x1",
    "order_n_bound",
    "best_bound",
    "asymptotic_order_bound",
    "order3_asymptotic_printed",
    "drinfeld_vladut_bound",
    "tsfasman_defect",
    "tsfasman_partial",
    "relative_weil",
    "relative_order2",
    "fiber_product_bound",
]

log = logging.getLogger(__name__)

#: Orders beyond this are never needed for the genus range of the tables.
DEFAULT_MAX_ORDER = 12
#: Real-valued bounds within this of the minimum count as tied.
TIE_TOL = 1e-9
#: Guard against rounding when an applicability threshold is hit exactly.
THRESHOLD_TOL = 1e-12


@dataclass(frozen=True)
class OrderBound:
    """One order's bound: minimizer, real bound, floored integer bound.

    min_x1 and real_bound are None when the order could not be evaluated at
    all (Ihara line misses the domain).  applicable is False either then or
    when the optimality certificate failed; in the latter case the computed
    values are kept for inspection but excluded from best-bound selection.
    """

    order: int
    min_x1: float | None
    real_bound: float | None
    int_bound: int | None
    applicable: bool
    certified: bool


@dataclass(frozen=True)
class BestBoundReport:
    q: int
    genus: float
    per_order: tuple[OrderBound, ...]
    best_int: int
    best_order: int


@dataclass(frozen=True)
class TowerSpec:
    """Limit ratios beta_r of degree-r places to genus along a curve tower."""

    q: int
    betas: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError("field size q must be >= 2")
        betas = tuple(float(b) for b in self.betas)
        if not betas:
            raise ValueError("need at least one beta")
        if not all(math.isfinite(b) and b >= 0 for b in betas):
            raise ValueError("betas must be finite and nonnegative")
        object.__setattr__(self, "betas", betas)


@dataclass(frozen=True)
class Order3Coefficients:
    """Coefficients a, b, c, d of the printed order-3 radical formula.

    Kept verbatim for comparison; the formula they produce disagrees with the
    quadratic derivation (see order3_printed_min_x1), so nothing downstream
    consumes them.
    """

    a: float
    b: float
    c: float
    d: float


def order2_genus_threshold(q: int) -> float:
    """Genus above which the order-2 (Ihara) bound applies: sqrt(q)(sqrt(q)-1)/2."""
    sq = math.sqrt(q)
    return sq * (sq - 1.0) / 2.0


def order3_genus_threshold(q: int) -> float:
    """Genus above which the order-3 bound applies: sqrt(q)(q-1)/sqrt(2)."""
    return math.sqrt(q) * (q - 1.0) / math.sqrt(2.0)


def _bound_from_min_x1(q: int, genus: float, min_x1: float, order: int, certified: bool) -> OrderBound:
    real = q + 1 - 2.0 * genus * math.sqrt(q) * min_x1
    return OrderBound(
        order=order,
        min_x1=min_x1,
        real_bound=real,
        int_bound=point_count_bound(q, genus, min_x1) if certified else None,
        applicable=certified,
        certified=certified,
    )


def _not_applicable(order: int) -> OrderBound:
    return OrderBound(
        order=order, min_x1=None, real_bound=None, int_bound=None, applicable=False, certified=False
    )


def weil_order1(q: int, genus: float) -> OrderBound:
    """Classical Weil bound q + 1 + 2 g sqrt(q), always applicable."""
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    return _bound_from_min_x1(q, genus, -1.0, order=1, certified=True)


def ihara_order2(q: int, genus: float) -> OrderBound:
    """Ihara bound q + 1 + (sqrt((8q+1)g^2 + 4q(q-1)g) - g)/2.

    Applicable from the order-2 genus threshold on; the minimizing x_1 is
    recovered from the bound value.
    """
    if not genus > 0:
        raise ValueError("genus must be positive")
    if genus < order2_genus_threshold(q) - THRESHOLD_TOL:
        return _not_applicable(2)
    real = q + 1 + (math.sqrt((8.0 * q + 1.0) * genus**2 + 4.0 * q * (q - 1.0) * genus) - genus) / 2.0
    min_x1 = (q + 1 - real) / (2.0 * genus * math.sqrt(q))
    return _bound_from_min_x1(q, genus, min_x1, order=2, certified=True)


def _order3_quadratic(q: int, genus: float) -> tuple[float, float, float]:
    """Coefficients (A, B, C) with A x^2 + B x + C = 0 at the order-3 minimizer.

    Obtained by eliminating x_2, x_3 along the Ihara line in the equation
    (x_1 + alpha x_1 + (q-1)/(2g))^2 = (1 + x_1)(1 + alpha^2 x_1 + (q^2-1)/(2g sqrt(q))).
    """
    alpha = 1.0 / math.sqrt(q)
    lead = 1.0 + 2.0 * alpha
    lin = (q - 1.0) * (1.0 + alpha) / genus - (1.0 + alpha**2) - (q**2 - 1.0) / (2.0 * genus * math.sqrt(q))
    const = (q - 1.0) ** 2 / (4.0 * genus**2) - 1.0 - (q**2 - 1.0) / (2.0 * genus * math.sqrt(q))
    return lead, lin, const


def order3_closed(q: int, genus: float) -> OrderBound:
    """Order-3 bound from the negative root of the explicit quadratic."""
    if not genus > 0:
        raise ValueError("genus must be positive")
    if genus < order3_genus_threshold(q) - THRESHOLD_TOL:
        return _not_applicable(3)
    lead, lin, const = _order3_quadratic(q, genus)
    disc = lin**2 - 4.0 * lead * const
    if disc < 0:
        return _not_applicable(3)
    root = (-lin - math.sqrt(disc)) / (2.0 * lead)
    return _bound_from_min_x1(q, genus, root, order=3, certified=True)


def order3_printed_coefficients(q: int) -> Order3Coefficients:
    sq = math.sqrt(q)
    return Order3Coefficients(
        a=5.0 + 8.0 / sq - 1.0 / q**2,
        b=((q - 1.0) / (q * sq)) * (q**2 - 4.0 * q * sq + 2.0 * q + 4.0 * sq - 1.0),
        c=((q - 1.0) / (4.0 * q)) * (q**3 - 5.0 * q**2 - 8.0 * q * sq - 5.0 * q - 8.0 * sq + 1.0),
        d=2.0 * sq * (q - 1.0) ** 2 / q,
    )


def order3_printed_min_x1(q: int, genus: float) -> float:
    """The as-printed order-3 radical formula for the minimizing x_1.

    Exposed for comparison only: at q=2, g=1 it evaluates to about -1.459,
    outside [-1, 0] and inconsistent with the known minimizer -sqrt(2)/2, so
    order3_closed uses the quadratic derivation instead.
    """
    coef = order3_printed_coefficients(q)
    radicand = coef.a + coef.b / genus + coef.c / genus**2
    return ((q - 1.0) / q - coef.d / genus - math.sqrt(radicand)) / 2.0


def order_n_bound(q: int, genus: float, order: int, tol: float = optimize.ROOT_TOL) -> OrderBound:
    """Bound of the given order via the numeric optimizer.

    Order 1 routes to the Weil closed form.  When the optimizer finds a
    minimizer whose certificate fails, the values are recorded on the result
    but the order is marked not applicable rather than silently trusted.
    """
    if order == 1:
        return weil_order1(q, genus)
    found = optimize.min_x1(q, genus, order, tol)
    if found is None:
        return _not_applicable(order)
    value, report = found
    if not report.certified:
        log.warning(
            "order %d at q=%d genus=%s: minimizer %.12g failed certification %r",
            order, q, genus, value, report,
        )
        real = q + 1 - 2.0 * genus * math.sqrt(q) * value
        return OrderBound(
            order=order, min_x1=value, real_bound=real, int_bound=None,
            applicable=False, certified=False,
        )
    return _bound_from_min_x1(q, genus, value, order=order, certified=True)


def best_bound(
    q: int, genus: float, max_order: int = DEFAULT_MAX_ORDER, tol: float = optimize.ROOT_TOL
) -> BestBoundReport:
    """Sweep orders 1..max_order and pick the smallest certified bound.

    The applicability thresholds increase with the order, so the sweep stops
    evaluating once an order's line misses the domain and marks the rest not
    applicable.  best_order is the smallest order whose real-valued bound is
    within a small tie tolerance of the minimum.
    """
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    per_order: list[OrderBound] = []
    stopped = False
    for order in range(1, max_order + 1):
        if stopped:
            per_order.append(_not_applicable(order))
            continue
        result = order_n_bound(q, genus, order, tol)
        per_order.append(result)
        # Not applicable covers both a missed domain and an uncertified
        # plus-face contact below the threshold genus; in either case the
        # genus sits below every later threshold too.
        if order >= 2 and not result.applicable:
            stopped = True
    usable = [b for b in per_order if b.applicable]
    if not usable:  # order 1 always applies, so this cannot happen
        raise optimize.NumericalError(f"no applicable order for q={q}, genus={genus}")
    best_int = min(b.int_bound for b in usable)
    min_real = min(b.real_bound for b in usable)
    best_order = min(b.order for b in usable if b.real_bound <= min_real + TIE_TOL)
    return BestBoundReport(
        q=q, genus=genus, per_order=tuple(per_order), best_int=best_int, best_order=best_order
    )


def asymptotic_order_bound(q: int, order: int) -> float:
    """Infinite-genus slope of the order-n bound: -2 sqrt(q) times the limit minimizer."""
    return -2.0 * math.sqrt(q) * optimize.min_x1_infinite(q, order)


def order3_asymptotic_printed(q: int) -> float:
    """The as-printed order-3 asymptotic slope, exposed for comparison.

    At q=2 this evaluates to about 3.855, above even the order-2 slope, while
    the quadratic-derived value (about 1.143) improves on it as an order-3
    refinement should; the printed closed form is therefore not used.
    """
    sq = math.sqrt(q)
    return (math.sqrt(5.0 + 8.0 / sq - 1.0 / q**2) - 1.0 + 1.0 / q) * sq


def drinfeld_vladut_bound(q: int) -> float:
    """The Drinfeld-Vladut asymptotic limit sqrt(q) - 1."""
    return math.sqrt(q) - 1.0


def tsfasman_defect(tower: TowerSpec) -> float:
    """Defect 1 - sum_r r beta_r / (q^(r/2) - 1); negative means infeasible."""
    total = 0.0
    for index, beta in enumerate(tower.betas):
        r = index + 1
        total += r * beta / (tower.q ** (r / 2.0) - 1.0)
    return 1.0 - total


def tsfasman_partial(tower: TowerSpec, m: int) -> float:
    """Truncated defect 1 - sum_{r s <= m-1} (1 - r s / m) r beta_r q^(-r s / 2).

    Converges to the defect as m grows.  Terms are evaluated in log space so
    that deep truncations do not overflow the power q^(r s / 2).
    """
    if m < 1:
        raise ValueError("truncation depth m must be >= 1")
    log_q = math.log(tower.q)
    total = 0.0
    for index, beta in enumerate(tower.betas):
        r = index + 1
        if beta == 0.0:
            continue
        s = 1
        while r * s <= m - 1:
            exponent = -0.5 * r * s * log_q
            if exponent < -745.0:  # exp underflows to zero beyond this
                break
            total += (1.0 - r * s / m) * r * beta * math.exp(exponent)
            s += 1
    return 1.0 - total


def relative_weil(q: int, genus_x: float, genus_y: float) -> float:
    """Bound 2 (gX - gY) sqrt(q) on |#X - #Y| for a covering X -> Y."""
    if genus_x < genus_y:
        raise ValueError("a covering forces genus_x >= genus_y")
    if genus_y < 0:
        raise ValueError("genera must be nonnegative")
    return 2.0 * (genus_x - genus_y) * math.sqrt(q)


def relative_order2(q: int, genus_x: float, genus_y: float, delta_n1: float) -> float:
    """Second-extension refinement 2 (gX - gY) q - (N_X(q) - N_Y(q))^2 / (gX - gY)."""
    if genus_x <= genus_y:
        raise ValueError("the refinement divides by genus_x - genus_y > 0")
    diff = genus_x - genus_y
    return 2.0 * diff * q - delta_n1**2 / diff


def fiber_product_bound(q: int, genus_x: float, genus_y1: float, genus_y2: float, genus_z: float) -> float:
    """Bound 2 (gX - gY1 - gY2 + gZ) sqrt(q) for a fiber-product configuration.

    A negative value cannot bound the nonnegative left-hand side, so it
    signals that the configuration violates the hypotheses; a RuntimeWarning
    is issued in that case and the value returned unchanged.
    """
    value = 2.0 * (genus_x - genus_y1 - genus_y2 + genus_z) * math.sqrt(q)
    if value < 0:
        warnings.warn(
            "fiber-product bound is negative; the irreducibility hypothesis "
            "must fail for these genera",
            RuntimeWarning,
            stacklevel=2,
        )
    return value
