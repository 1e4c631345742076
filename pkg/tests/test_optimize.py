"""Tests for the segment finder, the x_1 minimizer and threshold genera."""

import math

import numpy as np
import pytest

from weilbounds import optimize
from weilbounds.domain import INFINITE_GENUS, IharaLine, ihara_point, in_closed_domain
from weilbounds.optimize import (
    feasible_segment,
    min_x1,
    min_x1_infinite,
    threshold_genus,
)

import oracles

SQRT2 = math.sqrt(2.0)

# best orders bracketed in the published table for q=2 and q=3, genus 1..15;
# used to sweep "applicable" (q, g, n) triples without recomputing thresholds
TABLE_ORDERS = {
    2: [3, 3, 4, 4, 5, 5, 5, 5, 6, 6, 6, 6, 6, 6, 7],
    3: [2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 4, 4, 4],
}


# ---------------------------------------------------------------------------
# feasible segment

def test_segment_order_two_left_endpoint():
    line = IharaLine(q=2, genus=1.0, order=2)
    segment = feasible_segment(line)
    assert segment.found
    assert segment.x1_lo <= segment.x1_hi
    assert segment.x1_lo == pytest.approx(-SQRT2 / 2.0, abs=1e-9)


def test_segment_endpoints_stay_in_closed_domain():
    for q, genus, order in ((2, 1.0, 2), (2, 5.0, 4), (3, 3.0, 3)):
        line = IharaLine(q=q, genus=genus, order=order)
        segment = feasible_segment(line)
        assert segment.found
        for t in (segment.x1_lo, segment.x1_hi):
            assert in_closed_domain(ihara_point(line, t)).inside_closed


def test_segment_missing_below_threshold():
    line = IharaLine(q=2, genus=0.25, order=2)
    segment = feasible_segment(line)
    assert not segment.found
    assert math.isnan(segment.x1_lo)


def test_segment_infinite_genus_order_one_is_full_interval():
    line = IharaLine(q=3, genus=INFINITE_GENUS, order=1)
    segment = feasible_segment(line)
    assert segment.found
    assert segment.x1_lo == -1.0
    assert segment.x1_hi == 1.0


def test_segment_recovers_tangency_at_threshold():
    # at q=2 the order-3 line touches the domain in the single point
    # (-sqrt2/2, 0, sqrt2/2) when the genus equals the threshold exactly
    line = IharaLine(q=2, genus=1.0, order=3)
    segment = feasible_segment(line)
    assert segment.found
    assert segment.x1_lo == pytest.approx(-SQRT2 / 2.0, abs=1e-8)
    assert segment.x1_hi - segment.x1_lo <= 1e-6


def test_segment_rejects_tiny_grid():
    with pytest.raises(ValueError):
        feasible_segment(IharaLine(q=2, genus=1.0, order=2), grid=32)


def test_segment_feasibility_is_single_run():
    rng = np.random.default_rng(61)
    qs = (2, 3, 4, 5, 7, 9)
    found_runs = 0
    for _ in range(100):
        q = int(rng.choice(qs))
        genus = float(rng.uniform(0.2, 20.0))
        order = int(rng.integers(1, 9))
        line = IharaLine(q=q, genus=genus, order=order)
        ts = np.linspace(-1.0, 1.0, 512)
        ok = optimize._line_min_eigs(line, ts) >= -1e-9
        flips = np.flatnonzero(np.diff(ok.astype(int)))
        runs = (flips.size + (1 if ok[0] else 0) + (1 if ok[-1] else 0)) // 2
        assert runs <= 1
        found_runs += runs
    assert found_runs > 30  # the sweep is not vacuous


# ---------------------------------------------------------------------------
# minimizer

def test_min_x1_order_one_short_circuit():
    value, report = min_x1(2, 1.0, 1)
    assert value == -1.0
    assert report.certified


def test_min_x1_validates_inputs_before_short_circuit():
    with pytest.raises(ValueError):
        min_x1(1, 1.0, 1)
    with pytest.raises(ValueError):
        min_x1(2, 0.0, 1)


def test_min_x1_order_three_tangent_case():
    value, report = min_x1(2, 1.0, 3)
    assert value == pytest.approx(-SQRT2 / 2.0, abs=1e-9)
    assert report.certified
    assert abs(report.minus_value) <= 1e-9


def test_min_x1_order_two_matches_closed_form():
    value, report = min_x1(2, 1.0, 2)
    assert value == pytest.approx(oracles.mu2_closed(2, 1.0), abs=1e-9)
    assert value == pytest.approx(-SQRT2 / 2.0, abs=1e-9)
    assert report.certified


def test_min_x1_order_three_quadratic_oracle():
    value, _ = min_x1(2, 3.0, 3)
    assert value == pytest.approx(-0.5213223696855956, abs=1e-9)
    assert value == pytest.approx(oracles.mu3_quadratic(2, 3.0), abs=1e-9)


def test_min_x1_absent_below_threshold():
    assert min_x1(2, 0.25, 2) is None


def test_min_x1_reports_uncertified_plus_face_contact():
    # below the order-5 threshold (about 4.67 for q=2) the line still clips
    # the domain, but through the other determinant factor; the minimizer
    # reports the point and the certificate fails
    found = min_x1(2, 4.0, 5)
    assert found is not None
    value, report = found
    assert not report.certified
    assert abs(report.minus_value) > 1e-3
    assert value > -0.2  # nowhere near a certified order-5 minimizer


def test_min_x1_certified_on_applicable_sweep():
    for q, orders in TABLE_ORDERS.items():
        for genus, best_order in enumerate(orders, start=1):
            for order in range(2, best_order + 1):
                found = min_x1(q, float(genus), order)
                assert found is not None, (q, genus, order)
                value, report = found
                assert report.certified, (q, genus, order, report)
                assert report.directional > 1e-9
                assert -1.0 <= value < 0.0


def test_min_x1_monotone_in_order():
    for q, genus in ((2, 5.0), (2, 12.0), (3, 8.0)):
        previous = None
        for order in range(1, 7):
            found = min_x1(q, genus, order)
            if found is None or not found[1].certified:
                break
            value = found[0]
            if previous is not None:
                assert value >= previous - 1e-12
            previous = value


# ---------------------------------------------------------------------------
# infinite-genus limits

def test_min_x1_infinite_order_one():
    assert min_x1_infinite(2, 1) == -1.0


def test_min_x1_infinite_validates_q():
    with pytest.raises(ValueError):
        min_x1_infinite(1, 1)


def test_min_x1_infinite_order_two():
    assert min_x1_infinite(2, 2) == pytest.approx(oracles.mu2_infinity(2), abs=1e-9)
    assert min_x1_infinite(2, 2) == pytest.approx(-0.5520922915590257, abs=1e-9)


def test_min_x1_infinite_order_three():
    assert min_x1_infinite(2, 3) == pytest.approx(oracles.mu3_infinity(2), abs=1e-9)
    assert min_x1_infinite(2, 3) == pytest.approx(-0.4039889062321517, abs=1e-9)


def test_finite_huge_genus_approaches_infinite_limit():
    for order in (2, 3, 4):
        finite = min_x1(2, 1e12, order)
        assert finite is not None
        assert finite[0] == pytest.approx(min_x1_infinite(2, order), abs=1e-6)


# ---------------------------------------------------------------------------
# threshold genus

def test_threshold_rejects_order_one():
    with pytest.raises(ValueError):
        threshold_genus(2, 1)


def test_threshold_order_three_is_exactly_one_for_q2():
    result = threshold_genus(2, 3)
    assert result.genus == pytest.approx(1.0, abs=1e-6)
    assert result.order == 3 and result.q == 2
    lo, hi = result.bracket
    assert lo <= result.genus <= hi
    assert hi - lo <= 1e-9 * max(1.0, lo) + 1e-12


def test_threshold_order_two_closed_form():
    for q in (2, 3, 5, 9):
        result = threshold_genus(q, 2)
        assert result.genus == pytest.approx(oracles.threshold2_closed(q), abs=1e-6)


def test_threshold_intro_values_for_q2():
    assert threshold_genus(2, 2).genus == pytest.approx(0.292893, abs=1e-4)
    assert threshold_genus(2, 4).genus == pytest.approx(2.35, abs=0.01)
    assert threshold_genus(2, 5).genus == pytest.approx(4.67, abs=0.01)
