"""Tests for the Toeplitz Gram matrix, its factorization and the gradient."""

import numpy as np
import pytest

from weilbounds import gram
from weilbounds.gram import GramPoint

import oracles


def random_points(rng, order, count):
    return rng.uniform(-1.0, 1.0, size=(count, order))


# ---------------------------------------------------------------------------
# matrix builders

def test_toeplitz_two_by_two():
    m = gram.toeplitz((1.0, 0.3))
    assert np.array_equal(m, np.array([[1.0, 0.3], [0.3, 1.0]]))


def test_toeplitz_single_entry():
    assert np.array_equal(gram.toeplitz((1.0,)), np.array([[1.0]]))


def test_toeplitz_zero_tail_is_identity():
    m = gram.toeplitz((1.0, 0.0, 0.0, 0.0))
    assert np.array_equal(m, np.eye(4))


def test_toeplitz_rejects_empty():
    with pytest.raises(ValueError):
        gram.toeplitz(())


def test_toeplitz_is_symmetric():
    rng = np.random.default_rng(7)
    for _ in range(20):
        values = rng.uniform(-1.0, 1.0, size=rng.integers(1, 9))
        m = gram.toeplitz(values)
        assert np.array_equal(m, m.T)


def test_hankel_three_values():
    m = gram.hankel((2.0, 3.0, 4.0))
    assert np.array_equal(m, np.array([[2.0, 3.0], [3.0, 4.0]]))


def test_hankel_single_value():
    assert np.array_equal(gram.hankel((5.0,)), np.array([[5.0]]))


def test_hankel_rejects_even_length():
    with pytest.raises(ValueError):
        gram.hankel((1.0, 2.0))


# ---------------------------------------------------------------------------
# determinants

def test_det_identity():
    assert gram.det(np.eye(5)) == 1.0


def test_det_closed_form_2x2():
    assert gram.det(np.array([[1.0, 0.5], [0.5, 1.0]])) == pytest.approx(0.75, abs=1e-15)


def test_det_matches_permutation_expansion():
    rng = np.random.default_rng(11)
    for size in range(1, 7):
        m = rng.uniform(-1.0, 1.0, size=(size, size))
        assert gram.det(m) == pytest.approx(oracles.perm_det(m.tolist()), abs=1e-10)


def test_det_t4_equals_factor_product():
    point = GramPoint((0.2, 0.1, 0.05))
    full = gram.det(gram.toeplitz((1.0, 0.2, 0.1, 0.05)))
    pair = gram.factor_pair(point)
    assert full == pytest.approx(0.8775000000000002, abs=1e-12)
    assert full == pytest.approx(pair.minus * pair.plus, abs=1e-12)


# ---------------------------------------------------------------------------
# Gram determinant and factors

def test_gram_det_order_one():
    assert gram.gram_det(GramPoint((0.3,))) == pytest.approx(0.91, abs=1e-15)


def test_gram_det_origin():
    assert gram.gram_det(GramPoint((0.0, 0.0))) == pytest.approx(1.0, abs=1e-15)


def test_gram_det_alternating_corner_is_boundary():
    assert gram.gram_det(GramPoint((-1.0, 1.0))) == pytest.approx(0.0, abs=1e-12)
    assert gram.gram_det(GramPoint((-1.0, 1.0, -1.0))) == pytest.approx(0.0, abs=1e-12)


def test_factors_order_one():
    pair = gram.factor_pair(GramPoint((0.4,)))
    assert pair.minus == pytest.approx(1.4, abs=1e-15)
    assert pair.plus == pytest.approx(0.6, abs=1e-15)


def test_factors_order_two_polynomials():
    rng = np.random.default_rng(3)
    for x1, x2 in random_points(rng, 2, 50):
        pair = gram.factor_pair(GramPoint((x1, x2)))
        assert pair.minus == pytest.approx(oracles.minus2(x1, x2), abs=1e-12)
        assert pair.plus == pytest.approx(oracles.plus2(x1, x2), abs=1e-12)


def test_factors_order_three_polynomials():
    rng = np.random.default_rng(4)
    for x1, x2, x3 in random_points(rng, 3, 50):
        pair = gram.factor_pair(GramPoint((x1, x2, x3)))
        assert pair.minus == pytest.approx(oracles.minus3(x1, x2, x3), abs=1e-12)
        assert pair.plus == pytest.approx(oracles.plus3(x1, x2, x3), abs=1e-12)


@pytest.mark.parametrize("order", range(1, 11))
def test_factorization_identity(order):
    rng = np.random.default_rng(100 + order)
    for coords in random_points(rng, order, 200):
        point = GramPoint(tuple(coords))
        full = gram.gram_det(point)
        pair = gram.factor_pair(point)
        assert abs(full - pair.minus * pair.plus) <= 1e-9 * max(1.0, abs(full))


def _factor_pair_or_unit(coords, order):
    if order == 0:
        return 1.0, 1.0
    pair = gram.factor_pair(GramPoint(tuple(coords[:order])))
    return pair.minus, pair.plus


@pytest.mark.parametrize("order", range(1, 10))
def test_three_term_identity(order):
    rng = np.random.default_rng(200 + order)
    for coords in random_points(rng, order + 1, 100):
        g_n = gram.gram_det(GramPoint(tuple(coords[:order])))
        lo_minus, lo_plus = _factor_pair_or_unit(coords, order - 1)
        hi_minus, hi_plus = _factor_pair_or_unit(coords, order + 1)
        lhs = 2.0 * g_n
        rhs = lo_plus * hi_minus + lo_minus * hi_plus
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


@pytest.mark.parametrize("order", range(2, 9))
def test_minus_factor_affine_in_last_coordinate(order):
    rng = np.random.default_rng(300 + order)
    for coords in random_points(rng, order, 40):
        base = list(coords)
        low, high = list(base), list(base)
        low[-1] = -0.5
        high[-1] = 0.5
        f_low = gram.minus_factor(GramPoint(tuple(low)))
        f_high = gram.minus_factor(GramPoint(tuple(high)))
        slope = f_high - f_low
        if order == 2:
            expected = 1.0
        else:
            expected = gram.minus_factor(GramPoint(tuple(base[: order - 2])))
        assert slope == pytest.approx(expected, abs=1e-9)
        # midpoint lies on the chord, so the dependence really is affine
        mid = list(base)
        mid[-1] = 0.0
        assert gram.minus_factor(GramPoint(tuple(mid))) == pytest.approx(
            0.5 * (f_low + f_high), abs=1e-9
        )


# ---------------------------------------------------------------------------
# leading minors

def test_leading_minors_origin():
    assert gram.leading_minors(GramPoint((0.0, 0.0, 0.0))) == pytest.approx((1.0, 1.0, 1.0))


def test_leading_minors_alternating_corner():
    minors = gram.leading_minors(GramPoint((-1.0, 1.0, -1.0)))
    assert np.allclose(minors, 0.0, atol=1e-12)


def test_leading_minors_two_coordinates():
    minors = gram.leading_minors(GramPoint((0.5, 0.0)))
    assert minors[0] == pytest.approx(0.75, abs=1e-12)
    assert minors[1] == pytest.approx(0.5, abs=1e-12)


# ---------------------------------------------------------------------------
# gradient of the minus factor

def test_gradient_order_two_closed_form():
    rng = np.random.default_rng(5)
    for x1, x2 in random_points(rng, 2, 25):
        grad = gram.minus_factor_gradient(GramPoint((x1, x2)))
        assert grad[0] == pytest.approx(-4.0 * x1, abs=1e-10)
        assert grad[1] == pytest.approx(1.0, abs=1e-10)


def test_gradient_order_three_closed_form():
    rng = np.random.default_rng(6)
    for x1, x2, x3 in random_points(rng, 3, 25):
        grad = gram.minus_factor_gradient(GramPoint((x1, x2, x3)))
        assert grad[1] == pytest.approx(-2.0 * (x1 + x2), abs=1e-10)
        assert grad[2] == pytest.approx(1.0 + x1, abs=1e-10)


@pytest.mark.parametrize("order", range(1, 7))
def test_gradient_at_origin_matches_finite_differences(order):
    point = GramPoint((0.0,) * order)
    grad = gram.minus_factor_gradient(point)
    fd = oracles.central_diff_gradient(
        lambda c: gram.minus_factor(GramPoint(tuple(c))), [0.0] * order
    )
    assert np.allclose(grad, fd, atol=1e-8)


@pytest.mark.parametrize("order", range(1, 9))
def test_gradient_matches_finite_differences(order):
    rng = np.random.default_rng(400 + order)
    for coords in random_points(rng, order, 25):
        point = GramPoint(tuple(coords))
        grad = gram.minus_factor_gradient(point)
        fd = oracles.central_diff_gradient(
            lambda c: gram.minus_factor(GramPoint(tuple(c))), list(coords)
        )
        scale = max(1.0, float(np.max(np.abs(grad))))
        assert np.max(np.abs(np.asarray(fd) - grad)) <= 1e-6 * scale


def test_gradient_fallback_agrees_with_analytic():
    rng = np.random.default_rng(8)
    for coords in random_points(rng, 5, 10):
        point = GramPoint(tuple(coords))
        analytic = gram.minus_factor_gradient(point)
        fallback = gram.minus_factor_gradient_fd(point)
        assert np.allclose(analytic, fallback, atol=1e-6)


# ---------------------------------------------------------------------------
# GramPoint validation

def test_point_rejects_empty():
    with pytest.raises(ValueError):
        GramPoint(())


def test_point_rejects_non_finite():
    with pytest.raises(ValueError):
        GramPoint((0.1, float("nan")))


def test_point_order():
    assert GramPoint((0.1, 0.2, 0.3)).order == 3
