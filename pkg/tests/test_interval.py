import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalebb.core import (
    Box,
    Interval,
    InvalidInterval,
    box_midpoint,
    box_radius,
    iv_add,
    iv_int_pow,
    iv_mul,
)
from scalebb.core.interval import iv_intersect, iv_neg, iv_sub

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)


@st.composite
def intervals(draw: st.DrawFn) -> Interval:
    a, b = draw(finite), draw(finite)
    return Interval(min(a, b), max(a, b))


def _sample(iv: Interval, rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.uniform(iv.lo, iv.hi, size=size) if iv.hi > iv.lo else np.full(size, iv.lo)


def test_add_examples():
    assert iv_add(Interval(1, 2), Interval(3, 4)) == Interval(4, 6)
    assert iv_add(Interval(0, 0), Interval(-4, 13)) == Interval(-4, 13)
    assert Interval(-1, 1) + Interval(-1, 1) == Interval(-2, 2)


def test_mul_examples():
    assert iv_mul(Interval(-1, 2), Interval(3, 4)) == Interval(-4, 8)
    assert iv_mul(Interval(1, 1), Interval(-4, 13)) == Interval(-4, 13)
    assert iv_mul(Interval(200, 200), Interval(1, 2)) == Interval(200, 400)


def test_int_pow_examples():
    assert iv_int_pow(Interval(-1, 2), 2) == Interval(0, 4)
    assert iv_int_pow(Interval(1, 2), 3) == Interval(1, 8)
    assert iv_int_pow(Interval(-2, -1), 2) == Interval(1, 4)
    assert iv_int_pow(Interval(-3, 5), 0) == Interval(1, 1)
    assert iv_int_pow(Interval(-2, 1), 3) == Interval(-8, 1)


def test_sub_neg_intersect():
    assert iv_sub(Interval(10, 20), Interval(7, 14)) == Interval(-4, 13)
    assert iv_neg(Interval(-1, 3)) == Interval(-3, 1)
    assert iv_intersect(Interval(0, 5), Interval(3, 8)) == Interval(3, 5)


def test_invalid_interval():
    with pytest.raises(InvalidInterval):
        Interval(2, 1)
    with pytest.raises(InvalidInterval):
        Interval(math.nan, 1)
    with pytest.raises(InvalidInterval):
        Box(())


def test_box_radius_and_midpoint():
    box = Box.from_pairs([[1, 2], [1, 2]])
    np.testing.assert_array_equal(box_radius(box), [0.5, 0.5])
    np.testing.assert_array_equal(box_midpoint(box), [1.5, 1.5])
    np.testing.assert_array_equal(box_radius(Box.from_pairs([[3, 3]])), [0.0])
    np.testing.assert_array_equal(box_radius(Box.from_pairs([[-1, 1], [0, 4]])), [1.0, 2.0])
    np.testing.assert_array_equal(box_midpoint(Box.from_pairs([[-1, 1]])), [0.0])
    np.testing.assert_array_equal(box_midpoint(Box.from_pairs([[0, 4]])), [2.0])


def test_box_accessors():
    box = Box.from_pairs([[0, 1], [-2, 3]])
    assert box.dims == len(box) == 2
    assert box[1] == Interval(-2, 3)
    assert box.contains([0.5, 3.0])
    assert not box.contains([1.5, 0.0])
    assert box.to_pairs() == [[0.0, 1.0], [-2.0, 3.0]]


@settings(max_examples=50, deadline=None)
@given(a=intervals(), b=intervals(), seed=st.integers(0, 2**32 - 1))
def test_binary_ops_contain_point_results(a, b, seed):
    rng = np.random.default_rng(seed)
    xs, ys = _sample(a, rng, 100), _sample(b, rng, 100)
    added, multiplied = iv_add(a, b), iv_mul(a, b)
    for x, y in zip(xs, ys, strict=True):
        assert added.contains(x + y)
        assert multiplied.contains(x * y)


@settings(max_examples=50, deadline=None)
@given(a=intervals(), k=st.integers(0, 5), seed=st.integers(0, 2**32 - 1))
def test_int_pow_contains_point_results(a, k, seed):
    rng = np.random.default_rng(seed)
    image = iv_int_pow(a, k)
    for x in _sample(a, rng, 100):
        value = x**k
        slack = 1e-12 * max(1.0, abs(value))
        assert image.lo - slack <= value <= image.hi + slack


@given(x=finite, y=finite)
def test_degenerate_intervals_match_real_arithmetic(x, y):
    a, b = Interval.point(x), Interval.point(y)
    assert iv_add(a, b) == Interval.point(x + y)
    assert iv_mul(a, b) == Interval.point(x * y)
    assert iv_int_pow(a, 2) == Interval.point(x * x)


@given(a=intervals())
def test_midpoint_plus_minus_radius_reconstructs_endpoints(a):
    box = Box((a,))
    mid, rad = box_midpoint(box)[0], box_radius(box)[0]
    assert rad >= 0
    assert mid - rad == pytest.approx(a.lo, abs=1e-12)
    assert mid + rad == pytest.approx(a.hi, abs=1e-12)
