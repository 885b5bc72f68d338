from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalebb.core import (
    Box,
    ExpressionSyntaxError,
    Interval,
    VariableIndexError,
    differentiate,
    eval_batch,
    eval_interval,
    eval_point,
    hessian,
    interval_hessian,
    load_expression,
    parse,
)
from scalebb.core.expr import Add, Constant, IntPow, Mul, Neg, Sub, Variable

N = 3


def expressions() -> st.SearchStrategy:
    leaves = st.one_of(
        st.integers(-5, 5).map(lambda k: Constant(Fraction(k))),
        st.integers(1, N).map(Variable),
    )

    def extend(children: st.SearchStrategy) -> st.SearchStrategy:
        return st.one_of(
            st.builds(Add, children, children),
            st.builds(Sub, children, children),
            st.builds(Mul, children, children),
            st.builds(Neg, children),
            st.builds(IntPow, children, st.integers(0, 3)),
        )

    return st.recursive(leaves, extend, max_leaves=8)


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=20)


def test_parse_cubic(cubic_text):
    f = parse(cubic_text, n=2)
    assert eval_point(f, [1, 1]) == Fraction(223, 6)
    assert float(eval_point(f, [1.0, 1.0])) == pytest.approx(37.1666667)


def test_parse_folds_rational_constants():
    assert parse("100/3", n=1) == Constant(Fraction(100, 3))
    assert parse("x1", n=1) == Variable(1)
    assert parse("0.25*x1", n=1) == Mul(Constant(Fraction(1, 4)), Variable(1))


def test_parse_precedence():
    # ^ binds tighter than unary minus
    assert eval_point(parse("-x1^2", n=1), [3]) == -9
    assert eval_point(parse("2*x1^2 + 3*x2 - 1", n=2), [2, 5]) == 22
    assert eval_point(parse("(x1 + 1)^3", n=1), [1]) == 8


def test_parse_errors():
    with pytest.raises(VariableIndexError):
        parse("x3", n=2)
    with pytest.raises(IndexError):
        parse("x0", n=2)
    with pytest.raises(ExpressionSyntaxError) as info:
        parse("x1 + * x2", n=2)
    assert info.value.position == 5
    with pytest.raises(SyntaxError):
        parse("(x1 + x2", n=2)
    with pytest.raises(SyntaxError):
        parse("x1 $ x2", n=2)


def test_load_expression(cubic_text):
    n, f = load_expression(f"n=2\n{cubic_text}\n")
    assert n == 2
    assert eval_point(f, [1, 1]) == Fraction(223, 6)
    with pytest.raises(ExpressionSyntaxError):
        load_expression("x1 + x2\n")


def test_differentiate_examples():
    assert eval_point(differentiate(parse("x1^3", 1), 1), [2]) == 12
    assert eval_point(differentiate(parse("5*x1*x2^2", 2), 2), [3, 7]) == 10 * 3 * 7
    assert differentiate(Constant(Fraction(7)), 1) == Constant(Fraction(0))


def test_hessian_cubic(cubic_text):
    h = hessian(parse(cubic_text, 2), 2)
    for x1, x2 in [(1, 1), (2, 3), (Fraction(3, 2), -1)]:
        assert eval_point(h[0][0], [x1, x2]) == 200 * x1
        assert eval_point(h[0][1], [x1, x2]) == 10 * x2
        assert eval_point(h[1][0], [x1, x2]) == 10 * x2
        assert eval_point(h[1][1], [x1, x2]) == 10 * x1 - 7 * x2


def test_hessian_trivial_cases():
    zero = hessian(Constant(Fraction(5)), 2)
    assert all(eval_point(entry, [1, 1]) == 0 for row in zero for entry in row)
    bilinear = hessian(parse("x1*x2", 2), 2)
    assert [[eval_point(e, [3, 4]) for e in row] for row in bilinear] == [[0, 1], [1, 0]]


def test_interval_hessian_cubic(cubic_text):
    box = Box.from_pairs([[1, 2], [1, 2]])
    h = interval_hessian(parse(cubic_text, 2), box)
    assert h == [
        [Interval(200, 400), Interval(10, 20)],
        [Interval(10, 20), Interval(-4, 13)],
    ]


def test_eval_interval_examples():
    box = Box.from_pairs([[1, 2], [1, 2]])
    assert eval_interval(parse("200*x1", 2), box) == Interval(200, 400)
    assert eval_interval(parse("10*x1 - 7*x2", 2), box) == Interval(-4, 13)
    assert eval_interval(parse("x1^2", 1), Box.from_pairs([[-1, 2]])) == Interval(0, 4)


def test_interval_hessian_trivial_cases():
    box = Box.from_pairs([[0, 1], [0, 1]])
    constant = interval_hessian(Constant(Fraction(3)), box)
    assert all(entry == Interval(0, 0) for row in constant for entry in row)
    bilinear = interval_hessian(parse("x1*x2", 2), box)
    assert bilinear == [[Interval(0, 0), Interval(1, 1)], [Interval(1, 1), Interval(0, 0)]]


def test_eval_batch_matches_eval_point(cubic_text):
    f = parse(cubic_text, 2)
    points = np.random.default_rng(0).uniform(1, 2, size=(20, 2))
    expected = [float(eval_point(f, p)) for p in points]
    np.testing.assert_allclose(eval_batch(f, points), expected, rtol=1e-14)
    np.testing.assert_array_equal(eval_batch(Constant(Fraction(2)), points), np.full(20, 2.0))


def test_str_round_trips_through_parser(cubic_text):
    f = parse(cubic_text, 2)
    again = parse(str(f), 2)
    for x in [(1, 1), (2, -3), (Fraction(1, 3), 5)]:
        assert eval_point(again, x) == eval_point(f, x)


@settings(max_examples=100, deadline=None)
@given(e=expressions(), i=st.integers(1, N), x=st.lists(rationals, min_size=N, max_size=N))
def test_derivative_matches_central_difference(e, i, x):
    step = Fraction(1, 10**6)
    plus, minus = list(x), list(x)
    plus[i - 1] += step
    minus[i - 1] -= step
    difference = (eval_point(e, plus) - eval_point(e, minus)) / (2 * step)
    exact = eval_point(differentiate(e, i), x)
    assert float(exact) == pytest.approx(float(difference), rel=1e-6, abs=1e-6)


@settings(max_examples=100, deadline=None)
@given(e=expressions(), x=st.lists(rationals, min_size=N, max_size=N))
def test_hessian_is_symmetric(e, x):
    h = hessian(e, N)
    for i in range(N):
        for j in range(i + 1, N):
            assert eval_point(h[i][j], x) == eval_point(h[j][i], x)


@settings(max_examples=100, deadline=None)
@given(e=expressions(), seed=st.integers(0, 2**32 - 1))
def test_hessian_entries_enclosed(e, seed):
    box = Box.from_pairs([[-1, 0.5], [0, 2], [-2, -1]])
    enclosure = [[eval_interval(entry, box) for entry in row] for row in hessian(e, N)]
    points = np.random.default_rng(seed).uniform(box.lower, box.upper, size=(100, N))
    for row, bounds in zip(hessian(e, N), enclosure, strict=True):
        for entry, iv in zip(row, bounds, strict=True):
            for value in eval_batch(entry, points):
                slack = 1e-9 * max(1.0, abs(value))
                assert iv.lo - slack <= value <= iv.hi + slack
