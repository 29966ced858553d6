import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from densym.errors import RingMismatchError, UnsupportedFunctionalError
from densym.rings import (
    PolyFn, TrigFn, circle_mean, from_text, ring_diff, ring_mul, to_text,
)

rationals = st.fractions(
    min_value=-5, max_value=5, max_denominator=6
)


@st.composite
def polys(draw):
    coeffs = draw(st.lists(rationals, max_size=5))
    return PolyFn(coeffs)


@st.composite
def trigs(draw):
    mean = draw(rationals)
    cos = {n: draw(rationals) for n in draw(st.sets(st.integers(1, 3), max_size=2))}
    sin = {n: draw(rationals) for n in draw(st.sets(st.integers(1, 3), max_size=2))}
    return TrigFn(mean, cos, sin)


elements = st.one_of(polys(), trigs())


def test_monomial_product():
    assert PolyFn.x() * PolyFn.monomial(2) == PolyFn.monomial(3)


def test_cos_times_cos_product_to_sum():
    got = ring_mul(TrigFn.cosine(1), TrigFn.cosine(1))
    assert got == TrigFn(F(1, 2), {2: F(1, 2)}, {})
    # pointwise oracle at 8 sample angles
    for j in range(8):
        x = 2 * math.pi * j / 8 + 0.3
        assert abs(got(x) - math.cos(x) ** 2) < 1e-12


def test_multiplication_by_zero_absorbs():
    f = TrigFn(2, {1: F(3)}, {2: F(-1, 2)})
    assert ring_mul(f, TrigFn.zero()).is_zero
    assert ring_mul(PolyFn([1, 2]), PolyFn.zero()).is_zero


def test_space_mismatch_raises():
    with pytest.raises(RingMismatchError):
        ring_mul(PolyFn.x(), TrigFn.cosine(1))


def test_diff_examples():
    assert PolyFn.monomial(3).diff() == 3 * PolyFn.monomial(2)
    assert TrigFn.cosine(2).diff() == TrigFn.sine(2, -2)
    assert TrigFn.sine(1).diff(2) == TrigFn.sine(1, -1)


def test_circle_mean_examples():
    assert circle_mean(TrigFn.constant(2) + TrigFn.cosine(1)) == 2
    assert circle_mean(TrigFn.sine(3)) == 0
    with pytest.raises(UnsupportedFunctionalError):
        circle_mean(PolyFn.x())


def test_product_frequency_adds():
    f = TrigFn.cosine(2) + TrigFn.sine(1)
    g = TrigFn.sine(3)
    assert (f * g).max_frequency == 5


def test_zero_polynomial_degree_is_none():
    assert PolyFn.zero().degree is None
    assert (PolyFn([1]) - PolyFn([1])).degree is None
    assert PolyFn([0, 0, 1]).degree == 2


@settings(max_examples=60, deadline=None)
@given(elements, elements, elements)
def test_ring_axioms(f, g, h):
    if not (f.space == g.space == h.space):
        return
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f


@settings(max_examples=60, deadline=None)
@given(elements, elements)
def test_leibniz_rule(f, g):
    if f.space != g.space:
        return
    assert ring_diff(f * g) == ring_diff(f) * g + f * ring_diff(g)


@settings(max_examples=60, deadline=None)
@given(trigs())
def test_mean_of_derivative_vanishes(f):
    assert circle_mean(ring_diff(f, 1)) == 0


@settings(max_examples=30, deadline=None)
@given(trigs(), trigs())
def test_float_bridge_at_16_angles(f, g):
    prod = f * g
    for j in range(16):
        x = 2 * math.pi * j / 16
        assert abs(prod(x) - f(x) * g(x)) < 1e-9


@settings(max_examples=40, deadline=None)
@given(elements)
def test_text_round_trip(f):
    assert from_text(to_text(f)) == f


def test_text_format_shape():
    assert to_text(PolyFn([F(1, 2), 0, F(-3)])) == "poly: 1/2 + -3*x^2"
    assert to_text(TrigFn(2, {1: F(1, 3)}, {2: F(-1)})) == \
        "trig: 2 | 1:cos=1/3 ; 2:sin=-1"
    assert from_text("trig: 0") == TrigFn.zero()
