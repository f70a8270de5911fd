from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffindex.diffpoly import DiffPolynomial, DiffVariable, Monomial, partial, system_metadata, transform
from diffindex.parser import parse_polynomial

V3 = ["y1", "y2", "y3"]


def P(text, names=V3):
    return parse_polynomial(text, names)


variables = st.builds(DiffVariable, st.integers(1, 3), st.integers(0, 3))
monomials = st.dictionaries(variables, st.integers(1, 3), max_size=3).map(Monomial)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(monomials, coeffs, max_size=4).map(DiffPolynomial)


def test_transform_examples():
    assert transform(P("y1 + y2 - 1"), 2) == P("y1^(2) + y2^(2) - 1")
    assert transform(P("y1^(1) - y1*y3"), 1) == P("y1^(2) - y1^(1)*y3^(1)")
    for k in range(4):
        assert transform(DiffPolynomial.constant(Fraction(5, 3)), k) == Fraction(5, 3)


def test_transform_rejects_negative():
    with pytest.raises(ValueError):
        transform(P("y1"), -1)


def test_partial_examples():
    f = P("y1^(1) - y1*y3")
    assert partial(f, DiffVariable(1, 1)) == 1
    assert partial(f, DiffVariable(3, 0)) == P("-y1")
    assert partial(P("y1 + y2 - 1"), DiffVariable(3, 0)).is_zero()


def test_partial_power_rule():
    assert partial(P("3/2*y2^(4)^3"), DiffVariable(2, 4)) == P("9/2*y2^(4)^2")


def test_variable_order_and_validation():
    assert DiffVariable(3, 0) < DiffVariable(1, 1)
    assert DiffVariable(1, 2) < DiffVariable(2, 2)
    with pytest.raises(ValueError):
        DiffVariable(0, 0)
    with pytest.raises(ValueError):
        DiffVariable(1, -1)


def test_orders_and_degree():
    f = P("y1^(2)*y3 - y2^(1)^3 + 4")
    assert f.order() == 2
    assert f.order_in(1) == 2
    assert f.order_in(2) == 1
    assert f.order_in(3) == 0
    assert f.degree() == 3
    assert DiffPolynomial().degree() == -1


def test_system_metadata_golden():
    F = [P("y1^(1) - y1*y3"), P("y2^(1) - y2*y3"), P("y1 + y2 - 1")]
    s = system_metadata(F, 3)
    assert s.e == 1
    assert s.E0 == ((1, 0, 0), (0, 1, 0), (0, 0, 0))
    assert s.orders == (1, 1, 0)


def test_system_metadata_small():
    s = system_metadata([P("y1^(1) - y1", ["y1"])], 1)
    assert (s.e, s.E0) == (1, ((1,),))


def test_system_metadata_second_order():
    # ord scan by hand: f1 has y1 at order 2 and y2 at order 0;
    # f2 has y2 at order 1 and y1 at order 0
    s = system_metadata([P("y1^(2) - y2", ["y1", "y2"]), P("y2^(1) - y1", ["y1", "y2"])], 2)
    assert s.e == 2
    assert s.orders == (2, 1)
    assert s.E0 == ((2, 0), (0, 1))


def test_system_metadata_errors():
    with pytest.raises(ValueError, match="no transform"):
        system_metadata([P("y1 + y2")], 3)
    with pytest.raises(ValueError, match="more equations"):
        system_metadata([P("y1^(1)", ["y1"]), P("y1", ["y1"])], 1)
    with pytest.raises(ValueError):
        system_metadata([], 1)
    with pytest.raises(ValueError, match="constant"):
        system_metadata([P("y1^(1)"), DiffPolynomial.constant(2)], 3)


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f
    assert f * g == g * f
    assert f - f == 0
    # canonical form: equal values have equal term maps and hashes
    assert hash((f + g) - g) == hash(f)
    assert dict((f + g - g).terms) == dict(f.terms)


@given(polys, polys, st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=60, deadline=None)
def test_transform_is_endomorphism(f, g, a, b):
    assert transform(f * g, a) == transform(f, a) * transform(g, a)
    assert transform(f + g, a) == transform(f, a) + transform(g, a)
    assert transform(transform(f, a), b) == transform(f, a + b)
    assert transform(f, 0) == f


@given(polys, st.integers(1, 3), st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=60, deadline=None)
def test_partial_commutes_with_transform(f, j, q, k):
    lhs = partial(transform(f, k), DiffVariable(j, q + k))
    rhs = transform(partial(f, DiffVariable(j, q)), k)
    assert lhs == rhs


@given(polys, st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_transform_shifts_order(f, k):
    if not f.is_constant():
        assert transform(f, k).order() == f.order() + k
