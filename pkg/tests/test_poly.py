from fractions import Fraction as Q

import pytest

from liecontract.poly import LaurentPoly, Poly, all_multi_indices, poly_exact_div


def test_poly_ring_basics():
    x = Poly.variable(2, 0)
    y = Poly.variable(2, 1)
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert (p - p).is_zero()
    assert (x + 1) ** 3 == x ** 3 + 3 * x ** 2 + 3 * x + 1
    assert p.eval((Q(3), Q(2))) == Q(5)


def test_poly_zero_terms_dropped():
    x = Poly.variable(1, 0)
    p = x - x
    assert p.terms == {}
    assert Poly(1, {(2,): Q(0)}).is_zero()


def test_poly_diff_and_subs():
    x = Poly.variable(2, 0)
    y = Poly.variable(2, 1)
    p = x ** 2 * y + 3 * y
    assert p.diff(0) == 2 * x * y
    assert p.diff(1) == x ** 2 + 3
    # substitute x -> u+v, y -> u*v over new variables
    u = Poly.variable(2, 0)
    v = Poly.variable(2, 1)
    q = p.subs([u + v, u * v])
    assert q == (u + v) ** 2 * (u * v) + 3 * u * v


def test_weighted_components():
    x = Poly.variable(2, 0)
    y = Poly.variable(2, 1)
    p = x * y + x ** 3 + y
    comps = p.weighted_components((1, 2))
    assert set(comps) == {2, 3}
    assert comps[3] == x * y + x ** 3
    assert p.min_weighted_degree((1, 2)) == 2
    assert p.is_weighted_homogeneous((1, 1), 5) is False


def test_exact_division():
    x = Poly.variable(2, 0)
    y = Poly.variable(2, 1)
    num = (x + y) ** 2 * (x - 2 * y)
    assert poly_exact_div(num, x + y) == (x + y) * (x - 2 * y)
    assert poly_exact_div(num, x * y + 1) is None


def test_laurent_arithmetic():
    s = LaurentPoly.term(1)
    inv = LaurentPoly.term(-1)
    assert s * inv == LaurentPoly.constant(1)
    p = 2 * s + LaurentPoly.term(-2, Q(1, 3))
    assert p.eval(Q(2)) == Q(4) + Q(1, 12)
    assert p.min_degree() == -2 and p.max_degree() == 1
    with pytest.raises(ZeroDivisionError):
        inv.eval(0)


def test_multi_indices():
    assert all_multi_indices(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert len(all_multi_indices(3, 2)) == 6
