import random
from fractions import Fraction as Q

import pytest

from liecontract.errors import NonPolynomialExpansion
from liecontract.grouplaw import VectorField, left_invariant_fields, combine_fields
from liecontract.opcalc import (
    PolyDiffOperator,
    compose,
    expand_in_frame,
    comparison_coefficients,
    homogeneity_profile,
    monomial_operator,
)
from liecontract.poly import Poly, multi_indices_up_to
from liecontract import linalg


def test_leibniz_composition():
    d1 = PolyDiffOperator.partial(2, 0)
    x1_mult = PolyDiffOperator.multiplication(Poly.variable(2, 0))
    composed = compose(d1, x1_mult)
    x1 = Poly.variable(2, 0)
    assert composed.terms[(1, 0)] == x1
    assert composed.terms[(0, 0)] == Poly.constant(2, 1)


def test_identity_composition():
    ident = PolyDiffOperator.identity(2)
    op = PolyDiffOperator(2, {(1, 1): Poly.variable(2, 1)})
    assert compose(op, ident) == op and compose(ident, op) == op


def test_composition_matches_pointwise_action():
    rnd = random.Random(2)
    n = 2
    x, y = Poly.variable(n, 0), Poly.variable(n, 1)
    a = PolyDiffOperator(n, {(1, 0): x * y, (0, 2): Poly.constant(n, 1)})
    b = PolyDiffOperator(n, {(0, 1): x + y, (0, 0): y})
    ab = compose(a, b)
    for _ in range(6):
        f = Poly.zero(n)
        for e in multi_indices_up_to(n, 6):
            if rnd.random() < 0.25:
                f = f + Poly.monomial(n, e, Q(rnd.randint(-3, 3)))
        assert ab.apply(f) == a.apply(b.apply(f))


def test_associativity_of_composition():
    n = 2
    x = Poly.variable(n, 0)
    a = PolyDiffOperator(n, {(1, 0): x})
    b = PolyDiffOperator(n, {(0, 1): Poly.constant(n, 1) + x})
    c = PolyDiffOperator(n, {(1, 1): x * x})
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_monomial_operator_basics():
    frame = left_invariant_fields_for_heisenberg()
    assert monomial_operator(frame, (0, 0, 0)) == PolyDiffOperator.identity(3)
    single = monomial_operator(frame, (0, 1, 0))
    assert single == PolyDiffOperator.from_vector_field(frame[1])


def left_invariant_fields_for_heisenberg():
    from liecontract.algebra import heisenberg

    return left_invariant_fields(heisenberg())


def test_ordered_products_differ_by_commutator():
    from liecontract.algebra import heisenberg

    h = heisenberg()
    frame = left_invariant_fields(h)
    x12 = monomial_operator(frame, (1, 1, 0))
    x21 = compose(
        PolyDiffOperator.from_vector_field(frame[1]),
        PolyDiffOperator.from_vector_field(frame[0]),
    )
    diff = x12 - x21
    assert diff == PolyDiffOperator.from_vector_field(frame[2])


def test_weighted_order():
    frame = left_invariant_fields_for_heisenberg()
    op = monomial_operator(frame, (1, 0, 1))
    # support holds d1 d3 (weight 3) and x2-weighted d3^2 (weight 4)
    assert op.weighted_order((1, 1, 2)) == 4
    assert PolyDiffOperator.identity(3).weighted_order((1, 1, 2)) == 0


def test_model_expansions_both_directions(heisenberg_model_family):
    bf = heisenberg_model_family.bracket_family("local")
    frame1 = left_invariant_fields(bf.algebra_at(1))
    frame0 = left_invariant_fields(bf.limit_algebra())
    n = 3
    x1, x2, x3 = (Poly.variable(n, i) for i in range(n))
    half = Q(1, 2)

    # forward: the parameter-1 fields against the flat frame
    forward = [
        expand_in_frame(PolyDiffOperator.from_vector_field(frame1[j]), frame0)
        for j in range(3)
    ]
    assert forward[0] == {(1, 0, 0): 1 - half * x2, (0, 0, 1): -half * x2}
    assert forward[1] == {
        (0, 1, 0): Poly.constant(n, 1),
        (1, 0, 0): half * (x1 - x3),
        (0, 0, 1): half * (x1 - x3),
    }
    assert forward[2] == {(0, 0, 1): 1 + half * x2, (1, 0, 0): half * x2}

    # inverse: the flat fields against the parameter-1 frame
    inverse = [
        expand_in_frame(PolyDiffOperator.from_vector_field(frame0[j]), frame1)
        for j in range(3)
    ]
    assert inverse[0] == {(1, 0, 0): 1 + half * x2, (0, 0, 1): half * x2}
    assert inverse[1] == {
        (0, 1, 0): Poly.constant(n, 1),
        (1, 0, 0): -half * (x1 - x3),
        (0, 0, 1): -half * (x1 - x3),
    }
    assert inverse[2] == {(0, 0, 1): 1 - half * x2, (1, 0, 0): -half * x2}


def test_identical_frames_expand_trivially():
    frame = left_invariant_fields_for_heisenberg()
    for gamma in multi_indices_up_to(3, 2):
        coeffs = comparison_coefficients(frame, frame, gamma)
        assert coeffs == {}


def test_round_trip_reconstruction(heisenberg_model_family):
    bf = heisenberg_model_family.bracket_family("local")
    frame1 = left_invariant_fields(bf.algebra_at(1))
    frame0 = left_invariant_fields(bf.limit_algebra())
    for gamma in multi_indices_up_to(3, 2):
        if sum(gamma) == 0:
            continue
        op = monomial_operator(frame1, gamma)
        coeffs = expand_in_frame(op, frame0)
        recon = PolyDiffOperator.zero(3)
        for gp, p in coeffs.items():
            recon = recon + monomial_operator(frame0, gp).scale(p)
        assert recon == op


def test_degree_ledger_and_diagonal_vanishing(heisenberg_model_family):
    bf = heisenberg_model_family.bracket_family("local")
    frame1 = left_invariant_fields(bf.algebra_at(1))
    frame0 = left_invariant_fields(bf.limit_algebra())
    degrees = bf.degrees
    for gamma in multi_indices_up_to(3, 2):
        if sum(gamma) == 0:
            continue
        d_gamma = sum(g * d for g, d in zip(gamma, degrees))
        comp = comparison_coefficients(frame1, frame0, gamma)
        for gp, poly in comp.items():
            d_gp = sum(g * d for g, d in zip(gp, degrees))
            for degree, _ in homogeneity_profile(poly, degrees):
                assert degree > d_gp - d_gamma
            if gp == tuple(gamma):
                assert poly.constant_term() == 0


def test_homogeneity_profile_basics():
    p = Poly.constant(3, 5)
    assert homogeneity_profile(p, (1, 1, 1)) == [(0, p)]
    x2 = Poly.variable(3, 1)
    assert homogeneity_profile(x2, (1, 1, 1)) == [(1, x2)]
    mixed = x2 + x2 * x2
    profile = dict(homogeneity_profile(mixed, (1, 1, 1)))
    assert set(profile) == {1, 2}


def test_nonpolynomial_frame_rejected():
    # a frame whose coefficient matrix is singular at the origin cannot
    # come from a group law; the solve must refuse rather than loop
    bad = [
        VectorField((Poly.variable(2, 0), Poly.zero(2))),
        VectorField((Poly.zero(2), Poly.constant(2, 1))),
    ]
    op = PolyDiffOperator.partial(2, 0)
    with pytest.raises(NonPolynomialExpansion):
        expand_in_frame(op, bad)
