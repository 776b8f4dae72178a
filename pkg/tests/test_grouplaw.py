import random
from fractions import Fraction as Q

import pytest

from liecontract import linalg
from liecontract.algebra import abelian, filiform, heisenberg
from liecontract.errors import StepTooLarge
from liecontract.freenilpotent import free_nilpotent
from liecontract.grouplaw import (
    bch_product,
    bch_word_coefficients,
    bracket_field,
    combine_fields,
    group_jacobian_determinant,
    group_law_map,
    homogeneous_norm,
    left_invariant_fields,
    surrogate_modulus,
)
from liecontract.poly import Poly


def test_word_coefficients_low_order():
    coeffs = bch_word_coefficients(3)
    # first order: the two letters themselves
    assert coeffs[(0,)] == 1 and coeffs[(1,)] == 1
    # second order: 1/4 each on the two bracketing words -> 1/2 [x, y]
    assert coeffs[(0, 1)] == Q(1, 4) and coeffs[(1, 0)] == Q(-1, 4)


def test_two_step_truncation():
    h = heisenberg()
    e1, e2 = linalg.unit_vec(3, 0), linalg.unit_vec(3, 1)
    assert bch_product(h, e1, e2) == (1, 1, Q(1, 2))
    x = (Q(2), Q(3), Q(-1))
    assert bch_product(h, x, tuple(-c for c in x)) == (0, 0, 0)


def test_filiform_second_order_product():
    f2 = filiform(2)
    a, b = Q(3), Q(-7)
    assert bch_product(f2, (a, 0, 0), (0, b, 0)) == (a, b, a * b / 2)


def test_third_order_coefficients_via_free_algebra():
    alg = free_nilpotent((1, 1), 3)
    z = bch_product(alg, linalg.unit_vec(5, 0), linalg.unit_vec(5, 1))
    # basis: x, y, [x,y], [x,[x,y]], [[x,y],y]
    assert z == (1, 1, Q(1, 2), Q(1, 12), Q(1, 12))


@pytest.mark.parametrize("gens,step", [((1, 1), 4), ((1, 1), 5), ((1, 1, 1), 3)])
def test_associativity_random(gens, step):
    alg = free_nilpotent(gens, step)
    rnd = random.Random(step)
    for _ in range(8):
        x, y, z = (
            tuple(Q(rnd.randint(-2, 2), rnd.randint(1, 2)) for _ in range(alg.dim))
            for _ in range(3)
        )
        assert bch_product(alg, bch_product(alg, x, y), z) == bch_product(
            alg, x, bch_product(alg, y, z)
        )


def test_step_six_smoke():
    alg = free_nilpotent((1, 1), 6)
    x = tuple(Q(1) if i == 0 else Q(0) for i in range(alg.dim))
    y = tuple(Q(1) if i == 1 else Q(0) for i in range(alg.dim))
    z = bch_product(alg, x, y)
    assert z[2] == Q(1, 2)
    lhs = bch_product(alg, bch_product(alg, x, y), x)
    rhs = bch_product(alg, x, bch_product(alg, y, x))
    assert lhs == rhs


def test_group_law_map_identities():
    for alg in (heisenberg(), filiform(3)):
        n = alg.dim
        m = group_law_map(alg)
        x = [Poly.variable(n, i) for i in range(n)]
        zero = [Poly.zero(n) for _ in range(n)]
        assert m.subs(x + zero).components == tuple(x)
        assert m.subs(zero + x).components == tuple(x)
        assert all(c.is_zero() for c in m.subs(x + [-p for p in x]).components)


def test_group_law_associativity_symbolic():
    alg = heisenberg()
    n = alg.dim
    m = group_law_map(alg)
    x = [Poly.variable(3 * n, i) for i in range(n)]
    y = [Poly.variable(3 * n, n + i) for i in range(n)]
    z = [Poly.variable(3 * n, 2 * n + i) for i in range(n)]
    inner_xy = list(m.subs(x + y).components)
    inner_yz = list(m.subs(y + z).components)
    assert m.subs(inner_xy + z) == m.subs(x + inner_yz)


def test_heisenberg_third_coordinate():
    m = group_law_map(heisenberg())
    x1, x2, x3, y1, y2, y3 = (Poly.variable(6, i) for i in range(6))
    assert m.components[2] == x3 + y3 + Q(1, 2) * (x1 * y2 - x2 * y1)


def test_abelian_frame_and_law():
    alg = abelian(3)
    m = group_law_map(alg)
    x = [Poly.variable(6, i) for i in range(3)]
    y = [Poly.variable(6, 3 + i) for i in range(3)]
    assert m.components == tuple(a + b for a, b in zip(x, y))
    for j, f in enumerate(left_invariant_fields(alg)):
        assert f.coefficients[j] == Poly.constant(3, 1)


def test_model_frame_formulas(heisenberg_model_family):
    # the worked model at parameter 1: the three displayed frame fields
    bf = heisenberg_model_family.bracket_family("local")
    frame = left_invariant_fields(bf.algebra_at(1))
    n = 3
    x1, x2, x3 = (Poly.variable(n, i) for i in range(n))
    one = Poly.constant(n, 1)
    half = Q(1, 2)
    assert frame[0].coefficients == (one - half * x2, Poly.zero(n), -half * x2)
    assert frame[1].coefficients == (
        half * (x1 - x3),
        one,
        half * (x1 - x3),
    )
    assert frame[2].coefficients == (half * x2, Poly.zero(n), one + half * x2)


def test_frame_is_invertible_at_every_point():
    for alg in (heisenberg(), filiform(3)):
        det_y = group_jacobian_determinant(alg, "y")
        det_x = group_jacobian_determinant(alg, "x")
        one = Poly.constant(2 * alg.dim, 1)
        assert det_y == one and det_x == one


def test_frame_homogeneity():
    alg = filiform(3)  # degrees (1, 1, 2, 3)
    frame = left_invariant_fields(alg)
    for j, f in enumerate(frame):
        for k, coeff in enumerate(f.coefficients):
            if coeff.is_zero():
                continue
            target = alg.degrees[k] - alg.degrees[j]
            assert coeff.is_weighted_homogeneous(alg.degrees, target)


def test_frame_commutators_match_brackets():
    alg = filiform(3)
    frame = left_invariant_fields(alg)
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            expected = combine_fields(
                frame, alg.bracket(linalg.unit_vec(alg.dim, i), linalg.unit_vec(alg.dim, j))
            )
            assert bracket_field(frame[i], frame[j]) == expected


def test_step_bound_raises():
    # a chain algebra one past the supported truncation depth
    with pytest.raises(StepTooLarge):
        alg = filiform(7)
        bch_product(alg, linalg.unit_vec(8, 0), linalg.unit_vec(8, 1))


def test_homogeneous_norm_axioms():
    degrees = (1, 1, 2)
    rnd = random.Random(5)
    for _ in range(20):
        v = tuple(Q(rnd.randint(-8, 8), rnd.randint(1, 4)) for _ in range(3))
        n_v = homogeneous_norm(degrees, v)
        assert n_v >= 0
        for r in (2, Q(1, 2)):
            scaled = tuple(Q(r) ** d * c for d, c in zip(degrees, v))
            assert abs(homogeneous_norm(degrees, scaled) - float(r) * n_v) < 1e-12


def test_surrogate_modulus(hr_family_heavy_line):
    fam = hr_family_heavy_line
    assert surrogate_modulus(fam, 1, (0, 0, 0, 0)) == 0.0
    x = (Q(1), Q(-2), Q(3), Q(1))
    base = surrogate_modulus(fam, 1, x)
    assert base > 0
    for r in (2, Q(1, 2)):
        scaled = fam.ambient.dilate(r, x)
        assert abs(surrogate_modulus(fam, 1, scaled) - float(r) * base) < 1e-12


def test_surrogate_equals_norm_for_graded_ideal():
    from liecontract.algebra import heisenberg_times_line
    from liecontract.contraction import ContractionFamily
    from liecontract.algebra import Subspace

    hr = heisenberg_times_line((1, 1, 2, 3))
    fam = ContractionFamily(hr, Subspace(hr, [linalg.unit_vec(4, 3)]))
    x = (Q(2), Q(1), Q(-1), Q(0))  # a point of the complement
    assert abs(
        surrogate_modulus(fam, 1, x) - homogeneous_norm(hr.degrees, x)
    ) < 1e-12
