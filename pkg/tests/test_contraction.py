import random
from fractions import Fraction as Q

import pytest

from liecontract import linalg
from liecontract.algebra import Subspace, heisenberg, heisenberg_times_line
from liecontract.contraction import (
    ContractionFamily,
    ParamMatrix,
    contract_global,
    contract_local,
    is_strictly_subhomogeneous,
    is_strictly_superhomogeneous,
    jacobi_holds_symbolically,
    lambda_map,
    projections,
    satisfies_bracket_scaling,
    satisfies_projection_scaling,
)
from liecontract.errors import NotAnIdeal
from liecontract.poly import LaurentPoly
from conftest import vec6


def test_local_limit_is_derived_subalgebra(free_two_step, heisenberg_model_family):
    fam = heisenberg_model_family
    derived = free_two_step.derived_subalgebra()
    assert fam.i0 == derived
    assert fam.i0.dim == 3


def test_global_limit_of_model(free_two_step, heisenberg_model_family):
    expected = Subspace(
        free_two_step,
        [vec6(X1=1, X3=1), vec6(Y12=1, Y23=-1), vec6(Y13=1)],
    )
    assert heisenberg_model_family.iInf == expected


def test_hr_limit_lines(hr_family_heavy_line, hr_family_light_line):
    # weights (1,1,2,3): the heavier line U is the local limit direction
    fam = hr_family_heavy_line
    assert fam.i0.basis == (linalg.unit_vec(4, 3),)
    assert fam.iInf.basis == (linalg.unit_vec(4, 2),)
    # weights (1,1,2,1): the roles swap
    fam = hr_family_light_line
    assert fam.i0.basis == (linalg.unit_vec(4, 2),)
    assert fam.iInf.basis == (linalg.unit_vec(4, 3),)


def test_graded_ideal_contracts_to_itself():
    hr = heisenberg_times_line((1, 1, 2, 3))
    graded = Subspace(hr, [linalg.unit_vec(4, 3)])
    i0, _, psi0 = contract_local(hr, graded)
    iinf, _, psiinf = contract_global(hr, graded)
    assert i0 == graded and iinf == graded
    assert psi0.is_zero() and psiinf.is_zero()


def test_degenerate_ideals():
    h = heisenberg()
    zero = ContractionFamily(h, Subspace(h, []))
    assert zero.i0.dim == 0 and zero.iInf.dim == 0
    full = ContractionFamily(h, Subspace.full(h))
    assert full.i0.dim == 3 and full.iInf.dim == 3


def test_rejects_non_ideal():
    h = heisenberg()
    with pytest.raises(NotAnIdeal):
        contract_local(h, Subspace(h, [linalg.unit_vec(3, 0)]))


def test_flag_breakpoints(heisenberg_model_family):
    flag = heisenberg_model_family.flag0
    assert flag.breakpoints == (0, 3)
    assert len(flag) == 3
    assert flag.extremal_degrees == (2, 2, 2)


def test_psi_formula_on_flag(heisenberg_model_family):
    # psi at parameter 1 sends each top part to the lower parts of its flag vector
    fam = heisenberg_model_family
    psi_at_1 = fam.psi0.eval(Q(1))
    image = linalg.mat_vec(psi_at_1, vec6(Y12=1))
    assert image == vec6(X1=-1, X3=-1)
    assert linalg.is_zero_vec(linalg.mat_vec(psi_at_1, vec6(Y13=1)))


def test_correction_bijection_onto_dilated_ideal(heisenberg_model_family, free_two_step):
    fam = heisenberg_model_family
    for s in (Q(1, 2), Q(1), Q(3)):
        mat = fam.psi0.eval(s)
        lifted = []
        for b in fam.i0.basis:
            lifted.append(linalg.vec_add(b, linalg.mat_vec(mat, b)))
        assert Subspace(free_two_step, lifted) == fam.ideal_at(s)


def test_projection_properties(hr_family_heavy_line):
    fam = hr_family_heavy_line
    p0 = projections(fam, "local")
    # the U column picks up the parameter: P(U) = s T (hand solve at s = 1)
    assert p0[2, 3] == LaurentPoly.term(1)
    assert p0[3, 3].is_zero()
    # kernel test at sampled parameters
    for s in (Q(1), Q(2), Q(1, 3)):
        mat = p0.eval(s)
        for b in fam.ideal_at(s).basis:
            assert linalg.is_zero_vec(linalg.mat_vec(mat, b))
    # constant part projects onto the complement along the limit ideal
    const = p0.constant_part()
    assert const[2][2] == 1 and const[3][3] == 0
    assert satisfies_projection_scaling(p0, (1, 1, 2, 3))
    assert satisfies_projection_scaling(projections(fam, "global"), (1, 1, 2, 3))


def test_projection_idempotent_at_samples(heisenberg_model_family):
    p0 = heisenberg_model_family.P0
    for s in (Q(1, 2), Q(1), Q(2)):
        mat = p0.eval(s)
        assert linalg.mat_mul(mat, mat) == mat


def test_homogeneity_ledger(heisenberg_model_family, free_two_step):
    fam = heisenberg_model_family
    degrees = free_two_step.degrees
    assert is_strictly_subhomogeneous(fam.psi0, degrees)
    assert is_strictly_superhomogeneous(fam.psiInf, degrees)
    sub = fam.P0 - ParamMatrix.from_constant(fam.P0.constant_part())
    sup = fam.PInf - ParamMatrix.from_constant(fam.PInf.constant_part())
    assert is_strictly_subhomogeneous(sub, degrees)
    assert is_strictly_superhomogeneous(sup, degrees)


def test_lambda_properties(hr_family_heavy_line):
    fam = hr_family_heavy_line
    lam, lam_inv = lambda_map(fam)
    assert lam @ lam_inv == ParamMatrix.identity(3)
    # x - lambda_s(x) lies in the dilated ideal, for x in the first complement
    for s in (Q(1), Q(2), Q(1, 2)):
        mat_full = fam.PInf.eval(s)
        moved = fam.ideal_at(s)
        for c in fam.h0_coords:
            x = linalg.unit_vec(4, c)
            lam_x = linalg.mat_vec(mat_full, x)
            assert moved.contains(linalg.vec_sub(x, lam_x))


def test_lambda_constant_for_graded_ideal():
    hr = heisenberg_times_line((1, 1, 2, 3))
    fam = ContractionFamily(hr, Subspace(hr, [linalg.unit_vec(4, 3)]))
    lam, _ = lambda_map(fam)
    assert all(
        e.is_zero() or (e.min_degree() == 0 and e.max_degree() == 0)
        for row in lam.rows
        for e in row
    )


def test_lambda_intertwines_random_triples(heisenberg_model_family):
    fam = heisenberg_model_family
    lam = fam.lambda_matrix()
    bf_local = fam.bracket_family("local")
    bf_global = fam.bracket_family("global")
    rnd = random.Random(11)
    for _ in range(50):
        s = Q(rnd.randint(1, 9), rnd.randint(1, 9))
        mat = lam.eval(s)
        x = tuple(Q(rnd.randint(-4, 4)) for _ in range(3))
        y = tuple(Q(rnd.randint(-4, 4)) for _ in range(3))
        lhs = linalg.mat_vec(mat, bf_local.algebra_at(s).bracket(x, y))
        rhs = bf_global.algebra_at(s).bracket(
            linalg.mat_vec(mat, x), linalg.mat_vec(mat, y)
        )
        assert lhs == rhs


def test_bracket_family_values(heisenberg_model_family):
    bf = heisenberg_model_family.bracket_family("local")
    alg1 = bf.algebra_at(1)
    e = [linalg.unit_vec(3, i) for i in range(3)]
    assert alg1.bracket(e[0], e[1]) == (1, 0, 1)
    assert alg1.bracket(e[0], e[2]) == (0, 0, 0)
    assert alg1.bracket(e[1], e[2]) == (1, 0, 1)
    assert bf.limit_algebra().is_abelian()
    assert jacobi_holds_symbolically(bf)
    assert satisfies_bracket_scaling(bf)
    # the generic fiber has growth dimension 4: a Heisenberg-type algebra
    assert alg1.growth_dimension() == 4


def test_bracket_scaling_by_evaluation(heisenberg_model_family):
    bf = heisenberg_model_family.bracket_family("local")
    amb = heisenberg_model_family.ambient
    degrees = bf.degrees
    rnd = random.Random(3)
    for _ in range(10):
        r = Q(rnd.randint(1, 5), rnd.randint(1, 5))
        s = Q(rnd.randint(1, 5), rnd.randint(1, 5))
        x = tuple(Q(rnd.randint(-3, 3)) for _ in range(3))
        y = tuple(Q(rnd.randint(-3, 3)) for _ in range(3))
        dil = lambda rr, v: tuple(rr ** d * c for d, c in zip(degrees, v))
        lhs = dil(r, bf.algebra_at(s).bracket(x, y))
        rhs = bf.algebra_at(s / r).bracket(dil(r, x), dil(r, y))
        assert lhs == rhs
