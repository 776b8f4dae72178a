from fractions import Fraction as Q

import pytest

from liecontract import linalg
from liecontract.algebra import (
    GradedLieAlgebra,
    LieAlgebra,
    Subspace,
    abelian,
    filiform,
    heisenberg,
    heisenberg_times_line,
)
from liecontract.errors import GradingRequired, NotAnIdeal


def test_defining_relation_and_antisymmetry():
    h = heisenberg()
    e1, e2 = linalg.unit_vec(3, 0), linalg.unit_vec(3, 1)
    assert h.bracket(e1, e2) == (0, 0, 1)
    x = (Q(2), Q(-1), Q(7))
    assert linalg.is_zero_vec(h.bracket(x, x))


def test_model_bracket_family_relations():
    # generic-fiber brackets of the worked model, frozen from the projection
    # of the first bracket: [e1,e2] = e1 + e3, [e1,e3] = 0, [e2,e3] = e1 + e3
    alg = LieAlgebra(3, {(0, 1): {0: 1, 2: 1}, (1, 2): {0: 1, 2: 1}})
    e = [linalg.unit_vec(3, i) for i in range(3)]
    assert alg.bracket(e[0], e[1]) == (1, 0, 1)
    assert alg.bracket(e[0], e[2]) == (0, 0, 0)
    assert alg.bracket(e[1], e[2]) == (1, 0, 1)


def test_construction_rejects_bad_tables():
    with pytest.raises(ValueError):
        LieAlgebra(3, {(0, 0): {1: 1}})  # [e1,e1] != 0
    with pytest.raises(ValueError):
        # fails Jacobi: [e1,[e2,e3]] = e2 circularly
        LieAlgebra(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}})
    with pytest.raises(ValueError):
        GradedLieAlgebra(3, {(0, 1): {2: 1}}, (1, 1, 3))  # grading violated
    with pytest.raises(ValueError):
        # sl2-like table is not nilpotent
        LieAlgebra(3, {(0, 1): {0: 2}, (0, 2): {1: 1}, (1, 2): {2: 2}})


def test_dilations():
    h = heisenberg()
    assert h.dilate(2, (1, 1, 1)) == (2, 2, 4)
    x = (Q(3), Q(-1), Q(5))
    assert h.dilate(1, x) == x
    assert h.dilate(2, h.dilate(Q(1, 2), x)) == x


def test_lower_central_series_and_growth():
    h = heisenberg()
    series = h.lower_central_series()
    assert [s.dim for s in series] == [3, 1]
    assert series[1].basis == (linalg.unit_vec(3, 2),)
    assert abelian(3).lower_central_series()[0].dim == 3
    hr = heisenberg_times_line()
    assert [s.dim for s in hr.lower_central_series()] == [4, 1]
    assert h.growth_dimension() == 4
    assert abelian(3).growth_dimension() == 3
    assert hr.growth_dimension() == 5


def test_homogeneous_dimension():
    assert heisenberg().homogeneous_dimension() == 4
    hr = heisenberg_times_line((1, 1, 2, 3))
    assert hr.homogeneous_dimension() == 7
    quotient, _ = hr.quotient(Subspace(hr, [linalg.unit_vec(4, 3)]))
    assert quotient.homogeneous_dimension() == 4


def test_growth_vs_dimension_inequality():
    for alg in (heisenberg(), abelian(4), filiform(3), heisenberg_times_line()):
        assert alg.growth_dimension() >= alg.dim
        assert (alg.growth_dimension() == alg.dim) == alg.is_abelian()


def test_quotients_by_the_two_lines():
    hr = heisenberg_times_line((1, 1, 2, 3))
    # mod the central line: a Heisenberg algebra again
    q_u, proj_u = hr.quotient(Subspace(hr, [linalg.unit_vec(4, 3)]))
    assert q_u.dim == 3 and q_u.degrees == (1, 1, 2)
    assert q_u.bracket(linalg.unit_vec(3, 0), linalg.unit_vec(3, 1)) == (0, 0, 1)
    # mod the bracket direction: the abelian quotient
    q_t, _ = hr.quotient(Subspace(hr, [linalg.unit_vec(4, 2)]))
    assert q_t.is_abelian() and q_t.dim == 3
    # mod zero: unchanged
    q_z, _ = hr.quotient(Subspace(hr, []))
    assert q_z == hr


def test_quotient_commutes_with_projection():
    hr = heisenberg_times_line((1, 1, 2, 3))
    ideal = Subspace(hr, [linalg.unit_vec(4, 3)])
    quotient, proj = hr.quotient(ideal)
    x = (Q(1), Q(2), Q(3), Q(4))
    y = (Q(-1), Q(1), Q(0), Q(2))
    lhs = linalg.mat_vec(proj, hr.bracket(x, y))
    rhs = quotient.bracket(linalg.mat_vec(proj, x), linalg.mat_vec(proj, y))
    assert lhs == rhs


def test_quotient_by_nongraded_ideal_is_flagged():
    hr = heisenberg_times_line((1, 1, 2, 3))
    diag = Subspace(hr, [(Q(0), Q(0), Q(1), Q(-1))])
    quotient, _ = hr.quotient(diag)
    assert not quotient.is_graded
    with pytest.raises(GradingRequired):
        from liecontract.algebra import homogeneous_dimension

        homogeneous_dimension(quotient)


def test_quotient_requires_ideal():
    h = heisenberg()
    with pytest.raises(NotAnIdeal):
        h.quotient(Subspace(h, [linalg.unit_vec(3, 0)]))


def test_subspace_canonical_equality():
    h = heisenberg()
    a = Subspace(h, [(Q(1), Q(1), Q(0)), (Q(0), Q(2), Q(0))])
    b = Subspace(h, [(Q(0), Q(1), Q(0)), (Q(3), Q(0), Q(0))])
    assert a == b
    assert a.basis == (linalg.unit_vec(3, 0), linalg.unit_vec(3, 1))


def test_gradedness_and_homogeneous_basis():
    hr = heisenberg_times_line((1, 1, 2, 3))
    graded = Subspace(hr, [(Q(1), Q(2), Q(0), Q(0)), (Q(0), Q(0), Q(1), Q(0))])
    assert graded.is_graded()
    diag = Subspace(hr, [(Q(0), Q(0), Q(1), Q(-1))])
    assert not diag.is_graded()


def test_stratified_detection():
    assert heisenberg().is_stratified()
    assert not heisenberg((2, 2, 4)).is_stratified()
    assert abelian(2).is_stratified()
    assert not abelian(2, (1, 2)).is_stratified()


def test_center_and_generated_ideal():
    h = heisenberg()
    assert h.center().basis == (linalg.unit_vec(3, 2),)
    gen = h.ideal_generated_by([linalg.unit_vec(3, 0)])
    assert gen.dim == 2  # e1 and the bracket direction
