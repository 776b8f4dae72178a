from fractions import Fraction as Q

import pytest

from liecontract import linalg
from liecontract.errors import StepTooLarge
from liecontract.freenilpotent import free_nilpotent, lyndon_words, standard_factorization


@pytest.mark.parametrize(
    "gens,step,dim",
    [
        ((1, 1), 2, 3),  # one bracket: the Heisenberg algebra
        ((1, 1, 1), 2, 6),  # the worked six-dimensional model
        ((1, 1), 3, 5),  # 2 + 1 + 2 Lyndon words
        ((1, 1), 4, 8),
        ((1, 1, 1), 3, 14),
    ],
)
def test_dimensions(gens, step, dim):
    assert free_nilpotent(gens, step).dim == dim


def test_step_bound():
    with pytest.raises(StepTooLarge):
        free_nilpotent((1, 1), 7)


def test_lyndon_machinery():
    words = lyndon_words(2, 3)
    assert (0,) in words and (0, 1) in words and (0, 0, 1) in words
    assert (1, 0) not in words
    assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert standard_factorization((0, 1, 1)) == ((0, 1), (1,))


def test_heisenberg_case_structure():
    alg = free_nilpotent((1, 1), 2)
    assert alg.degrees == (1, 1, 2)
    assert alg.bracket(linalg.unit_vec(3, 0), linalg.unit_vec(3, 1)) == (0, 0, 1)


def test_weighted_generators():
    alg = free_nilpotent((1, 2), 3)
    # words: (0), (1), (01), (001), (011); weights 1, 2, 3, 4, 5
    assert alg.degrees == (1, 2, 3, 4, 5)
    assert alg.generator_indices == (0, 1)


def test_marked_generators_and_grading(free_two_step):
    assert free_two_step.generator_indices == (0, 1, 2)
    assert free_two_step.degrees == (1, 1, 1, 2, 2, 2)
    # brackets of generators expand exactly in the Lyndon basis
    e = [linalg.unit_vec(6, i) for i in range(6)]
    assert free_two_step.bracket(e[0], e[1])[3] == 1
    assert free_two_step.bracket(e[0], e[2])[4] == 1
    assert free_two_step.bracket(e[1], e[2])[5] == 1


def test_step3_jacobi_is_exact():
    alg = free_nilpotent((1, 1), 4)
    e0, e1 = linalg.unit_vec(8, 0), linalg.unit_vec(8, 1)
    # ad-nilpotency along the grading: quadruple brackets vanish
    v = alg.bracket(e0, alg.bracket(e0, alg.bracket(e0, alg.bracket(e0, e1))))
    assert linalg.is_zero_vec(v)
