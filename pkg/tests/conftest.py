import sys
from fractions import Fraction as Q
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import pytest

from liecontract.algebra import Subspace, heisenberg_times_line
from liecontract.contraction import ContractionFamily
from liecontract.freenilpotent import free_nilpotent

NAMES_2STEP3 = {"X1": 0, "X2": 1, "X3": 2, "Y12": 3, "Y13": 4, "Y23": 5}


def vec6(**kw):
    out = [Q(0)] * 6
    for key, val in kw.items():
        out[NAMES_2STEP3[key]] = Q(val)
    return tuple(out)


@pytest.fixture(scope="session")
def free_two_step():
    """Free 2-step algebra on three unit-weight generators."""
    return free_nilpotent((1, 1, 1), 2)


@pytest.fixture(scope="session")
def heisenberg_model_family(free_two_step):
    """The worked model: an ideal whose generic fiber is the Heisenberg group.

    The ideal is spanned by the first bracket minus the first-plus-third
    generators, the second bracket, and the third bracket minus the same
    combination; its local limit is the derived subalgebra.
    """
    ideal = Subspace(
        free_two_step,
        [
            vec6(Y12=1, X1=-1, X3=-1),
            vec6(Y13=1),
            vec6(Y23=1, X1=-1, X3=-1),
        ],
    )
    return ContractionFamily(free_two_step, ideal)


@pytest.fixture(scope="session")
def hr_family_heavy_line():
    """Heisenberg-times-line with weights (1,1,2,3), ideal span(T - U)."""
    alg = heisenberg_times_line((1, 1, 2, 3))
    return ContractionFamily(alg, Subspace(alg, [(Q(0), Q(0), Q(1), Q(-1))]))


@pytest.fixture(scope="session")
def hr_family_light_line():
    """Heisenberg-times-line with weights (1,1,2,1), ideal span(T - U)."""
    alg = heisenberg_times_line((1, 1, 2, 1))
    return ContractionFamily(alg, Subspace(alg, [(Q(0), Q(0), Q(1), Q(-1))]))
