import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qhoch import (build_algebra, formal_algebra,
                   quantum_coefficient_action_algebra)


@pytest.fixture(scope="session")
def A2():
    """Two generators, one formal quantum parameter, trivial group."""
    return formal_algebra(2)


@pytest.fixture(scope="session")
def A3():
    """Three generators, three formal parameters, trivial group."""
    return formal_algebra(3)


@pytest.fixture(scope="session")
def A2_Z3():
    """Two generators, formal parameter, cyclic order-3 group acting
    trivially (chi = 1)."""
    return formal_algebra(2, group_spec=("cyclic", 3, [(1, 0), (1, 0)]))


@pytest.fixture(scope="session")
def Ad3():
    """q = zeta_3 with the cyclic order-3 group acting by the quantum
    coefficient."""
    return quantum_coefficient_action_algebra(3)


@pytest.fixture(scope="session")
def Ad4():
    return quantum_coefficient_action_algebra(4)


@pytest.fixture(scope="session")
def A_comm():
    """q = -1: the commutative truncated polynomial case, trivial group."""
    return build_algebra(2, N=2, q_spec={(0, 1): ("rational", -1)})


@pytest.fixture(scope="session")
def A_ext():
    """q = 1: the exterior-algebra case, trivial group."""
    return build_algebra(2, N=1, q_spec={(0, 1): ("rational", 1)})


def random_cyclo(field, rng, height=9):
    return field.element([Fraction(rng.randint(-height, height),
                                   rng.randint(1, height))
                          for _ in range(field.degree)])


def random_scalar(uni, rng, terms=3, span=2, height=7):
    s = uni.zero
    for _ in range(rng.randint(0, terms)):
        exps = tuple(rng.randint(-span, span) for _ in range(uni.nparams))
        s = s + uni.monomial(random_cyclo(uni.field, rng, height), exps)
    return s
