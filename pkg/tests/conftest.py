import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from sptori.constructors import CliffordData, CocycleMatrix, clifford_torus, octonion_torus, quantum_torus, \
    reversal_involution
from sptori.foundations import GroupSpec, subgroup_generated
from sptori.sp import build_sp

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

Z22 = GroupSpec(0, (2, 2))


def make_quantum_z22():
    qt = quantum_torus(Z22, CocycleMatrix.from_pairs(2, {(0, 1): -1}))
    return qt, reversal_involution(qt)


def make_clifford_z22():
    data = CliffordData(subgroup_generated([(1, 0)], Z22), [(0, 1)], {(0, 0): 1})
    return clifford_torus(Z22, data)


def make_quantum_z2():
    qt = quantum_torus(GroupSpec(2, ()), CocycleMatrix.from_pairs(2, {(0, 1): -1}))
    return qt, reversal_involution(qt)


def make_rationals():
    qt = quantum_torus(GroupSpec(0, ()), CocycleMatrix(()))
    return qt, reversal_involution(qt)


@pytest.fixture(scope="session")
def quantum_z22():
    return make_quantum_z22()


@pytest.fixture(scope="session")
def clifford_z22():
    return make_clifford_z22()


@pytest.fixture(scope="session")
def quantum_z2():
    return make_quantum_z2()


@pytest.fixture(scope="session")
def rationals():
    return make_rationals()


@pytest.fixture(scope="session")
def octonion3():
    return octonion_torus(3)


@pytest.fixture(scope="session")
def sp4_quantum(quantum_z22):
    return build_sp(*quantum_z22, 2)


@pytest.fixture(scope="session")
def sp4_clifford(clifford_z22):
    return build_sp(*clifford_z22, 2)


@pytest.fixture(scope="session")
def sp4_z2(quantum_z2):
    return build_sp(*quantum_z2, 2, window=1)


@pytest.fixture(scope="session")
def sp4_rationals(rationals):
    return build_sp(*rationals, 2)
