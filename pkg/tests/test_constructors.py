import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import quantum_product, quantum_reversal
from sptori.algebra import Involution, ga_check_involution, ga_check_kind, ga_is_torus, ga_plus, ga_split_symmetric, \
    nucleus_contains
from sptori.constructors import CliffordData, CocycleMatrix, cayley_dickson_double, clifford_torus, \
    octonion_generator, octonion_torus, quantum_torus, reversal_involution
from sptori.errors import InvalidCocycleError, NotAnInvolutionError, SpecMismatchError
from sptori.foundations import GroupSpec, ONE, qq, subgroup_generated

Z22 = GroupSpec(0, (2, 2))


def e(k):
    return {k: ONE}


def test_single_generator_is_commutative():
    for spec in (GroupSpec(1), GroupSpec(0, (3,))):
        qt = quantum_torus(spec, CocycleMatrix.trivial(1))
        keys = qt.test_keys(2)
        for a, b in itertools.product(keys, repeat=2):
            assert qt.mul_basis(a, b) == {spec.add(a, b): 1}


def test_quantum_z22_relations(quantum_z22):
    qt, _ = quantum_z22
    assert qt.dim() == 4
    t1, t2 = e((1, 0)), e((0, 1))
    assert qt.mul(t1, t1) == qt.unit == qt.mul(t2, t2)
    assert qt.mul(t1, t2) == {(1, 1): -1 * qt.mul(t2, t1)[(1, 1)]}


def test_cocycle_incompatible_with_torsion():
    with pytest.raises(InvalidCocycleError):
        quantum_torus(GroupSpec(1, (2,)), CocycleMatrix.from_pairs(2, {(0, 1): 2}))


def test_cocycle_must_be_inverse_symmetric():
    with pytest.raises(InvalidCocycleError):
        quantum_torus(Z22, CocycleMatrix(((1, 3), (3, 1))))


def test_cocycle_size_must_match_rank():
    with pytest.raises(SpecMismatchError):
        quantum_torus(Z22, CocycleMatrix.trivial(3))


def test_reversal_examples():
    Z2 = GroupSpec(2)
    qt = quantum_torus(Z2, CocycleMatrix.from_pairs(2, {(0, 1): -1}))
    assert reversal_involution(qt).image((1, 1)) == {(1, 1): -1}
    comm = quantum_torus(Z2, CocycleMatrix.trivial(2))
    s = reversal_involution(comm)
    assert all(s.image(g) == {g: 1} for g in Z2.window(2))
    s = reversal_involution(qt, (-1, 1))
    assert s.image((1, 0)) == {(1, 0): -1}
    assert ga_check_involution(qt, s, 1).passed


def test_sign_on_odd_order_generator_rejected():
    qt = quantum_torus(GroupSpec(0, (3,)), CocycleMatrix.trivial(1))
    with pytest.raises(NotAnInvolutionError):
        reversal_involution(qt, (-1,))


def _tower(O):
    first = O.base.base
    return first, O.base, O


def test_first_doubling_squares_to_parameter(octonion3):
    O, _ = octonion3
    first, _, _ = _tower(O)
    x1 = first.component((1, 0, 0))
    assert len(x1) == 1
    t1 = first.mul(e(x1[0]), e(x1[0]))
    assert len(t1) == 1
    (k, c), = t1.items()
    assert c == 1 and first.degree(k) == (2, 0, 0)
    assert first.unit == {((0, 0, 0), 0): 1}


def test_doubling_tower_kinds(octonion3):
    O, _ = octonion3
    first, second, third = _tower(O)
    assert ga_check_kind(first, "associative", window=1).passed
    assert ga_check_kind(ga_plus(first), "associative", window=1).passed  # commutative as well
    assert ga_check_kind(second, "associative", window=1).passed
    assert not ga_check_kind(third, "associative", window=1).passed
    assert ga_check_kind(third, "alternative", window=1).passed


def test_doubling_a_finite_algebra_adds_a_torsion_slot(quantum_z22):
    qt, _ = quantum_z22
    standard = reversal_involution(qt, (-1, -1))
    D, s = cayley_dickson_double(qt, standard, qt.unit)
    assert D.spec == GroupSpec(0, (2, 2, 2))
    assert D.dim() == 8
    assert D.unit == {((0, 0), 0): 1}
    assert ga_check_kind(D, "alternative").passed
    assert not ga_check_kind(D, "associative").passed
    assert ga_check_involution(D, s).passed


def test_doubling_with_nonstandard_involution_is_not_alternative(quantum_z22):
    qt, reversal = quantum_z22
    D, _ = cayley_dickson_double(qt, reversal, qt.unit)
    assert not ga_check_kind(D, "alternative").passed


def test_octonion_torus_properties(octonion3):
    O, sigma = octonion3
    assert ga_check_kind(O, "alternative", window=1).passed
    assert not ga_check_kind(O, "associative", window=1).passed
    A, _ = ga_split_symmetric(O, sigma, window=1)
    assert nucleus_contains(O, [v for vs in A.values() for v in vs], window=1)[0]
    assert ga_is_torus(O, "alternative", window=1)
    for i in (1, 2, 3):
        x = octonion_generator(O, i)
        assert sigma.image(x) == {x: -1}


def test_octonion_needs_three_generators():
    from sptori.errors import SptoriError
    with pytest.raises(SptoriError):
        octonion_torus(2)


def test_clifford_instance(clifford_z22):
    cl, sigma = clifford_z22
    b = ("B", (0, 0), 0)
    assert cl.mul(e(b), e(b)) == cl.unit
    assert ga_is_torus(cl, "jordan")
    assert ga_check_kind(cl, "jordan").passed
    assert ga_check_involution(cl, sigma).passed
    P = ga_plus(cl)
    assert all(P.mul_basis(x, y) == cl.mul_basis(x, y) for x in cl.keys for y in cl.keys)


def test_clifford_without_module_is_commutative_associative():
    cl, sigma = clifford_torus(Z22, CliffordData(subgroup_generated([(1, 0), (0, 1)], Z22), [], {}))
    assert cl.dim() == 4
    assert ga_check_kind(cl, "associative").passed
    assert ga_check_kind(cl, "jordan").passed


# -- oracle comparisons on random tori -----------------------------------------------------

groups = st.sampled_from([GroupSpec(0, (2, 2)), GroupSpec(0, (2, 4)), GroupSpec(1, (2,)), GroupSpec(2),
                          GroupSpec(3), GroupSpec(0, (2, 2, 2))])


@st.composite
def tori(draw):
    spec = draw(groups)
    n = spec.rank
    pairs = {}
    for i, j in itertools.combinations(range(n), 2):
        pairs[(i, j)] = draw(st.sampled_from([1, -1] if (i >= spec.free_rank or j >= spec.free_rank)
                                             else [1, -1, 2, "1/3"]))
    return spec, pairs


def _oracle_q(spec, pairs):
    n = spec.rank
    q = [[1] * n for _ in range(n)]
    for (i, j), v in pairs.items():
        q[i][j] = qq(v)
        q[j][i] = 1 / qq(v)
    torsion = {spec.free_rank + t: m for t, m in enumerate(spec.torsion)}
    return q, torsion


@given(tori(), st.data())
def test_product_matches_normal_ordering_oracle(torus, data):
    spec, pairs = torus
    qt = quantum_torus(spec, CocycleMatrix.from_pairs(spec.rank, pairs))
    q, torsion = _oracle_q(spec, pairs)
    keys = qt.test_keys(1)
    a = data.draw(st.sampled_from(keys))
    b = data.draw(st.sampled_from(keys))
    c, g = quantum_product(q, torsion, a, b)
    assert qt.mul_basis(a, b) == {g: qq(c.numerator, c.denominator)}


@given(tori(), st.data())
def test_reversal_matches_word_reversal_oracle(torus, data):
    spec, pairs = torus
    qt = quantum_torus(spec, CocycleMatrix.from_pairs(spec.rank, pairs))
    if any(qq(v) not in (1, -1) for v in pairs.values()):
        return  # reversal is an involution only for +-1 cocycles
    sigma = reversal_involution(qt)
    q, torsion = _oracle_q(spec, pairs)
    g = data.draw(st.sampled_from(qt.test_keys(1)))
    c, h = quantum_reversal(q, torsion, g)
    assert h == g
    assert sigma.image(g) == {g: qq(c.numerator, c.denominator)}


@given(st.sampled_from([2, 3, 4]), st.sampled_from([-1, 2, "1/2", 1]))
def test_cocycle_validation_matches_root_of_unity_rule(m, v):
    spec = GroupSpec(1, (m,))
    cm = CocycleMatrix.from_pairs(2, {(0, 1): v})
    ok = qq(v) ** m == 1
    if ok:
        assert ga_check_kind(quantum_torus(spec, cm), "associative", window=1).passed
    else:
        with pytest.raises(InvalidCocycleError):
            quantum_torus(spec, cm)


@given(tori())
def test_quantum_torus_is_an_associative_torus(torus):
    spec, pairs = torus
    qt = quantum_torus(spec, CocycleMatrix.from_pairs(spec.rank, pairs))
    w = None if qt.is_finite else 1
    assert ga_check_kind(qt, "associative", w).passed
    assert ga_is_torus(qt, "associative", w)
