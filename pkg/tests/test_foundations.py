import pytest
from hypothesis import given, strategies as st

from oracles import lattice_contains, subgroup_closure
from sptori.errors import SpecMismatchError, UnsupportedForInfiniteGroup
from sptori.foundations import GroupElement, GroupSpec, grp_op, is_subgroup, q_to_pair, qq, subgroup_generated, \
    subgroup_status_in_window

Z2 = GroupSpec(2)
Z22 = GroupSpec(0, (2, 2))


def el(spec, *c):
    return GroupElement(spec, c)


def test_free_addition():
    assert grp_op(el(Z2, 1, 0), el(Z2, 0, 1)).coords == (1, 1)


def test_torsion_reduction():
    Z_2 = GroupSpec(0, (2,))
    assert grp_op(el(Z_2, 1), el(Z_2, 1)).coords == (0,)


def test_two_torsion_is_self_inverse():
    assert grp_op(el(Z22, 1, 1), op="neg").coords == (1, 1)


def test_mixed_specs_rejected():
    with pytest.raises(SpecMismatchError):
        el(Z2, 1, 0) + el(Z22, 1, 0)


def test_subgroup_membership_against_smith_form():
    H = subgroup_generated([(2, 0), (0, 1)], Z2)
    assert not H.contains((1, 0))
    assert not lattice_contains([(2, 0), (0, 1)], (), 2, (1, 0))
    assert H.contains((4, -3))


def test_empty_generating_set_is_trivial():
    H = subgroup_generated([], Z2)
    assert H.contains((0, 0))
    assert not H.contains((1, 0))


def test_generators_give_whole_group():
    assert subgroup_generated([(1, 0), (0, 1)], Z22).equals_whole_group()
    assert not subgroup_generated([(1, 0)], Z22).equals_whole_group()


@pytest.mark.parametrize("S, expected", [
    ({(0, 0), (1, 0)}, True),
    ({(0, 0), (1, 0), (0, 1)}, False),
    ({(1, 0)}, False),
])
def test_is_subgroup_examples(S, expected):
    assert is_subgroup(S, Z22) is expected


def test_is_subgroup_needs_finite_group():
    with pytest.raises(UnsupportedForInfiniteGroup):
        is_subgroup({(0, 0)}, Z2)


def test_window_status_is_tri_state():
    assert subgroup_status_in_window({(0, 0), (1, 0), (-1, 0)}, Z2, 1) == ("inconclusive", None)
    status, wit = subgroup_status_in_window({(0, 0), (1, 0)}, Z2, 1)
    assert status == "fail" and wit[0] == "missing-inverse"


def test_rational_coercions():
    assert qq("3/4") == qq([3, 4]) == qq(3, 4)
    assert q_to_pair(qq("-6/8")) == [-3, 4]


small = st.integers(-3, 3)
specs = st.sampled_from([GroupSpec(2), GroupSpec(1, (2,)), GroupSpec(0, (2, 2)), GroupSpec(1, (4,)),
                         GroupSpec(0, (3, 6))])


@st.composite
def spec_and_elements(draw, k=3):
    spec = draw(specs)
    vec = st.tuples(*[small for _ in range(spec.rank)])
    gens = draw(st.lists(vec, max_size=k))
    x = draw(vec)
    return spec, [spec.reduce(g) for g in gens], spec.reduce(x)


@given(spec_and_elements())
def test_membership_matches_smith_oracle(data):
    spec, gens, x = data
    H = subgroup_generated(gens, spec)
    assert H.contains(x) == lattice_contains(gens, spec.torsion, spec.free_rank, x)


@given(spec_and_elements())
def test_generators_are_members(data):
    spec, gens, _ = data
    H = subgroup_generated(gens, spec)
    assert all(H.contains(g) for g in gens)


@given(spec_and_elements())
def test_regeneration_is_idempotent(data):
    spec, gens, _ = data
    H = subgroup_generated(gens, spec)
    H2 = subgroup_generated([tuple(r) for r in H.echelon], spec)
    for g in spec.window(2):
        assert H.contains(g) == H2.contains(g)


finite_specs = st.sampled_from([GroupSpec(0, (2, 2)), GroupSpec(0, (4,)), GroupSpec(0, (2, 3)), GroupSpec(0, (2, 4))])


@given(finite_specs, st.data())
def test_is_subgroup_iff_generated_set_is_itself(spec, data):
    elems = spec.elements()
    S = set(data.draw(st.lists(st.sampled_from(elems), max_size=len(elems))))
    closure = subgroup_closure(list(S), spec.torsion)
    generated = set(subgroup_generated(S, spec).elements())
    assert generated == closure
    assert is_subgroup(S, spec) == (generated == S)


@given(spec_and_elements())
def test_group_axioms(data):
    spec, gens, x = data
    for g in gens:
        a, b = GroupElement(spec, g), GroupElement(spec, x)
        assert (a + b).coords == (b + a).coords
        assert (a - a).is_zero()
        assert ((a + b) - b).coords == a.coords
