import itertools

import pytest
from hypothesis import given, strategies as st

from sptori.algebra import ga_plus
from sptori.errors import KindMismatchError, NotLieError, SptoriError
from sptori.foundations import HALF, ONE, Q
from sptori.lie import TableLieAlgebra, materialize, with_central_line
from sptori.lie_checks import bigrading_check, graded_simple_check, jacobi_check, lie_center, lie_report
from sptori.linalg import axpy, scale
from sptori.sp import build_sp, inner_der
from sptori.symplectic import model


def _e(k):
    return {k: ONE}


def test_d_with_unit_vanishes(quantum_z22, clifford_z22):
    for alg, sigma in (quantum_z22, clifford_z22):
        one = next(iter(alg.unit))
        for a in alg.keys:
            assert inner_der(one, a, 2, alg, sigma) == {}
            assert inner_der(a, one, 2, alg, sigma) == {}


def _symmetric_keys(alg, sigma):
    return [k for k in alg.keys if sigma.sign(k) == 1]


@pytest.mark.parametrize("r", [2, 3, 4])
def test_d_of_a_and_its_square_vanishes(quantum_z22, r):
    alg, sigma = quantum_z22
    P = ga_plus(alg)
    for a in _symmetric_keys(alg, sigma):
        sq = scale(HALF, P.mul(_e(a), _e(a)))  # a·a in the plus algebra
        assert inner_der({a: ONE}, sq, r, alg, sigma) == {}


@pytest.mark.parametrize("r", [2, 3, 4])
def test_d_on_symmetric_elements_is_plus_product_commutator(quantum_z22, r):
    """D_{a,a'}a'' = (2/r)(a·(a'·a'') - a'·(a·a'')) with a·b = (ab + ba)/2."""
    alg, sigma = quantum_z22
    A = _symmetric_keys(alg, sigma)

    def dot(x, y):
        return scale(HALF, axpy(alg.mul(x, y), 1, alg.mul(y, x)))

    for a, a2, a3 in itertools.product(A, repeat=3):
        D = inner_der(a, a2, r, alg, sigma, keys=[a3]).get(a3, {})
        want = axpy(dot(_e(a), dot(_e(a2), _e(a3))), -1, dot(_e(a2), dot(_e(a), _e(a3))))
        assert D == scale(Q(2, r), want)


def test_inner_der_rank_guard(quantum_z22):
    with pytest.raises(SptoriError):
        inner_der((0, 0), (1, 0), 1, *quantum_z22)


@pytest.mark.parametrize("r,dim", [(2, 10), (3, 21), (4, 36)])
def test_classical_dimensions_and_center(rationals, r, dim):
    L = build_sp(*rationals, r)
    assert L.dimension() == dim == r * (2 * r + 1)
    assert lie_center(L) == []
    assert L.jacobi_report.status == "pass"
    assert all(L.d_dim(g) == 0 for g in L.degrees())


def test_grading_subalgebra_embeds_as_matrices(sp4_quantum):
    L = sp4_quantum
    M = model(2)
    for i, j in itertools.product(range(M.dim_g), repeat=2):
        got = L.bracket(L.g_vector(i), L.g_vector(j))
        want = {}
        for k, c in M.gg_br[i, j].items():
            axpy(want, c, L.g_vector(k))
        assert got == want


def test_quantum_component_dimensions(sp4_quantum):
    L = sp4_quantum
    counts = {"g": 0, "s": 0, "d": 0}
    for k in L.keys():
        counts[k[0]] += 1
    assert counts["g"] == 30 and counts["s"] == 5
    assert L.dimension() == 30 + 5 + counts["d"]
    assert lie_center(L) == []


@given(st.data())
def test_rank_two_skew_brackets_have_no_s_part(sp4_quantum, sp4_clifford, data):
    L = data.draw(st.sampled_from([sp4_quantum, sp4_clifford]))
    S = [k for k in L.keys() if k[0] == "s"]
    u = data.draw(st.sampled_from(S))
    v = data.draw(st.sampled_from(S))
    assert not any(k[0] == "s" for k in L.bracket_basis(u, v))


def test_division_witness_bracket_on_grading_degree(sp4_quantum):
    """[e⊗a, e'⊗a^{-1}] = mu-check for a homogeneous symmetric a."""
    L = sp4_quantum
    M = model(2)
    mu = (1, -1)
    e = M.g_index[mu]
    f = M.g_index[(-1, 1)]
    for a in L.a_keys((1, 0)):
        ainv = a  # t1^2 = 1
        y = {("g", f, ainv): ONE}
        t = L.bracket({("g", e, a): ONE}, y)
        assert t == L.coroot_vector(mu)


def test_clifford_rejected_above_rank_two(clifford_z22):
    with pytest.raises(KindMismatchError):
        build_sp(*clifford_z22, 3)


def test_octonion_rejected_at_rank_four(octonion3):
    with pytest.raises(KindMismatchError):
        build_sp(*octonion3, 4, window=1, jacobi=False)


def test_infinite_algebra_needs_window(quantum_z2):
    with pytest.raises(SptoriError):
        build_sp(*quantum_z2, 2)


def test_central_line_is_the_center(sp4_rationals):
    L = with_central_line(sp4_rationals)
    z = lie_center(L)
    assert z == [{("z",): ONE}]
    assert graded_simple_check(L).status == "fail"
    assert graded_simple_check(sp4_rationals).status == "pass"


def test_bigrading_and_antisymmetry(sp4_quantum, sp4_clifford):
    for L in (sp4_quantum, sp4_clifford):
        bg, anti = bigrading_check(L)
        assert bg.status == anti.status == "pass"
        assert lie_report(L).passed


def test_windowed_build_passes_jacobi(sp4_z2):
    assert sp4_z2.jacobi_report.status == "pass"
    assert sp4_z2.jacobi_report.window == 1


def test_corrupted_table_fails_jacobi_with_witness(sp4_quantum):
    T = materialize(sp4_quantum)
    (a, b), v = next(iter(sorted(T._table.items(), key=repr)))
    k = next(iter(v))
    table = dict(T._table)
    table[(a, b)] = dict(v)
    table[(a, b)][k] = v[k] + 1
    bad = TableLieAlgebra(T.spec, T.r, T._basis, table, T._g, T._labels)
    ch = jacobi_check(bad)
    assert ch.status == "fail" and ch.witnesses


def test_jacobi_failure_is_a_hard_error(quantum_z22, monkeypatch):
    import sptori.sp as sp
    monkeypatch.setattr(sp, "D_SCALE_TWO", Q(1))
    with pytest.raises(NotLieError) as info:
        build_sp(*quantum_z22, 2)
    assert info.value.code == "constructed-algebra-not-lie"
    assert info.value.witness is not None


def test_quantum_rank_four_is_lie(quantum_z22):
    L = build_sp(*quantum_z22, 4)
    assert L.jacobi_report.status == "pass"
    assert lie_center(L) == []
