import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from sptori.errors import SptoriError
from sptori.foundations import Q
from sptori.symplectic import E, cartan, division_witnesses, g_basis, h_basis, in_g, in_s, mat_bracket, mat_circ, \
    mat_trace, model, product_witnesses, roots_c, s0_basis, s_basis, s_weights, weight_of


def sym(m):
    return sympy.Matrix(m.shape[0], m.shape[1], lambda i, j: sympy.Rational(int(m[i, j].numerator),
                                                                             int(m[i, j].denominator)))


def J(r):
    n = 2 * r
    return sympy.Matrix(n, n, lambda i, j: (1 if i > j else -1) if i + j == n - 1 else 0)


def solution_dim(r, sign, traceless):
    """Dimension of {x : x^T J = sign * J x} (and tr x = 0) from a symbolic nullspace."""
    n = 2 * r
    xs = sympy.symbols(f"x0:{n * n}")
    X = sympy.Matrix(n, n, xs)
    eqs = list(X.T * J(r) - sign * J(r) * X)
    if traceless:
        eqs.append(X.trace())
    A, _ = sympy.linear_eq_to_matrix(eqs, xs)
    return n * n - A.rank()


def test_cartan_examples():
    assert cartan((1, 1), (1, -1)) == 0
    assert cartan((2, 0), (1, -1)) == 2
    assert cartan((1, -1), (2, 0)) == 1
    assert cartan((1, -1), (1, -1)) == 2
    assert cartan((0, 2), (1, -1)) == -2
    with pytest.raises(SptoriError):
        cartan((1, 0), (1, 0))


@pytest.mark.parametrize("r", [2, 3, 4])
def test_root_counts(r):
    R = roots_c(r)
    assert len(R.roots) == 2 * r * r
    assert len(R.long_roots) == 2 * r
    assert all(R.cartan(mu, mu) == 2 for mu in R.roots)


def test_g_basis_examples():
    r = 2
    assert (g_basis((1, 1), r) == E(1, 3, r) + E(2, 4, r)).all()
    assert (g_basis((1, -1), r) == E(1, 2, r) - E(3, 4, r)).all()
    assert (g_basis((2, 0), r) == E(1, 4, r) * 2).all()


@pytest.mark.parametrize("r", [2, 3])
def test_bases_are_weight_vectors_in_the_right_space(r):
    R = roots_c(r)
    for mu in R.roots:
        x = g_basis(mu, r)
        assert in_g(x, r) and weight_of(x, r) == mu
    for w in s_weights(r):
        x = s_basis(w, r)
        assert in_s(x, r) and not in_g(x, r) and weight_of(x, r) == w
    for d in s0_basis(r) + h_basis(r):
        assert weight_of(d, r) == (0,) * r
    assert all(in_s(d, r) for d in s0_basis(r))
    assert all(in_g(h, r) for h in h_basis(r))


@pytest.mark.parametrize("r", [2, 3, 4])
def test_dimensions_match_symbolic_solution_spaces(r):
    M = model(r)
    assert M.dim_g == r * (2 * r + 1) == solution_dim(r, -1, False)
    assert M.dim_s == r * (2 * r - 1) - 1 == solution_dim(r, 1, True)


def test_membership_against_symbolic_form():
    r = 2
    for x in (E(1, 2, r), E(1, 4, r), E(1, 1, r) - E(4, 4, r), E(1, 1, r) + E(4, 4, r) - E(2, 2, r) - E(3, 3, r)):
        X = sym(x)
        assert in_g(x, r) == (X.T * J(r) == -J(r) * X)
        assert in_s(x, r) == (X.T * J(r) == J(r) * X and X.trace() == 0)


def test_division_witnesses_at_rank_two():
    r = 2
    w = division_witnesses(r)
    half_coroot = (E(1, 1, r) - E(2, 2, r) + E(3, 3, r) - E(4, 4, r)) * Q(1, 2)
    assert (mat_bracket(w["e"], w["e2"]) == half_coroot).all()
    assert (mat_bracket(w["s"], w["s2"]) == half_coroot).all()
    assert (mat_circ(w["e"], w["e2"]) == 0).all()
    assert (mat_circ(w["s"], w["s2"]) == 0).all()
    assert mat_trace(w["e"], w["e2"]) == 1 == mat_trace(w["s"], w["s2"])
    assert in_g(w["e"], r) and in_g(w["e2"], r) and in_s(w["s"], r) and in_s(w["s2"], r)


def test_s_circle_vanishes_only_at_rank_two():
    S2 = [e.m for e in model(2).s]
    assert all((mat_circ(a, b) == 0).all() for a, b in itertools.product(S2, repeat=2))
    pw = product_witnesses(3)
    assert not (mat_circ(pw["s"], pw["t"]) == 0).all()


@pytest.mark.parametrize("r", [2, 3])
def test_product_witnesses_are_nondegenerate(r):
    pw = product_witnesses(r)
    assert not (mat_bracket(pw["w"], pw["z"]) == 0).all()
    assert not (mat_circ(pw["w"], pw["z"]) == 0).all()
    assert not (mat_circ(pw["s"], pw["w"]) == 0).all()
    assert not (mat_bracket(pw["s"], pw["s2"]) == 0).all()
    if r >= 3:
        assert not (mat_circ(pw["s"], pw["t"]) == 0).all()


def _combine(basis, coords):
    out = sympy.zeros(basis[0].m.shape[0])
    for i, c in coords.items():
        out += sym(basis[i].m) * sympy.Rational(int(c.numerator), int(c.denominator))
    return out


@pytest.mark.parametrize("r", [2, 3])
@given(data=st.data())
def test_product_tables_match_symbolic_matrices(r, data):
    M = model(r)
    n = 2 * r
    I = sympy.eye(n)
    specs = [("gg", M.g, M.g, M.gg_br, M.g, M.gg_ci, M.s, M.gg_tr),
             ("gs", M.g, M.s, M.gs_br, M.s, M.gs_ci, M.g, None),
             ("ss", M.s, M.s, M.ss_br, M.g, M.ss_ci, M.s, M.ss_tr)]
    name, X, Y, br, brb, ci, cib, tr = data.draw(st.sampled_from(specs))
    i = data.draw(st.integers(0, len(X) - 1))
    j = data.draw(st.integers(0, len(Y) - 1))
    x, y = sym(X[i].m), sym(Y[j].m)
    assert _combine(brb, br[i, j]) == x * y - y * x
    t = (x * y).trace()
    assert _combine(cib, ci[i, j]) == x * y + y * x - t / r * I
    if tr is not None:
        assert tr[i, j] == t


@pytest.mark.parametrize("r", [2, 3])
@given(data=st.data())
def test_brackets_and_circles_respect_the_grading(r, data):
    """[g,g], g∘s, [s,s] lie in g; g∘g, [g,s], s∘s lie in s; weights add."""
    M = model(r)
    a_space = data.draw(st.sampled_from(["g", "s"]))
    b_space = data.draw(st.sampled_from(["g", "s"]))
    A = data.draw(st.sampled_from(getattr(M, a_space)))
    B = data.draw(st.sampled_from(getattr(M, b_space)))
    same = a_space == b_space
    br, ci = mat_bracket(A.m, B.m), mat_circ(A.m, B.m)
    assert (in_g if same else in_s)(br, r)
    assert (in_s if same else in_g)(ci, r)
    total = tuple(p + q for p, q in zip(A.weight, B.weight))
    for prod in (br, ci):
        if not (prod == 0).all():
            assert weight_of(prod, r) == total
