import itertools

import pytest

from sptori.coordinates import ASSOCIATIVE, CLIFFORD, classify, define_skew_product, extract_coordinates, \
    identification, lemma_checks, lemma_five_way, round_trip, run_pipeline, seligman_suite, split_B
from sptori.errors import SptoriError
from sptori.foundations import ONE
from sptori.linalg import axpy, scale
from sptori.sp import build_sp


def _e(k):
    return {k: ONE}


def _bundle(L, window=None):
    b = extract_coordinates(L, window=window)
    split_B(b)
    define_skew_product(b)
    return b


@pytest.fixture(scope="module")
def qb(sp4_quantum):
    return _bundle(sp4_quantum)


@pytest.fixture(scope="module")
def cb(sp4_clifford):
    return _bundle(sp4_clifford)


@pytest.fixture(scope="module")
def zb(sp4_z2):
    return _bundle(sp4_z2, window=1)


def _to_source(bundle, v):
    ident = identification(bundle)
    return {ident[k]: c for k, c in v.items()}


def test_rationals_have_one_dimensional_a_and_no_b(sp4_rationals):
    b = _bundle(sp4_rationals)
    assert b.A_keys() == [("a", (), 0)]
    assert b.B_keys() == []
    assert b.split.AA == {} and b.split.B0 == {}
    assert b.unit() == {("a", (), 0): ONE}
    rep = seligman_suite(b)
    assert rep.passed


def test_quantum_supports(qb):
    sup = qb.supports()
    assert sup["S+"] == [(0, 0), (0, 1), (1, 0)]
    assert sup["S-"] == [(1, 1)]
    assert sup["S"] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert qb.independence.status == "pass"


def test_quantum_split(qb, quantum_z22):
    alg, _ = quantum_z22
    sp = qb.split
    assert all(not v for v in sp.B0.values())
    assert list(sp.AA) == [(1, 1)] and len(sp.AA[(1, 1)]) == 1
    a1, a2 = sp.factors[(1, 1)][0]
    assert _to_source(qb, sp.AA[(1, 1)][0]) == _to_source(qb, qb.comm_basis(a1, a2))
    # [t1, t2] = 2 t1 t2
    t1 = next(k for k in qb.A_keys() if k[1] == (1, 0))
    t2 = next(k for k in qb.A_keys() if k[1] == (0, 1))
    t12 = alg.mul_basis((1, 0), (0, 1))
    assert _to_source(qb, qb.comm_basis(t1, t2)) == scale(2, t12)


def test_clifford_split(cb):
    sp = cb.split
    assert all(not v for v in sp.AA.values())
    for g in cb.degrees():
        assert len(sp.B0.get(g, [])) == len(cb.b_keys(g))


def test_skew_products_by_case(qb, cb, quantum_z22):
    assert cb.case == "i" and qb.case == "ii"
    for x, y in itertools.product(cb.B_keys(), repeat=2):
        assert cb.comm_basis(x, y) == {}
    alg, _ = quantum_z22
    for x, y in itertools.product(qb.keys(), repeat=2):
        want = axpy(alg.mul(_e(identification(qb)[x]), _e(identification(qb)[y])), -1,
                    alg.mul(_e(identification(qb)[y]), _e(identification(qb)[x])))
        assert _to_source(qb, qb.comm_basis(x, y)) == want


def test_rank_two_skew_product_must_be_defined(sp4_quantum):
    b = extract_coordinates(sp4_quantum)
    x = b.B_keys()[0]
    with pytest.raises(SptoriError):
        b.comm_basis(x, x)


@pytest.mark.parametrize("name", ["qb", "cb", "zb"])
def test_identity_suite_passes(request, name):
    b = request.getfixturevalue(name)
    rep = seligman_suite(b)
    assert len(rep.checks) == 14
    assert rep.passed, [c.to_dict() for c in rep.checks if not c.ok]
    assert all(c.count > 0 for c in rep.checks if c.name in ("A-circ-associator", "D-BB-on-A")) or name == "cb"


def _mutations(b):
    """Single-constant corruptions: bump a nonzero constant, or make a zero one nonzero."""
    out = []
    keys = b.keys()
    for op in ("circ", "comm"):
        get = b.circ_basis if op == "circ" else b.comm_basis
        nonzero, zero = [], []
        for x, y in itertools.combinations_with_replacement(keys, 2):
            if op == "comm" and x == y:
                continue
            v = get(x, y)
            (nonzero if v else zero).append((x, y, v))
        for x, y, v in nonzero[:6]:
            k = next(iter(v))
            w = dict(v)
            w[k] = v[k] + 1
            out.append((op, x, y, w))
        added = 0
        for x, y, v in zero:
            g = b.spec.add(x[1], y[1])
            target = (b.a_keys(g) if (op == "circ") == (x[0] == y[0]) else b.b_keys(g))
            if target and added < 2:
                out.append((op, x, y, {target[0]: ONE}))
                added += 1
    return out


@pytest.mark.parametrize("fixture", ["sp4_quantum", "sp4_clifford"])
def test_mutation_breaks_some_identity(request, fixture):
    L = request.getfixturevalue(fixture)
    muts = _mutations(_bundle(L))
    assert len(muts) >= 6
    for op, x, y, w in muts:
        b = _bundle(L)
        b.set_constant(op, x, y, w)
        rep = seligman_suite(b)
        assert not rep.passed, (op, x, y, w)


@pytest.mark.parametrize("name", ["qb", "cb", "zb"])
def test_lemma_battery(request, name):
    b = request.getfixturevalue(name)
    rep = lemma_checks(b)
    bad = [c.to_dict() for c in rep.checks if c.status not in ("pass", "not-applicable")]
    assert not bad


def test_five_way_values(qb, cb):
    assert set(lemma_five_way(qb).values()) == {False}
    assert set(lemma_five_way(cb).values()) == {True}


def test_nonvanishing_example(qb):
    a = next(k for k in qb.A_keys() if k[1] == (1, 0))
    bb = qb.B_keys()[0]
    assert qb.circ_basis(a, bb) or qb.comm_basis(a, bb)


def test_classify_quantum_round_trip(sp4_quantum):
    b, cls = run_pipeline(sp4_quantum)
    assert cls.branch == ASSOCIATIVE
    assert cls.evidence["associative"] is True
    assert round_trip(b).status == "pass"


def test_classify_clifford(sp4_clifford):
    b, cls = run_pipeline(sp4_clifford)
    assert cls.branch == CLIFFORD
    assert cls.evidence["checks"]["[B,B]=0"] == "pass"
    assert round_trip(b).status == "pass"


def test_classify_rationals_goes_associative(sp4_rationals):
    _, cls = run_pipeline(sp4_rationals)
    assert cls.branch == ASSOCIATIVE and cls.evidence["B empty"]


def test_classify_windowed(sp4_z2):
    b, cls = run_pipeline(sp4_z2, window=1)
    assert cls.branch == ASSOCIATIVE
    assert cls.evidence["S+ subgroup"] is False
    assert round_trip(b).label() == "pass (window 1)"


def test_rank_three_reads_skew_product_directly(quantum_z22):
    L = build_sp(*quantum_z22, 3)
    b, cls = run_pipeline(L)
    assert b.case == "read"
    assert cls.branch == ASSOCIATIVE
    assert round_trip(b).status == "pass"


def test_fingerprint_is_stable(sp4_quantum):
    assert _bundle(sp4_quantum).fingerprint() == _bundle(sp4_quantum).fingerprint()


def test_rank_mismatch_rejected(sp4_quantum):
    with pytest.raises(SptoriError):
        extract_coordinates(sp4_quantum, r=3)
