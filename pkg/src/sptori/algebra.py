"""G-graded algebras given by structure constants on a homogeneous basis.

An algebra is either *finite* (an explicit list of basis keys) or *lazy*: the
basis is infinite (free rank > 0) and keys are produced per degree on demand.
In both cases basis products are computed exactly and cached; the grading law
is checked the first time each product is formed (for finite algebras, all of
them at construction).

Elements are sparse dicts ``key -> mpq``.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np
import sympy

from .errors import (
    GradingError,
    KindMismatchError,
    NoUnitError,
    NotAnInvolutionError,
    InconclusiveError,
    SpecMismatchError,
)
from .foundations import Q, ONE, HALF, GroupSpec
from .linalg import axpy, scale, vsub, Span, kernel, span_of, lincomb
from .report import Check, Report, PASS, FAIL, INCONCLUSIVE

KINDS = ("associative", "alternative", "jordan", "unconstrained")


class GradedAlgebra:
    """Homogeneous basis + exact structure constants.

    Parameters
    ----------
    spec : grading group
    degree : key -> degree tuple
    mul : (key, key) -> vector
    keys : list of basis keys (finite algebras) or ``None``
    component : degree -> list of keys; required for lazy algebras
    unit : vector or ``None``
    """

    def __init__(self, spec: GroupSpec, degree, mul, keys=None, component=None,
                 unit=None, kind_claim="unconstrained", name="algebra", label=None,
                 config=None, window_keys=None):
        if kind_claim not in KINDS:
            raise ValueError(f"unknown kind {kind_claim!r}")
        self.spec = spec
        self._degree = degree
        self._mul = mul
        self.keys = list(keys) if keys is not None else None
        self._component_fn = component
        self.unit = dict(unit) if unit is not None else None
        self.kind_claim = kind_claim
        self.name = name
        self._label = label
        self.config = config
        self._window_keys = window_keys
        self._cache = {}
        self._components = None
        if self.keys is not None:
            comps = {}
            for k in self.keys:
                comps.setdefault(spec.reduce(degree(k)), []).append(k)
            self._components = comps
            self._keyset = set(self.keys)
            for a in self.keys:
                for b in self.keys:
                    self.mul_basis(a, b)
            if self.unit is not None:
                self._check_unit()

    # -- basic structure -------------------------------------------------
    @property
    def is_finite(self):
        return self.keys is not None

    def degree(self, k):
        return self._degree(k)

    def label(self, k):
        return self._label(k) if self._label else repr(k)

    def component(self, g):
        g = self.spec.reduce(g)
        if self._components is not None:
            return list(self._components.get(g, ()))
        return list(self._component_fn(g))

    def support(self):
        if self._components is None:
            raise InconclusiveError("support of a lazy algebra needs a window")
        return sorted(self._components)

    def test_keys(self, window=None):
        """All basis keys (finite) or the keys with degree inside the window."""
        if self.keys is not None:
            if window is None:
                return list(self.keys)
            return [k for k in self.keys if self.spec.in_window(self.degree(k), window)]
        if window is None:
            raise InconclusiveError(f"{self.name} is infinite; a window is required")
        if self._window_keys is not None:
            return list(self._window_keys(window))
        out = []
        for g in self.spec.window(window):
            out.extend(self.component(g))
        return out

    def dim(self):
        return len(self.keys) if self.keys is not None else None

    def mul_basis(self, a, b):
        key = (a, b)
        v = self._cache.get(key)
        if v is None:
            v = self._mul(a, b)
            v = {k: c for k, c in v.items() if c}
            g = self.spec.add(self.degree(a), self.degree(b))
            for k in v:
                if self.spec.reduce(self.degree(k)) != g:
                    raise GradingError(
                        f"{self.label(a)}*{self.label(b)} has a term of degree {self.degree(k)}, expected {g}",
                        witness=(a, b, k),
                    )
            self._cache[key] = v
        return v

    def mul(self, x, y):
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                axpy(out, ca * cb, self.mul_basis(a, b))
        return out

    def basis_vec(self, k):
        return {k: ONE}

    def _check_unit(self):
        for k in self.keys:
            e = {k: ONE}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise NoUnitError(f"declared unit fails on {self.label(k)}", witness=k)
        for k in self.unit:
            if any(self.spec.reduce(self.degree(k))):
                raise NoUnitError("unit must have degree 0", witness=k)

    def circ(self, x, y):
        return axpy(self.mul(x, y), 1, self.mul(y, x))

    def comm(self, x, y):
        return axpy(self.mul(x, y), -1, self.mul(y, x))

    def associator(self, x, y, z):
        return vsub(self.mul(self.mul(x, y), z), self.mul(x, self.mul(y, z)))

    def is_homogeneous(self, x):
        degs = {self.spec.reduce(self.degree(k)) for k in x}
        return len(degs) <= 1

    def degree_of(self, x):
        degs = {self.spec.reduce(self.degree(k)) for k in x}
        if len(degs) != 1:
            raise GradingError("element is not homogeneous (or is zero)", witness=x)
        return degs.pop()

    def __repr__(self):
        d = self.dim()
        return f"<GradedAlgebra {self.name} dim={'inf' if d is None else d} kind={self.kind_claim}>"

    @classmethod
    def from_table(cls, spec, degrees, table, unit=None, kind_claim="unconstrained", name="algebra",
                   labels=None):
        """Finite algebra from ``degrees: key -> degree`` and ``table: (a, b) -> vector``."""
        degrees = {k: spec.reduce(g) for k, g in degrees.items()}
        keys = list(degrees)
        tab = {k: dict(v) for k, v in table.items()}
        lab = (lambda k: labels[k]) if labels else None
        return cls(spec, degrees.__getitem__, lambda a, b: dict(tab.get((a, b), {})), keys=keys,
                   unit=unit, kind_claim=kind_claim, name=name, label=lab)

    def table(self):
        if self.keys is None:
            raise InconclusiveError("no finite table for a lazy algebra")
        return {(a, b): self.mul_basis(a, b) for a in self.keys for b in self.keys if self.mul_basis(a, b)}


def ga_multiply(alg, x, y):
    return alg.mul(x, y)


class Involution:
    """Degree-preserving linear map given on basis keys."""

    def __init__(self, alg, images, name="sigma"):
        self.alg = alg
        self._images = images if callable(images) else dict(images).__getitem__
        self._cache = {}
        self.name = name

    def image(self, k):
        v = self._cache.get(k)
        if v is None:
            v = {a: c for a, c in self._images(k).items() if c}
            self._cache[k] = v
        return v

    def __call__(self, x):
        out = {}
        for k, c in x.items():
            axpy(out, c, self.image(k))
        return out

    def is_diagonal(self, keys):
        return all(set(self.image(k)) <= {k} for k in keys)

    def sign(self, k):
        v = self.image(k)
        if set(v) != {k} or v[k] not in (1, -1):
            raise NotAnInvolutionError(f"sigma is not diagonal with signs on {k!r}")
        return int(v[k])


def ga_check_involution(alg, sigma, window=None, raise_on_fail=False):
    keys = alg.test_keys(window)
    rep = Report("involution")
    deg = rep.add(Check("degree-preserving", window=window))
    sq = rep.add(Check("square-is-identity", window=window))
    anti = rep.add(Check("anti-multiplicative", window=window))
    for k in keys:
        g = alg.spec.reduce(alg.degree(k))
        img = sigma.image(k)
        if any(alg.spec.reduce(alg.degree(j)) != g for j in img):
            deg.fail(k)
        if sigma(img) != {k: ONE}:
            sq.fail(k)
        deg.count += 1
        sq.count += 1
    for a in keys:
        for b in keys:
            lhs = sigma(alg.mul_basis(a, b))
            rhs = alg.mul(sigma.image(b), sigma.image(a))
            anti.count += 1
            if lhs != rhs:
                anti.fail((a, b))
    if raise_on_fail and not rep.passed:
        bad = rep.failures()[0]
        raise NotAnInvolutionError(f"{bad.name} fails", witness=bad.witnesses[0])
    return rep


def _eigen_split(alg, sigma, keys, sign):
    """Basis of the sign-eigenspace of sigma on the span of ``keys`` (one component)."""
    cols = []
    for k in keys:
        v = sigma.image(k)
        cols.append(axpy(dict(v), -sign, {k: ONE}))
    return [{keys[i]: c for i, c in rel.items()} for rel in kernel(cols)]


def ga_split_symmetric(alg, sigma, window=None):
    """Return ``(A, B)``: dicts degree -> list of basis vectors of the +1 / -1 eigenspaces."""
    A, B = {}, {}
    degs = alg.support() if alg.is_finite and window is None else alg.spec.window(window)
    for g in degs:
        ks = alg.component(g)
        if not ks:
            continue
        if sigma.is_diagonal(ks):
            a = [{k: ONE} for k in ks if sigma.image(k).get(k) == 1]
            b = [{k: ONE} for k in ks if sigma.image(k).get(k) == -1]
        else:
            a = _eigen_split(alg, sigma, ks, 1)
            b = _eigen_split(alg, sigma, ks, -1)
        if len(a) + len(b) != len(ks):
            raise NotAnInvolutionError(f"sigma is not diagonalizable on degree {g}", witness=g)
        if a:
            A[g] = a
        if b:
            B[g] = b
    return A, B


def adapt_to_involution(alg, sigma):
    """Change basis of a finite algebra so that sigma acts diagonally by signs.

    New keys are ``("+", g, i)`` and ``("-", g, i)``.  Returns ``(alg2, sigma2, to_new)``
    where ``to_new`` converts old-basis vectors to new-basis vectors.
    """
    if sigma.is_diagonal(alg.keys):
        return alg, sigma, dict
    A, B = ga_split_symmetric(alg, sigma)
    newbasis = {}
    for sgn, part in (("+", A), ("-", B)):
        for g, vs in part.items():
            for i, v in enumerate(vs):
                newbasis[(sgn, g, i)] = v
    keys = list(newbasis)
    s = Span()
    for k in keys:
        s.add(newbasis[k], k)

    def to_new(x):
        c = s.coords(x)
        if c is None:
            raise SpecMismatchError("vector outside the algebra")
        return c

    def mul(a, b):
        return to_new(alg.mul(newbasis[a], newbasis[b]))

    unit = to_new(alg.unit) if alg.unit is not None else None
    alg2 = GradedAlgebra(alg.spec, lambda k: k[1], mul, keys=keys, unit=unit,
                         kind_claim=alg.kind_claim, name=alg.name + "'")
    sig2 = Involution(alg2, lambda k: {k: ONE if k[0] == "+" else -ONE})
    return alg2, sig2, to_new


def ga_plus(alg):
    def mul(a, b):
        return scale(HALF, axpy(dict(alg.mul_basis(a, b)), 1, alg.mul_basis(b, a)))

    return GradedAlgebra(alg.spec, alg.degree, mul, keys=alg.keys, component=alg._component_fn,
                         unit=alg.unit, kind_claim="unconstrained", name=alg.name + "+",
                         label=alg._label, window_keys=alg._window_keys)


# -- kind checks -----------------------------------------------------------

def _assoc_basis(alg, a, b, c):
    return vsub(alg.mul(alg.mul_basis(a, b), {c: ONE}), alg.mul({a: ONE}, alg.mul_basis(b, c)))


def associator_tensor(alg, keys):
    """Associators of all basis triples as a numpy object array of scalars.

    Only available for monomial algebras (every basis product is a multiple of a
    single basis element and every product lands in a one-dimensional component),
    where ``(ab)c`` and ``a(bc)`` are multiples of the same key.  Returns ``None``
    when that shape does not hold; callers then fall back to the generic sweep.
    """
    cache = alg.__dict__.setdefault("_assoc_tensors", {})
    ck = tuple(keys)
    if ck in cache:
        return cache[ck]
    n = len(keys)
    idx = {k: i for i, k in enumerate(keys)}
    ext = list(keys)
    eidx = dict(idx)

    def mono(a, b):
        v = alg.mul_basis(a, b)
        if not v:
            return -1, ZERO_Q
        if len(v) != 1:
            raise _NotMonomial
        (k, c), = v.items()
        if k not in eidx:
            eidx[k] = len(ext)
            ext.append(k)
        return eidx[k], c

    try:
        P = np.full((n, n), -1, dtype=np.int64)
        S = np.zeros((n, n), dtype=object)
        for i, a in enumerate(keys):
            for j, b in enumerate(keys):
                P[i, j], S[i, j] = mono(a, b)
        m = len(ext)
        PL = np.full((m, n), -1, dtype=np.int64)
        SL = np.zeros((m, n), dtype=object)
        PR = np.full((n, m), -1, dtype=np.int64)
        SR = np.zeros((n, m), dtype=object)
        for i in range(m):
            for j in range(n):
                PL[i, j], SL[i, j] = mono(ext[i], keys[j])
        for i in range(n):
            for j in range(m):
                PR[i, j], SR[i, j] = mono(keys[i], ext[j])
    except _NotMonomial:
        cache[ck] = None
        return None
    Pc = np.where(P < 0, 0, P)
    # (ab)c and a(bc)
    lk = np.where(P[:, :, None] < 0, -1, PL[Pc[:, :, None], np.arange(n)[None, None, :]])
    lv = np.where(P[:, :, None] < 0, ZERO_Q, S[:, :, None] * SL[Pc[:, :, None], np.arange(n)[None, None, :]])
    rk = np.where(P[None, :, :] < 0, -1, PR[np.arange(n)[:, None, None], Pc[None, :, :]])
    rv = np.where(P[None, :, :] < 0, ZERO_Q, S[None, :, :] * SR[np.arange(n)[:, None, None], Pc[None, :, :]])
    lv = np.where(lk < 0, ZERO_Q, lv)
    rv = np.where(rk < 0, ZERO_Q, rv)
    both = (lk >= 0) & (rk >= 0)
    if np.any(both & (lk != rk)):
        cache[ck] = None
        return None
    cache[ck] = lv - rv
    return cache[ck]


class _NotMonomial(Exception):
    pass


ZERO_Q = Q(0)


def _nonzero_triples(T, limit):
    nz = np.argwhere(T != 0)
    return [tuple(int(x) for x in row) for row in nz[:limit]], len(nz)


def ga_check_kind(alg, kind, window=None, limit=5):
    """Exact kind check over basis tuples; returns a :class:`Report`."""
    if kind not in ("associative", "alternative", "jordan"):
        raise ValueError(f"unknown kind {kind!r}")
    keys = alg.test_keys(window)
    rep = Report(f"kind:{kind}")
    if kind in ("associative", "alternative"):
        T = associator_tensor(alg, keys)
        if T is not None:
            n = len(keys)
            checks = [("associator", T)] if kind == "associative" else [
                ("left-alternative", T + T.transpose(1, 0, 2)),
                ("right-alternative", T + T.transpose(0, 2, 1)),
            ]
            for name, X in checks:
                ch = rep.add(Check(name, window=window, count=n ** 3))
                bad, total = _nonzero_triples(X, limit)
                for t in bad:
                    ch.fail(tuple(keys[i] for i in t), limit=limit)
                if total:
                    ch.detail = f"{total} violating triples"
            return rep
    if kind == "associative":
        ch = rep.add(Check("associator", window=window))
        for a, b, c in itertools.product(keys, repeat=3):
            ch.count += 1
            if _assoc_basis(alg, a, b, c):
                ch.fail((a, b, c), limit=limit)
        return rep
    if kind == "alternative":
        left = rep.add(Check("left-alternative", window=window))
        right = rep.add(Check("right-alternative", window=window))
        assoc = {}

        def A(a, b, c):
            t = (a, b, c)
            v = assoc.get(t)
            if v is None:
                v = assoc[t] = _assoc_basis(alg, a, b, c)
            return v

        for a, b, c in itertools.product(keys, repeat=3):
            left.count += 1
            right.count += 1
            if axpy(dict(A(a, b, c)), 1, A(b, a, c)):
                left.fail((a, b, c), limit=limit)
            if axpy(dict(A(a, b, c)), 1, A(a, c, b)):
                right.fail((a, b, c), limit=limit)
        return rep
    comm = rep.add(Check("commutative", window=window))
    for a, b in itertools.combinations_with_replacement(keys, 2):
        comm.count += 1
        if alg.mul_basis(a, b) != alg.mul_basis(b, a):
            comm.fail((a, b), limit=limit)
    jid = rep.add(Check("linearized-jordan", window=window))
    if comm.status == FAIL:
        jid.status = FAIL
        jid.detail = "skipped: product is not commutative"
        return rep
    for x, y, z, w in itertools.product(keys, repeat=4):
        jid.count += 1
        if jordan_linearized(alg, {x: ONE}, {y: ONE}, {z: ONE}, {w: ONE}):
            jid.fail((x, y, z, w), limit=limit)
    return rep


def jordan_linearized(alg, x, y, z, w):
    """Full linearization of ``(x^2 w) x - x^2 (w x)`` in x, evaluated at (x, y, z); w is the fixed slot."""
    m = alg.mul
    out = {}
    for p, q, s in ((x, y, z), (y, z, x), (z, x, y)):
        pq = m(p, q)
        axpy(out, 1, m(m(pq, w), s))
        axpy(out, -1, m(pq, m(w, s)))
    return out


# -- inverses, division, tori ---------------------------------------------

def ga_invert_hom(alg, kind, x):
    """Inverse of a nonzero homogeneous element, or ``None`` when it has none."""
    if alg.unit is None:
        raise NoUnitError(f"{alg.name} has no unit")
    if not x:
        return None
    g = alg.degree_of(x)
    cand = alg.component(alg.spec.neg(g))
    if not cand:
        return None
    if kind in ("associative", "alternative"):
        cols = [{("L",) + (k,): c for k, c in alg.mul(x, {y: ONE}).items()}
                | {("R",) + (k,): c for k, c in alg.mul({y: ONE}, x).items()} for y in cand]
        target = {("L", k): c for k, c in alg.unit.items()} | {("R", k): c for k, c in alg.unit.items()}
        sol = _solve(cols, target)
        if sol is None:
            return None
        y = {cand[i]: c for i, c in sol.items()}
        if alg.mul(x, y) != alg.unit or alg.mul(y, x) != alg.unit:
            return None
        return y
    if kind == "jordan":
        x2 = alg.mul(x, x)
        cols = [{("a", k): c for k, c in alg.mul(x, {y: ONE}).items()}
                | {("b", k): c for k, c in alg.mul(x2, {y: ONE}).items()} for y in cand]
        target = {("a", k): c for k, c in alg.unit.items()} | {("b", k): c for k, c in x.items()}
        sol = _solve(cols, target)
        if sol is None:
            return None
        y = {cand[i]: c for i, c in sol.items()}
        if alg.mul(x, y) != alg.unit or alg.mul(x2, y) != x:
            return None
        return y
    raise ValueError(f"unknown kind {kind!r}")


def _solve(cols, target):
    s = span_of(cols)
    return s.coords(target)


def _norm_polynomial(alg, kind, keys):
    """Determinant of the multiplication operator of a generic element of a component.

    Associative/alternative: ``L_x`` from the ``-g`` component to degree 0.
    Jordan: ``U_x = 2 L_x^2 - L_{x^2}`` from the ``-g`` component to the ``g`` component.
    """
    cs = sympy.symbols(f"c0:{len(keys)}")
    g = alg.spec.reduce(alg.degree(keys[0]))
    src = alg.component(alg.spec.neg(g))
    if kind == "jordan":
        tgt = alg.component(g)
    else:
        tgt = alg.component(alg.spec.zero)
    if len(src) != len(tgt) or not src:
        return None, cs
    tindex = {k: i for i, k in enumerate(tgt)}
    M = sympy.zeros(len(tgt), len(src))
    for j, y in enumerate(src):
        img = _generic_image(alg, kind, keys, cs, y)
        for k, expr in img.items():
            M[tindex[k], j] += expr
    return sympy.factor(M.det()), cs


def _rat(c):
    return sympy.Rational(int(c.numerator), int(c.denominator))


def _generic_image(alg, kind, keys, cs, y):
    out = {}
    if kind == "jordan":
        # U_x y = 2 x(xy) - x^2 y, quadratic in the coefficients
        for i, a in enumerate(keys):
            for j, b in enumerate(keys):
                t1 = alg.mul({a: ONE}, alg.mul({b: ONE}, {y: ONE}))
                t2 = alg.mul(alg.mul_basis(a, b), {y: ONE})
                for k, c in t1.items():
                    out[k] = out.get(k, 0) + 2 * _rat(c) * cs[i] * cs[j]
                for k, c in t2.items():
                    out[k] = out.get(k, 0) - _rat(c) * cs[i] * cs[j]
        return out
    for i, a in enumerate(keys):
        for k, c in alg.mul_basis(a, y).items():
            out[k] = out.get(k, 0) + _rat(c) * cs[i]
    return out


def _has_rational_zero(poly, cs):
    """True/False when decidable, ``None`` otherwise.

    Decidable cases: a linear factor (has nonzero rational zeros); one or two
    variables, where a homogeneous form has a nontrivial rational zero iff it has
    a linear factor over Q.
    """
    if poly == 0:
        return True
    P = sympy.Poly(poly, *cs)
    if P.total_degree() == 0:
        return False
    _, factors = sympy.factor_list(poly, *cs)
    for f, _ in factors:
        if sympy.Poly(f, *cs).total_degree() == 1:
            return True
    if len(cs) <= 2 and P.is_homogeneous:
        return False
    return None


def division_check(alg, kind, window=None):
    """Tri-state division-graded check.

    One-dimensional components: invert the basis element.  Larger components:
    invert every basis element, then decide whether the norm polynomial has a
    nonzero rational zero.
    """
    ch = Check("division", window=window)
    degs = alg.support() if alg.is_finite and window is None else alg.spec.window(window)
    for g in degs:
        ks = alg.component(g)
        if not ks:
            continue
        for k in ks:
            ch.count += 1
            if ga_invert_hom(alg, kind, {k: ONE}) is None:
                return ch.fail(("not-invertible", k))
        if len(ks) >= 2:
            poly, cs = _norm_polynomial(alg, kind, ks)
            if poly is None:
                return ch.fail(("dimension-mismatch", g))
            z = _has_rational_zero(poly, cs)
            if z is True:
                return ch.fail(("norm-has-zero", g, str(poly)))
            if z is None:
                ch.status = INCONCLUSIVE
                ch.detail = f"undecided norm form on degree {g}: {poly}"
    if ch.status == PASS and window is not None and not alg.is_finite:
        ch.window = window
    return ch


def ga_is_division_graded(alg, kind, window=None):
    ch = division_check(alg, kind, window)
    if ch.status == INCONCLUSIVE:
        raise InconclusiveError(ch.detail)
    return ch.status == PASS


def torus_check(alg, kind, window=None):
    rep = Report("torus")
    dims = rep.add(Check("component-dim<=1", window=window))
    degs = alg.support() if alg.is_finite and window is None else alg.spec.window(window)
    for g in degs:
        dims.count += 1
        if len(alg.component(g)) > 1:
            dims.fail(g)
    rep.add(division_check(alg, kind, window))
    return rep


def ga_is_torus(alg, kind, window=None):
    rep = torus_check(alg, kind, window)
    if rep.status == INCONCLUSIVE:
        raise InconclusiveError("torus check undecided")
    return rep.passed


def nucleus_contains(alg, spanning, window=None):
    """``(True, None)`` if every spanning element associates with all basis pairs, else ``(False, witness)``."""
    keys = alg.test_keys(window)
    T = associator_tensor(alg, keys)
    if T is not None and all(len(n) == 1 and next(iter(n)) in set(keys) for n in spanning):
        idx = {k: i for i, k in enumerate(keys)}
        for i, n in enumerate(spanning):
            j = idx[next(iter(n))]
            for where, sl in (("left", T[j, :, :]), ("middle", T[:, j, :]), ("right", T[:, :, j])):
                nz = np.argwhere(sl != 0)
                if len(nz):
                    a, b = nz[0]
                    return False, (where, i, keys[int(a)], keys[int(b)])
        return True, None
    for i, n in enumerate(spanning):
        for a in keys:
            x = {a: ONE}
            for b in keys:
                y = {b: ONE}
                if alg.associator(n, x, y):
                    return False, ("left", i, a, b)
                if alg.associator(x, n, y):
                    return False, ("middle", i, a, b)
                if alg.associator(x, y, n):
                    return False, ("right", i, a, b)
    return True, None


def ga_check_closure_table(alg, sigma, window=None):
    """The six containments A∘A ⊆ A, [A,A] ⊆ B, A∘B ⊆ B, [A,B] ⊆ A, B∘B ⊆ A, [B,B] ⊆ B.

    Membership of a product in A (resp. B) is decided by sigma acting as +1 (resp. -1).
    """
    A, B = ga_split_symmetric(alg, sigma, window)
    As = [v for vs in A.values() for v in vs]
    Bs = [v for vs in B.values() for v in vs]
    rep = Report("symmetric-skew containments")
    cases = [
        ("A∘A⊆A", As, As, alg.circ, 1),
        ("[A,A]⊆B", As, As, alg.comm, -1),
        ("A∘B⊆B", As, Bs, alg.circ, -1),
        ("[A,B]⊆A", As, Bs, alg.comm, 1),
        ("B∘B⊆A", Bs, Bs, alg.circ, 1),
        ("[B,B]⊆B", Bs, Bs, alg.comm, -1),
    ]
    for name, X, Y, op, sign in cases:
        ch = rep.add(Check(name, window=window))
        for i, x in enumerate(X):
            for j, y in enumerate(Y):
                v = op(x, y)
                ch.count += 1
                if sigma(v) != scale(sign, v):
                    ch.fail((i, j))
    return rep
