"""Jordan algebras with a triangle: Peirce spaces, connection involution, q-isotope.

A triangle (p1, p2, q) in a Jordan algebra J consists of orthogonal
idempotents p1, p2 with p1 + p2 = 1 and an element q of the half space J12
with q^2 = 1.  The half space carries two products: the q-isotope product
u ._q v = (uq)v + u(qv) - (uv)q, and the product assembled from the
coordinates a = x11 q (symmetric part) and b (skew part).  The module checks
that they agree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import GradedAlgebra, Involution, adapt_to_involution, ga_check_kind
from .errors import (
    InternalInconsistencyError,
    KindMismatchError,
    NotATriangleError,
    NotPeirceIdempotentError,
)
from .foundations import HALF, ONE, GroupSpec
from .linalg import Span, axpy, kernel, scale, vsub
from .report import Check, Report


def _vec(J, x):
    return {x: ONE} if not isinstance(x, dict) else x


class JordanOps:
    """Small helper around a commutative algebra: products, eigenspaces, coordinates."""

    def __init__(self, J: GradedAlgebra):
        if not J.is_finite:
            raise KindMismatchError("triangle computations need a finite algebra")
        self.J = J

    def m(self, x, y):
        return self.J.mul(x, y)

    def eigenspace(self, x, lam):
        """Basis of {y : x y = lam y}."""
        keys = self.J.keys
        cols = [axpy(self.m(x, {k: ONE}), -lam, {k: ONE}) for k in keys]
        return [{keys[i]: c for i, c in rel.items()} for rel in kernel(cols)]


@dataclass
class Peirce:
    J11: list
    J12: list
    J22: list
    report: Report = field(default_factory=lambda: Report("peirce"))

    def spans(self):
        return tuple(_span(vs) for vs in (self.J11, self.J12, self.J22))


def _span(vs):
    s = Span()
    for i, v in enumerate(vs):
        s.add(v, i)
    return s


def _contained(J, left, right, target, ch, ops):
    for x in left:
        for y in right:
            ch.count += 1
            if not target.contains(ops.m(x, y)):
                ch.fail((x, y))
                return


def peirce(J: GradedAlgebra, p1, check=True):
    """Split J into the 1, 1/2 and 0 eigenspaces of L_p1 and check the multiplication rules."""
    ops = JordanOps(J)
    p1 = _vec(J, p1)
    J11 = ops.eigenspace(p1, ONE)
    J12 = ops.eigenspace(p1, HALF)
    J22 = ops.eigenspace(p1, 0)
    total = _span(J11 + J12 + J22)
    if total.dim != len(J.keys):
        raise NotPeirceIdempotentError(
            f"eigenspaces of L_p for 1, 1/2, 0 span only {total.dim} of {len(J.keys)} dimensions",
            witness=p1,
        )
    P = Peirce(J11, J12, J22)
    if not check:
        return P
    S11, S12, S22 = P.spans()
    zero = Span()
    S1122 = _span(J11 + J22)
    rep = P.report
    for name, left, right, target in (
        ("J11J11<J11", J11, J11, S11),
        ("J22J22<J22", J22, J22, S22),
        ("J11J22=0", J11, J22, zero),
        ("J11J12<J12", J11, J12, S12),
        ("J22J12<J12", J22, J12, S12),
        ("J12J12<J11+J22", J12, J12, S1122),
    ):
        _contained(J, left, right, target, rep.add(Check(name)), ops)
    ch = rep.add(Check("peirce-commutation"))
    for x11, x22, x12 in itertools.product(J11, J22, J12):
        ch.count += 1
        if vsub(ops.m(x11, ops.m(x22, x12)), ops.m(x22, ops.m(x11, x12))):
            ch.fail((x11, x22, x12))
    return P


class TriangleJordan:
    """A finite Jordan algebra J (a GradedAlgebra) with a triangle (p1, p2, q)."""

    def __init__(self, J: GradedAlgebra, p1, p2, q, validate=True):
        self.J = J
        self.p1, self.p2, self.q = _vec(J, p1), _vec(J, p2), _vec(J, q)
        self.ops = JordanOps(J)
        if validate:
            self.validate()
        self._peirce = None
        self._x11 = None

    def relations(self):
        """The triangle relations as named residuals (all zero for a triangle)."""
        m = self.ops.m
        p1, p2, q = self.p1, self.p2, self.q
        one = self.J.unit or {}
        return {
            "p1^2=p1": vsub(m(p1, p1), p1),
            "p2^2=p2": vsub(m(p2, p2), p2),
            "p1p2=0": m(p1, p2),
            "p1q=q/2": vsub(m(p1, q), scale(HALF, q)),
            "p2q=q/2": vsub(m(p2, q), scale(HALF, q)),
            "q^2=p1+p2": vsub(m(q, q), axpy(dict(p1), 1, p2)),
            "p1+p2=1": vsub(axpy(dict(p1), 1, p2), one),
        }

    def validate(self):
        if self.J.unit is None:
            raise NotATriangleError("J has no unit")
        for name, res in self.relations().items():
            if res:
                raise NotATriangleError(f"triangle relation {name} fails", witness=name)

    # -- Peirce and connection involution ----------------------------------
    @property
    def peirce(self) -> Peirce:
        if self._peirce is None:
            self._peirce = peirce(self.J, self.p1)
        return self._peirce

    def sigma(self, x):
        """Connection involution 2(qx)q - x."""
        m = self.ops.m
        return vsub(scale(2, m(m(self.q, x), self.q)), x)

    def involution(self) -> Involution:
        return Involution(self.J, lambda k: self.sigma({k: ONE}), name="connection")

    def connection_report(self):
        """Automorphism of order 2, stabilizes J12, swaps J11 and J22, sigma L_q = L_q sigma = L_q."""
        J, m, s = self.J, self.ops.m, self.sigma
        P = self.peirce
        S11, S12, S22 = P.spans()
        rep = Report("connection-involution")
        auto = rep.add(Check("automorphism"))
        order = rep.add(Check("order-2"))
        for a in J.keys:
            x = {a: ONE}
            order.count += 1
            if vsub(s(s(x)), x):
                order.fail(a)
            for b in J.keys:
                y = {b: ONE}
                auto.count += 1
                if vsub(s(m(x, y)), m(s(x), s(y))):
                    auto.fail((a, b))
        stab = rep.add(Check("stabilizes-J12"))
        for v in P.J12:
            stab.count += 1
            if not S12.contains(s(v)):
                stab.fail(v)
        swap = rep.add(Check("swaps-J11-J22"))
        for src, dst in ((P.J11, S22), (P.J22, S11)):
            for v in src:
                swap.count += 1
                if not dst.contains(s(v)):
                    swap.fail(v)
        lq = rep.add(Check("sigma-Lq=Lq-sigma=Lq"))
        for a in J.keys:
            x = {a: ONE}
            qx = m(self.q, x)
            lq.count += 1
            if vsub(s(qx), qx) or vsub(m(self.q, s(x)), qx):
                lq.fail(a)
        minus = rep.add(Check("J12-minus=ker-Lq"))
        Pm = _span(self.half_minus())
        Kq = _span([v for v in self._kernel_q_on_j12()])
        minus.count = len(P.J12)
        if Pm.dim != Kq.dim or any(not Pm.contains(v) for v in Kq.basis()):
            minus.fail("J12(-) differs from {b in J12 : qb = 0}")
        return rep

    def _half_eigen(self, sign):
        P = self.peirce
        cols = [axpy(self.sigma(v), -sign, v) for v in P.J12]
        out = []
        for rel in kernel(cols):
            w = {}
            for i, c in rel.items():
                axpy(w, c, P.J12[i])
            out.append(w)
        return out

    def half_plus(self):
        """Basis of J12(+), the sigma-fixed part of the half space."""
        return self._half_eigen(1)

    def half_minus(self):
        """Basis of J12(-), the sigma-negated part of the half space."""
        return self._half_eigen(-1)

    def _kernel_q_on_j12(self):
        P = self.peirce
        cols = [self.ops.m(self.q, v) for v in P.J12]
        out = []
        for rel in kernel(cols):
            w = {}
            for i, c in rel.items():
                axpy(w, c, P.J12[i])
            out.append(w)
        return out

    # -- products on the half space ------------------------------------------
    def isotope_product(self, u, v):
        """u ._q v = (uq)v + u(qv) - (uv)q."""
        m, q = self.ops.m, self.q
        out = m(m(u, q), v)
        axpy(out, 1, m(u, m(q, v)))
        axpy(out, -1, m(m(u, v), q))
        return out

    def _x11_solver(self):
        """Coordinates for x11 -> x11 q, checked to be an isomorphism J11 -> J12(+)."""
        if self._x11 is None:
            P = self.peirce
            images = [self.ops.m(x, self.q) for x in P.J11]
            sp = _span(images)
            plus = self.half_plus()
            if sp.dim != len(P.J11) or sp.dim != len(plus) or any(not sp.contains(a) for a in plus):
                raise InternalInconsistencyError("x11 -> x11 q is not an isomorphism J11 -> J12(+)")
            self._x11 = sp
        return self._x11

    def preimage_x11(self, a):
        """The x11 in J11 with x11 q = a."""
        sp = self._x11_solver()
        c = sp.coords(a)
        if c is None:
            raise InternalInconsistencyError("symmetric half-space element has no preimage in J11", witness=a)
        out = {}
        for i, x in c.items():
            axpy(out, x, self.peirce.J11[i])
        return out

    def split_half(self, u):
        """u = a + b with a in J12(+), b in J12(-)."""
        su = self.sigma(u)
        return scale(HALF, axpy(dict(u), 1, su)), scale(HALF, vsub(u, su))

    def half_space_product(self, u, v):
        """The product on J12 assembled from a = x11 q and the skew parts b."""
        m, s = self.ops.m, self.sigma
        a, b = self.split_half(u)
        a2, b2 = self.split_half(v)
        x, x2 = self.preimage_x11(a), self.preimage_x11(a2)
        out = {}
        for left, right in ((x, a2), (x2, a), (x, b2), (s(x), b2), (x2, b), (s(x2), b)):
            axpy(out, HALF, m(left, right))
        axpy(out, -1, m(m(b, b2), self.q))
        return out

    def half_space_algebra(self, product="isotope"):
        """(J12, product) as a trivially graded finite algebra on the Peirce basis of J12."""
        P = self.peirce
        sp = _span(P.J12)
        prod = self.isotope_product if product == "isotope" else self.half_space_product
        n = len(P.J12)

        def mul(i, j):
            c = sp.coords(prod(P.J12[i], P.J12[j]))
            if c is None:
                raise InternalInconsistencyError("half-space product leaves J12", witness=(i, j))
            return c

        unit = sp.coords(self.q)
        spec = GroupSpec(0, ())
        return GradedAlgebra(spec, lambda k: (), mul, keys=list(range(n)), unit=unit,
                             kind_claim="jordan", name=f"J12({product})")

    # -- standalone lemmas --------------------------------------------------
    def proof_identities(self):
        """Identities used in the proof that the two half-space products agree.

        ``*-literal`` checks are the forms (q x_ii) x12 = (q x12) x_ii + (q(x12 x_ii)) p_j
        and (x_ii y_ii) x12 = (x_ii x12) y_ii; they fail in general and are kept
        to document that.  ``*-corrected`` checks are the forms that hold:

            (q x_ii) x12 = (q x12) x_ii + (q(x12 x_ii)) p_j - (q(x12 x_ii)) p_i
            (x_ii y_ii) x12 = (x_ii x12) y_ii + (y_ii x12) x_ii
        """
        m, q = self.ops.m, self.q
        P = self.peirce
        rep = Report("triangle-proof-identities")
        c3l = rep.add(Check("calc3-literal"))
        c3c = rep.add(Check("calc3-corrected"))
        c4l = rep.add(Check("calc4-literal"))
        c4c = rep.add(Check("calc4-corrected"))
        spaces = ((P.J11, self.p1, self.p2), (P.J22, self.p2, self.p1))
        for Jii, pi, pj in spaces:
            for xi, x12 in itertools.product(Jii, P.J12):
                qx12 = m(q, x12)
                lhs = m(m(q, xi), x12)
                t = m(q, m(x12, xi))
                lit = axpy(m(qx12, xi), 1, m(t, pj))
                c3l.count += 1
                if vsub(lhs, lit):
                    c3l.fail((xi, x12))
                cor = axpy(m(qx12, xi), 1, m(t, pj))
                axpy(cor, -1, m(t, pi))
                c3c.count += 1
                if vsub(lhs, cor):
                    c3c.fail((xi, x12))
            for xi, yi, x12 in itertools.product(Jii, Jii, P.J12):
                lhs = m(m(xi, yi), x12)
                c4l.count += 1
                if vsub(lhs, m(m(xi, x12), yi)):
                    c4l.fail((xi, yi, x12))
                c4c.count += 1
                if vsub(lhs, axpy(m(m(xi, x12), yi), 1, m(m(yi, x12), xi))):
                    c4c.fail((xi, yi, x12))
        return rep


def verify_isotope_theorem(T: TriangleJordan):
    """The two half-space products agree on a basis, (J12, .) is Jordan, sigma is an involution of it."""
    P = T.peirce
    rep = Report("isotope-theorem")
    for c in P.report.checks:
        rep.add(c)
    agree = rep.add(Check("isotope=half-space-product"))
    for u, v in itertools.product(P.J12, P.J12):
        agree.count += 1
        if vsub(T.isotope_product(u, v), T.half_space_product(u, v)):
            agree.fail((u, v))
    H = T.half_space_algebra("half-space")
    for c in ga_check_kind(H, "jordan").checks:
        c.name = "J12:" + c.name
        rep.add(c)
    inv = rep.add(Check("sigma-involution-of-J12"))
    for u, v in itertools.product(P.J12, P.J12):
        inv.count += 1
        s = T.sigma
        if vsub(s(T.half_space_product(u, v)), T.half_space_product(s(u), s(v))):
            inv.fail((u, v))
    for u in P.J12:
        if vsub(T.sigma(T.sigma(u)), u):
            inv.fail(u)
    return rep


# -- test-instance generator ------------------------------------------------------


def hermitian_2x2(alg: GradedAlgebra, sigma: Involution, check_kind=True) -> TriangleJordan:
    """2x2 matrices over ``alg`` fixed by conjugate transpose, with product (xy + yx)/2.

    Basis: ("11", a), ("22", a) for symmetric basis keys a, and ("12", k) for
    every basis key k (the matrix k E12 + sigma(k) E21).  The triangle is
    p1 = E11, p2 = E22, q = E12 + E21.
    """
    if not alg.is_finite:
        raise KindMismatchError("hermitian matrices need a finite coordinate algebra")
    if check_kind:
        rep = ga_check_kind(alg, "associative")
        if not rep.passed:
            raise KindMismatchError("coordinate algebra is not associative", witness=rep.failures()[0].witnesses[:1])
    alg, sigma, _ = adapt_to_involution(alg, sigma)
    sym = [k for k in alg.keys if sigma.sign(k) == 1]
    keys = [("11", a) for a in sym] + [("22", a) for a in sym] + [("12", k) for k in alg.keys]

    def to_matrix(key):
        t, k = key
        e = {k: ONE}
        z = {}
        if t == "11":
            return [[e, z], [z, z]]
        if t == "22":
            return [[z, z], [z, e]]
        return [[z, e], [sigma({k: ONE}), z]]

    def matmul(X, Y):
        return [[axpy(alg.mul(X[i][0], Y[0][j]), 1, alg.mul(X[i][1], Y[1][j])) for j in range(2)]
                for i in range(2)]

    def from_matrix(X):
        out = {}
        for k, c in X[0][0].items():
            out[("11", k)] = c
        for k, c in X[1][1].items():
            out[("22", k)] = c
        for k, c in X[0][1].items():
            out[("12", k)] = c
        if vsub(sigma(X[0][1]), X[1][0]):
            raise InternalInconsistencyError("product is not hermitian")
        return out

    def mul(x, y):
        X, Y = to_matrix(x), to_matrix(y)
        XY, YX = matmul(X, Y), matmul(Y, X)
        S = [[scale(HALF, axpy(dict(XY[i][j]), 1, YX[i][j])) for j in range(2)] for i in range(2)]
        return from_matrix(S)

    def degree(key):
        return alg.degree(key[1])

    one = alg.unit
    unit = {("11", k): c for k, c in one.items()}
    unit.update({("22", k): c for k, c in one.items()})
    J = GradedAlgebra(alg.spec, degree, mul, keys=keys, unit=unit, kind_claim="jordan",
                      name=f"H2({alg.name})", label=lambda k: f"{k[0]}:{alg.label(k[1])}")
    p1 = {("11", k): c for k, c in one.items()}
    p2 = {("22", k): c for k, c in one.items()}
    q = {("12", k): c for k, c in one.items()}
    return TriangleJordan(J, p1, p2, q)


def symmetric_2x2() -> TriangleJordan:
    """Symmetric 2x2 rational matrices with the standard triangle."""
    spec = GroupSpec(0, ())
    Q1 = GradedAlgebra(spec, lambda k: (), lambda a, b: {0: ONE}, keys=[0], unit={0: ONE},
                       kind_claim="associative", name="Q", label=lambda k: "1")
    return hermitian_2x2(Q1, Involution(Q1, lambda k: {k: ONE}, name="id"))
