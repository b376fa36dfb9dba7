"""The Lie algebra sp_2r(a) = (g ⊗ A) ⊕ (s ⊗ B) ⊕ D built from a coordinate algebra with involution.

Basis keys:
    ("g", m, a)  m-th basis matrix of sp_2r tensor the symmetric basis element a
    ("s", p, b)  p-th basis matrix of s tensor the skew basis element b
    ("d", g, i)  i-th basis derivation of degree g

D is held concretely: every basis derivation is an inner derivation
D_{alpha,alpha'} of a recorded generator pair, and linear relations among them
are decided by comparing their values on a set T of test keys (all keys of a
finite algebra; a radius-1 window containing the algebra generators otherwise).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import GradedAlgebra, Involution, adapt_to_involution, ga_check_kind, nucleus_contains, ga_split_symmetric
from .errors import (
    ClosureFailureError,
    KindMismatchError,
    NotLieError,
    SpecMismatchError,
    SptoriError,
)
from .foundations import HALF, ONE, Q
from .lie import LieAlgebra
from .linalg import Span, axpy, scale

# Normalization of the inner derivations.  For r >= 3 the operator
# ([L_a,L_b] + [R_a,R_b] + [L_a,R_b]) + (same for a^sigma, b^sigma) is scaled
# by D_SCALE_HIGH(r); each bracket is the Schafer inner derivation of an
# alternative algebra, so the result is a derivation.  For r = 2 the
# plus-algebra expression is scaled by D_SCALE_TWO.  Both scales are the ones
# for which the Jacobi identity holds on the constructed algebra.


def D_SCALE_HIGH(r):
    return Q(1, 4 * r)


D_SCALE_TWO = HALF


@dataclass(frozen=True)
class SpConfig:
    r: int
    window: int | None = None  # None: full mode (finite G)
    d_window: int = 1  # radius for generator pairs of D in window mode
    test_window: int = 1  # radius of the fingerprint set T in window mode
    check_kind: bool = True


class InnerDerivations:
    """Evaluate D_{alpha,alpha'} on basis keys of the coordinate algebra."""

    def __init__(self, alg: GradedAlgebra, sign, r):
        self.alg = alg
        self.sign = sign
        self.r = r
        self._cache = {}

    def _m(self, x, y):
        return self.alg.mul(x, y)

    def apply(self, a, b, x):
        """D_{a,b}(x) for basis keys a, b, x."""
        key = (a, b, x)
        v = self._cache.get(key)
        if v is None:
            v = self._compute(a, b, x)
            self._cache[key] = v
        return v

    def apply_vec(self, a, b, v):
        out = {}
        for k, c in v.items():
            axpy(out, c, self.apply(a, b, k))
        return out

    def _compute(self, a, b, x):
        alg = self.alg
        A, B, X = {a: ONE}, {b: ONE}, {x: ONE}
        m = alg.mul
        s = self.sign(a) * self.sign(b)
        if self.r == 2:
            def Lp(u, v):
                return scale(HALF, axpy(m(u, v), 1, m(v, u)))
            comm = axpy(Lp(A, Lp(B, X)), -1, Lp(B, Lp(A, X)))
            return scale(D_SCALE_TWO * (1 + s), comm)
        LL = axpy(m(A, m(B, X)), -1, m(B, m(A, X)))
        RR = axpy(m(m(X, B), A), -1, m(m(X, A), B))
        LR = axpy(m(A, m(X, B)), -1, m(m(A, X), B))
        out = axpy(dict(LL), 1, RR)
        axpy(out, 1, LR)
        # the sigma-twisted copy: L_{a^s}, L_{b^s} scale by the signs
        axpy(out, s, LL)
        axpy(out, s, RR)
        axpy(out, s, LR)
        return scale(D_SCALE_HIGH(self.r), out)


def inner_der(alpha, alpha2, r, alg, sigma, keys=None):
    """D_{alpha,alpha'} as a matrix ``{key: image}`` on ``keys`` (default: all test keys).

    alpha, alpha' are basis keys of ``alg`` (sigma diagonal) or vectors.
    """
    if r < 2:
        raise SptoriError("rank must be at least 2")
    ider = InnerDerivations(alg, sigma.sign, r)
    keys = alg.test_keys(None if alg.is_finite else 1) if keys is None else keys
    av = alpha if isinstance(alpha, dict) else {alpha: ONE}
    bv = alpha2 if isinstance(alpha2, dict) else {alpha2: ONE}
    out = {}
    for x in keys:
        img = {}
        for a, ca in av.items():
            for b, cb in bv.items():
                axpy(img, ca * cb, ider.apply(a, b, x))
        if img:
            out[x] = img
    return out


class SpAlgebra(LieAlgebra):
    def __init__(self, alg: GradedAlgebra, sigma: Involution, config: SpConfig):
        super().__init__(alg.spec, config.r)
        self.alg = alg
        self.sigma = sigma
        self.config = config
        self.window = config.window
        if alg.is_finite and self.window is not None and alg.spec.is_finite:
            self.window = None
        if not alg.is_finite and self.window is None:
            raise SpecMismatchError("an infinite coordinate algebra needs window mode")
        self.ider = InnerDerivations(alg, self.sign, self.r)
        if alg.is_finite:
            self.T = list(alg.keys)
        else:
            self.T = alg.test_keys(config.test_window)
        self._dspan = {}
        self._dpairs = {}
        self._dcoord = {}
        self._unit_keys = set(alg.unit or ())

    # -- coordinate algebra helpers ----------------------------------------
    def sign(self, k):
        return self.sigma.sign(k)

    def a_keys(self, g):
        return [k for k in self.alg.component(g) if self.sign(k) == 1]

    def b_keys(self, g):
        return [k for k in self.alg.component(g) if self.sign(k) == -1]

    def _slot(self, v, want):
        for k in v:
            if self.sign(k) != want:
                raise SpecMismatchError(
                    f"coefficient {self.alg.label(k)} lands in the wrong symmetric/skew slot", witness=k
                )
        return v

    # -- derivations -------------------------------------------------------
    def _fingerprint_pair(self, a, b):
        out = {}
        for t in self.T:
            for k, c in self.ider.apply(a, b, t).items():
                out[(t, k)] = c
        return out

    def _fingerprint_op(self, op):
        out = {}
        for t in self.T:
            for k, c in op({t: ONE}).items():
                out[(t, k)] = c
        return out

    def _candidate_pairs(self, g):
        alg = self.alg
        if alg.is_finite:
            src = alg.keys
        else:
            src = alg.test_keys(self.config.d_window)
        pairs = []
        seen = set()
        for a in src:
            if a in self._unit_keys:
                continue
            h = alg.spec.sub(g, alg.degree(a))
            for b in alg.component(h):
                if b in self._unit_keys or a == b or self.sign(a) != self.sign(b):
                    continue
                key = frozenset((a, b))
                if key in seen:
                    continue
                seen.add(key)
                pairs.append((a, b))
        return pairs

    def d_basis(self, g):
        """Generator pairs whose inner derivations form a basis of D^g."""
        g = self.spec.reduce(g)
        if g not in self._dspan:
            sp = Span()
            pairs = []
            for a, b in self._candidate_pairs(g):
                fp = self._fingerprint_pair(a, b)
                if fp and sp.add(fp, len(pairs)) is None:
                    pairs.append((a, b))
            self._dspan[g] = sp
            self._dpairs[g] = pairs
        return self._dpairs[g]

    def d_dim(self, g):
        return len(self.d_basis(g))

    def d_coords_pair(self, a, b):
        """Coordinates of D_{a,b} in the basis of D^{deg a + deg b}; raises on failure."""
        key = (a, b)
        c = self._dcoord.get(key)
        if c is None:
            if a in self._unit_keys or b in self._unit_keys or a == b:
                c = {}
            else:
                g = self.spec.add(self.alg.degree(a), self.alg.degree(b))
                self.d_basis(g)
                fp = self._fingerprint_pair(a, b)
                c = self._dspan[g].coords(fp) if fp else {}
                if c is None:
                    raise ClosureFailureError(
                        f"D_({self.alg.label(a)},{self.alg.label(b)}) is outside the computed span of D^{g}",
                        witness=(a, b),
                    )
            self._dcoord[key] = c
        return c

    def d_apply(self, g, i, v):
        a, b = self.d_basis(g)[i]
        return self.ider.apply_vec(a, b, v)

    def d_commutator(self, g1, i, g2, j):
        a1, b1 = self.d_basis(g1)[i]
        a2, b2 = self.d_basis(g2)[j]
        ap = self.ider.apply_vec

        def op(v):
            return axpy(ap(a1, b1, ap(a2, b2, v)), -1, ap(a2, b2, ap(a1, b1, v)))

        g = self.spec.add(g1, g2)
        fp = self._fingerprint_op(op)
        if not fp:
            return {}
        self.d_basis(g)
        c = self._dspan[g].coords(fp)
        if c is None:
            raise ClosureFailureError(
                f"commutator of D^{g1}[{i}] and D^{g2}[{j}] leaves the span of D^{g}",
                witness=((g1, i), (g2, j)),
            )
        return {("d", g, k): x for k, x in c.items()}

    # -- LieAlgebra interface ----------------------------------------------
    def weight(self, k):
        t = k[0]
        if t == "g":
            return self.model.g[k[1]].weight
        if t == "s":
            return self.model.s[k[1]].weight
        return self.roots.zero

    def gdeg(self, k):
        if k[0] == "d":
            return k[1]
        return self.spec.reduce(self.alg.degree(k[2]))

    def cell(self, mu, g):
        mu = tuple(mu)
        g = self.spec.reduce(g)
        M = self.model
        out = []
        if not any(mu):
            for a in self.a_keys(g):
                out += [("g", m, a) for m in M.h_indices]
            for b in self.b_keys(g):
                out += [("s", p, b) for p in M.s0_indices]
            out += [("d", g, i) for i in range(self.d_dim(g))]
            return out
        if mu in M.g_index:
            out += [("g", M.g_index[mu], a) for a in self.a_keys(g)]
        if mu in M.s_index:
            out += [("s", M.s_index[mu], b) for b in self.b_keys(g)]
        return out

    def keys(self, window=None):
        out = []
        M = self.model
        for g in self.degrees(window):
            for a in self.a_keys(g):
                out += [("g", m, a) for m in range(M.dim_g)]
            for b in self.b_keys(g):
                out += [("s", p, b) for p in range(M.dim_s)]
            out += [("d", g, i) for i in range(self.d_dim(g))]
        return out

    def g_vector(self, m):
        return {("g", m, k): c for k, c in self.alg.unit.items()}

    def split_element(self, v):
        """Group a vector by matrix slot: {("g", m): A-vector, ("s", p): B-vector, ("d", g, i): c}."""
        out = {}
        for k, c in v.items():
            if k[0] == "d":
                out[k] = c
            else:
                out.setdefault((k[0], k[1]), {})[k[2]] = c
        return out

    def label(self, k):
        M = self.model
        if k[0] == "g":
            return f"{M.g[k[1]].label}⊗{self.alg.label(k[2])}"
        if k[0] == "s":
            return f"{M.s[k[1]].label}⊗{self.alg.label(k[2])}"
        a, b = self.d_basis(k[1])[k[2]]
        return f"D({self.alg.label(a)},{self.alg.label(b)})"

    def _bracket_basis(self, u, v):
        tu, tv = u[0], v[0]
        if tu == "d" or tv == "d":
            if tu == "d" and tv == "d":
                return self.d_commutator(u[1], u[2], v[1], v[2])
            if tv == "d":
                return scale(-1, self._bracket_d(v, u))
            return self._bracket_d(u, v)
        if tu == "s" and tv == "g":
            return scale(-1, self._bracket_basis(v, u))
        M = self.model
        alg = self.alg
        x, y = {u[2]: ONE}, {v[2]: ONE}
        out = {}
        m, n = u[1], v[1]
        if tu == "g" and tv == "g":
            circ = self._slot(alg.circ(x, y), 1)
            comm = self._slot(alg.comm(x, y), -1)
            self._emit(out, "g", M.gg_br[m, n], circ)
            self._emit(out, "s", M.gg_ci[m, n], comm)
            tr = M.gg_tr[m, n]
            if tr:
                self._emit_d(out, tr, u[2], v[2])
            return out
        if tu == "g" and tv == "s":
            comm = self._slot(alg.comm(x, y), 1)
            circ = self._slot(alg.circ(x, y), -1)
            self._emit(out, "g", M.gs_ci[m, n], comm)
            self._emit(out, "s", M.gs_br[m, n], circ)
            return out
        # s, s
        circ = self._slot(alg.circ(x, y), 1)
        comm = self._slot(alg.comm(x, y), -1)
        self._emit(out, "g", M.ss_br[m, n], circ)
        self._emit(out, "s", M.ss_ci[m, n], comm)
        tr = M.ss_tr[m, n]
        if tr:
            self._emit_d(out, tr, u[2], v[2])
        return out

    @staticmethod
    def _emit(out, slot, mat_coords, coeff_vec):
        if not mat_coords or not coeff_vec:
            return
        for p, c in mat_coords.items():
            for k, x in coeff_vec.items():
                key = (slot, p, k)
                val = out.get(key, 0) + HALF * c * x
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)

    def _emit_d(self, out, tr, a, b):
        coords = self.d_coords_pair(a, b)
        if not coords:
            return
        g = self.spec.add(self.alg.degree(a), self.alg.degree(b))
        for i, c in coords.items():
            key = ("d", g, i)
            val = out.get(key, 0) + tr * c
            if val:
                out[key] = val
            else:
                out.pop(key, None)

    def _bracket_d(self, d, v):
        g, i = d[1], d[2]
        img = self.d_apply(g, i, {v[2]: ONE})
        return {(v[0], v[1], k): c for k, c in img.items()}


def _check_kind_for_rank(alg, sigma, r, window):
    kind = alg.kind_claim
    if r >= 4 and kind != "associative":
        raise KindMismatchError(f"sp_{2 * r} needs an associative coordinate algebra, got {kind}")
    if r == 3 and kind not in ("associative", "alternative"):
        raise KindMismatchError(f"sp_6 needs an alternative coordinate algebra, got {kind}")
    if r == 2 and kind not in ("associative", "jordan", "alternative"):
        raise KindMismatchError(f"sp_4 needs an associative or Clifford-type coordinate algebra, got {kind}")
    check = kind if kind != "jordan" else "jordan"
    rep = ga_check_kind(alg, check, window=window)
    if not rep.passed:
        raise KindMismatchError(f"coordinate algebra fails the {check} check", witness=rep.failures()[0].witnesses[:1])
    if r == 3 and kind == "alternative":
        A, _ = ga_split_symmetric(alg, sigma, window)
        ok, wit = nucleus_contains(alg, [v for vs in A.values() for v in vs], window)
        if not ok:
            raise KindMismatchError("symmetric elements are not in the nucleus", witness=wit)


def build_sp(alg: GradedAlgebra, sigma: Involution, r: int, window=None, jacobi=True,
             jacobi_window=None, jobs=1, d_window=1, check_kind=True):
    """Construct sp_2r(alg) and verify Jacobi (raises NotLieError on failure).

    Full mode for finite G; window mode (``window=w``) for Z^n gradings, where
    Jacobi is checked on triples of degree inside ``jacobi_window`` (default
    ``min(w, 1)``).
    """
    if r < 2:
        raise SptoriError("rank must be at least 2")
    if alg.unit is None:
        raise SptoriError("the coordinate algebra must be unital")
    if alg.is_finite and not sigma.is_diagonal(alg.keys):
        alg, sigma, _ = adapt_to_involution(alg, sigma)
    kw = None if alg.is_finite else 1
    if check_kind:
        _check_kind_for_rank(alg, sigma, r, kw)
    cfg = SpConfig(r=r, window=window, d_window=d_window)
    L = SpAlgebra(alg, sigma, cfg)
    if jacobi:
        from .lie_checks import jacobi_check
        jw = jacobi_window if jacobi_window is not None else (None if L.window is None else min(L.window, 1))
        ch = jacobi_check(L, window=jw, jobs=jobs)
        L.jacobi_report = ch
        if ch.status == "fail":
            raise NotLieError("Jacobi identity fails", witness=ch.witnesses[0])
    return L
