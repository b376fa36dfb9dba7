"""Recovering the coordinate algebra a = A ⊕ B from a C_r-graded Lie algebra.

A Lie algebra graded by C_r with grading subalgebra g = sp_2r decomposes as
``(g ⊗ A) ⊕ (s ⊗ B) ⊕ D`` as a g-module.  The multiplicity spaces are read
off concretely:

* ``A^g`` is the long root cell L_{2 eps1}^g (a ↔ x_{2 eps1} ⊗ a);
* ``B^g`` is the kernel of ad x_{eps1+eps2} on the short cell L_{eps1-eps2}^g
  (b ↔ s_{eps1-eps2} ⊗ b);
* ``D^g`` is the centralizer of g in L_0^g.

Every other x ⊗ a (resp. s ⊗ b) is reached by applying ad(g) words to the
reference vector, so each cell can be decomposed into its three parts, and
the check that every cell is exactly spanned by these transports is the
statement that A_mu^g and B_mu^g do not depend on mu.  The products are
then read from brackets of witness matrices, using

    [x⊗a, y⊗a'] = ½[x,y]⊗(a∘a') + ½(x∘y)⊗[a,a'] + tr(xy) D_{a,a'}.

For r = 2 the skew product on B is not determined by the Lie algebra; it is
left unset until :func:`define_skew_product`.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field

from .algebra import GradedAlgebra, ga_check_kind, nucleus_contains
from .errors import (
    InconclusiveError,
    LemmaViolationError,
    NotCoordinatizableError,
    SptoriError,
    TheoremViolationError,
)
from .foundations import HALF, ONE, Q, is_subgroup, subgroup_generated, subgroup_status_in_window
from .linalg import Span, axpy, kernel, scale, vsub
from .report import Check, Report, FAIL, INCONCLUSIVE, NOT_APPLICABLE, PASS
from .symplectic import is_zero_mat, mat_bracket, mat_circ, product_witnesses


def _eps(r, *terms):
    out = [0] * r
    for i, c in terms:
        out[i] += c
    return tuple(out)


def _neg(mu):
    return tuple(-x for x in mu)


def _add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def _lin(pairs):
    out = {}
    for c, v in pairs:
        if c and v:
            axpy(out, c, v)
    return out


# -- transport along ad(g) words ------------------------------------------------


class _Transport:
    """Module map from g (or s) into L fixed by the image of one weight vector.

    A breadth-first search over ad(x_m) words starting at the reference
    matrix finds a spanning set of the module; every basis matrix is then a
    fixed combination of those words, and the same words applied in L give
    the image of that basis matrix.
    """

    def __init__(self, M, entries, start):
        flat = M._flat
        mats = [entries[start].m]
        self.steps = [(None, None)]
        sp = Span()
        sp.add(flat(mats[0]), 0)
        frontier = [0]
        while frontier and sp.dim < len(entries):
            new = []
            for i in frontier:
                for m, e in enumerate(M.g):
                    x = mat_bracket(e.m, mats[i])
                    if is_zero_mat(x):
                        continue
                    j = len(mats)
                    if sp.add(flat(x), j) is None:
                        mats.append(x)
                        self.steps.append((i, m))
                        new.append(j)
            frontier = new
        self.coef = []
        for e in entries:
            c = sp.coords(flat(e.m))
            if c is None:
                raise SptoriError("module is not generated by the reference vector")
            self.coef.append(c)

    def images(self, L, gv, v):
        vecs = [v]
        for parent, m in self.steps[1:]:
            vecs.append(L.bracket(gv[m], vecs[parent]))
        return [_lin((c, vecs[i]) for i, c in coef.items()) for coef in self.coef]


class _Reader:
    """Decomposition of the cells of L into g⊗A, s⊗B and D parts."""

    def __init__(self, L):
        self.L = L
        r = self.r = L.r
        M = self.M = L.model
        self.gv = [L.g_vector(m) for m in range(M.dim_g)]
        self.long = _eps(r, (0, 2))
        self.short = _eps(r, (0, 1), (1, -1))
        self.nu = _eps(r, (0, 1), (1, 1))
        self.m_long = M.g_index[self.long]
        self.m_long_neg = M.g_index[_neg(self.long)]
        self.m_nu = M.g_index[self.nu]
        self.p_ref = M.s_index[self.short]
        self.p_ref_neg = M.s_index[_neg(self.short)]
        self.tg = _Transport(M, M.g, self.m_long)
        self.ts = _Transport(M, M.s, self.p_ref)
        self._A, self._B, self._D = {}, {}, {}
        self._lift = {}
        self._spans = {}
        self._g_by_weight = {}
        for m, e in enumerate(M.g):
            self._g_by_weight.setdefault(e.weight, []).append(m)
        self._s_by_weight = {}
        for p, e in enumerate(M.s):
            self._s_by_weight.setdefault(e.weight, []).append(p)

    # multiplicity spaces
    def A(self, g):
        g = self.L.spec.reduce(g)
        if g not in self._A:
            self._A[g] = [{k: ONE} for k in self.L.cell(self.long, g)]
        return self._A[g]

    def B(self, g):
        g = self.L.spec.reduce(g)
        if g not in self._B:
            cell = self.L.cell(self.short, g)
            cols = [self.L.bracket(self.gv[self.m_nu], {k: ONE}) for k in cell]
            self._B[g] = [{cell[i]: c for i, c in rel.items()} for rel in kernel(cols)]
        return self._B[g]

    def D(self, g):
        """Basis of the centralizer of g in L_0^g."""
        g = self.L.spec.reduce(g)
        if g not in self._D:
            cell = self.L.cell(self.L.roots.zero, g)
            cols = []
            for k in cell:
                col = {}
                for m, x in enumerate(self.gv):
                    for kk, c in self.L.bracket(x, {k: ONE}).items():
                        col[(m, kk)] = c
                cols.append(col)
            self._D[g] = [{cell[i]: c for i, c in rel.items()} for rel in kernel(cols)]
        return self._D[g]

    def lift(self, key):
        """Images of every basis matrix tensor the coordinate basis element ``key``."""
        v = self._lift.get(key)
        if v is None:
            kind, g, i = key
            if kind == "a":
                v = self.tg.images(self.L, self.gv, self.A(g)[i])
            else:
                v = self.ts.images(self.L, self.gv, self.B(g)[i])
            self._lift[key] = v
        return v

    def lift_matrix(self, key, coords):
        imgs = self.lift(key)
        return _lin((c, imgs[m]) for m, c in coords.items())

    # cell decomposition
    def cell_span(self, mu, g):
        mu = tuple(mu)
        g = self.L.spec.reduce(g)
        sk = (mu, g)
        if sk in self._spans:
            return self._spans[sk]
        L = self.L
        zero = not any(mu)
        gm = self.M.h_indices if zero else self._g_by_weight.get(mu, [])
        sp_ = self.M.s0_indices if zero else self._s_by_weight.get(mu, [])
        sp = Span()
        ntags = 0
        for i in range(len(self.A(g))):
            imgs = self.lift(("a", g, i))
            for m in gm:
                ntags += 1
                if sp.add(imgs[m], ("g", m, ("a", g, i))) is not None:
                    raise NotCoordinatizableError(
                        f"g⊗A is not a direct sum in the cell {mu}, {g}", witness=(mu, g, m, i))
        for i in range(len(self.B(g))):
            imgs = self.lift(("b", g, i))
            for p in sp_:
                ntags += 1
                if sp.add(imgs[p], ("s", p, ("b", g, i))) is not None:
                    raise NotCoordinatizableError(
                        f"s⊗B is not a direct sum in the cell {mu}, {g}", witness=(mu, g, p, i))
        if zero:
            for j, d in enumerate(self.D(g)):
                if sp.add(d, ("d", j)) is not None:
                    raise NotCoordinatizableError(
                        f"D meets g⊗A + s⊗B in degree {g}", witness=(g, j))
        cell = L.cell(mu, g)
        for k in cell:
            if not sp.contains({k: ONE}):
                raise NotCoordinatizableError(
                    f"{L.label(k)} is not in (g⊗A^g) + (s⊗B^g) + D^g: the multiplicity spaces depend on the root",
                    witness=(mu, g, k))
        if sp.dim != len(cell):
            raise NotCoordinatizableError(f"transported spaces leave the cell {mu}, {g}", witness=(mu, g))
        self._spans[sk] = sp
        return sp

    def decompose(self, v, mu, g):
        """Parts of v in L_mu^g: {("g", m): A-vector, ("s", p): B-vector, "d": L-vector}."""
        c = self.cell_span(mu, g).coords(v)
        if c is None:
            raise NotCoordinatizableError("vector is outside its cell", witness=(mu, g))
        out = {}
        dpart = {}
        for tag, x in c.items():
            if tag[0] == "d":
                axpy(dpart, x, self.D(g)[tag[1]])
            else:
                out.setdefault((tag[0], tag[1]), {})[tag[2]] = x
        if dpart:
            out["d"] = dpart
        return out


def _read_slot(parts, slot, coords, what):
    """The X with parts[(slot, m)] = ½ coords[m] X for every m (other slot entries zero)."""
    if not coords:
        raise SptoriError(f"witness for {what} vanishes")
    m0 = min(coords)
    x = scale(2 / coords[m0], parts.get((slot, m0), {}))
    for key, vec in parts.items():
        if key == "d" or key[0] != slot:
            continue
        want = scale(HALF * coords.get(key[1], 0), x)
        if vsub(vec, want):
            raise NotCoordinatizableError(f"inconsistent {what} read-off", witness=key)
    return x


def _expect_only(parts, slots, what):
    for key, vec in parts.items():
        name = key if key == "d" else key[0]
        if name not in slots and vec:
            raise NotCoordinatizableError(f"unexpected {name} component in {what}", witness=key)


# -- the bundle ---------------------------------------------------------------


@dataclass
class SplitB:
    """B = [A,A] ⊕ B0 degree by degree, with a factorization of each [A,A] basis vector."""

    AA: dict = field(default_factory=dict)  # g -> list of B-vectors
    factors: dict = field(default_factory=dict)  # g -> list of (a1, a2) with AA[g][i] = [a1, a2]
    B0: dict = field(default_factory=dict)  # g -> list of B-vectors
    spans: dict = field(default_factory=dict)  # g -> Span tagged ("aa", i) / ("b0", i)


class CoordinateBundle:
    """The coordinate algebra a = A ⊕ B of a C_r-graded Lie algebra, read lazily.

    Basis keys are ``("a", g, i)`` and ``("b", g, i)``; elements are sparse
    dicts over them.  ∘ and [.,.] are computed on demand and cached, and any
    cached constant can be overwritten with :meth:`set_constant` (used by the
    mutation tests).  ``window`` bounds every sweep when G is infinite.
    """

    def __init__(self, L, window=None):
        self.L = L
        self.r = L.r
        self.spec = L.spec
        self.window = None if L.is_finite else (window if window is not None else L.window)
        if not L.is_finite and self.window is None:
            raise InconclusiveError("an infinite grading group needs a window")
        self.reader = _Reader(L)
        self.W = product_witnesses(self.r)
        M = L.model
        W = self.W
        self._co = {
            "wz_g": M.g_coords(mat_bracket(W["w"], W["z"])),
            "wz_s": M.s_coords(mat_circ(W["w"], W["z"])),
            "ws_g": M.g_coords(mat_circ(W["w"], W["s"])),
            "ws_s": M.s_coords(mat_bracket(W["w"], W["s"])),
            "ss_g": M.g_coords(mat_bracket(W["s"], W["s2"])),
            "w": M.g_coords(W["w"]),
            "z": M.g_coords(W["z"]),
            "s": M.s_coords(W["s"]),
            "s2": M.s_coords(W["s2"]),
        }
        if self.r >= 3:
            self._co["t"] = M.s_coords(W["t"])
            self._co["st_g"] = M.g_coords(mat_bracket(W["s"], W["t"]))
            self._co["st_s"] = M.s_coords(mat_circ(W["s"], W["t"]))
        self._circ = {}
        self._comm = {}
        self._dvec = {}
        self._dapp = {}
        self.skew_mode = "read" if self.r >= 3 else None  # None: [B,B] unset
        self.split = None
        self.phi = None
        self.case = "read" if self.r >= 3 else None
        self.notes = []

    # keys and grading
    def degrees(self, window=None):
        w = self.window if window is None else window
        if self.spec.is_finite and w is None:
            return self.spec.elements()
        return self.spec.window(w)

    def a_keys(self, g):
        g = self.spec.reduce(g)
        return [("a", g, i) for i in range(len(self.reader.A(g)))]

    def b_keys(self, g):
        g = self.spec.reduce(g)
        return [("b", g, i) for i in range(len(self.reader.B(g)))]

    def component(self, g):
        return self.a_keys(g) + self.b_keys(g)

    def keys(self, window=None):
        return [k for g in self.degrees(window) for k in self.component(g)]

    def A_keys(self, window=None):
        return [k for g in self.degrees(window) for k in self.a_keys(g)]

    def B_keys(self, window=None):
        return [k for g in self.degrees(window) for k in self.b_keys(g)]

    @staticmethod
    def degree(k):
        return k[1]

    @staticmethod
    def sign(k):
        return 1 if k[0] == "a" else -1

    def label(self, k):
        vec = self.reader.A(k[1])[k[2]] if k[0] == "a" else self.reader.B(k[1])[k[2]]
        inner = " + ".join(f"{c}*{self.L.label(x)}" if c != 1 else self.L.label(x) for x, c in vec.items())
        return f"{k[0].upper()}[{inner}]"

    def supports(self, window=None):
        Sp = [g for g in self.degrees(window) if self.a_keys(g)]
        Sm = [g for g in self.degrees(window) if self.b_keys(g)]
        return {"S": sorted(set(Sp) | set(Sm)), "S+": sorted(Sp), "S-": sorted(Sm)}

    # products
    def _read_pair(self, x, y):
        """(∘, [.,.]) of two basis keys read from one witness bracket."""
        R = self.reader
        co = self._co
        g = self.spec.add(x[1], y[1])
        r = self.r
        if x[0] == "a" and y[0] == "a":
            v = self.L.bracket(R.lift_matrix(x, co["w"]), R.lift_matrix(y, co["z"]))
            parts = R.decompose(v, _eps(r, (0, 1), (1, 1)), g)
            _expect_only(parts, ("g", "s"), "[w⊗a, z⊗a']")
            return _read_slot(parts, "g", co["wz_g"], "a∘a'"), _read_slot(parts, "s", co["wz_s"], "[a,a']")
        if x[0] == "a" and y[0] == "b":
            v = self.L.bracket(R.lift_matrix(x, co["w"]), R.lift_matrix(y, co["s"]))
            parts = R.decompose(v, R.L.roots.zero, g)
            _expect_only(parts, ("g", "s"), "[w⊗a, s⊗b]")
            return _read_slot(parts, "s", co["ws_s"], "a∘b"), _read_slot(parts, "g", co["ws_g"], "[a,b]")
        if x[0] == "b" and y[0] == "a":
            circ, comm = self._read_pair(y, x)
            return circ, scale(-1, comm)
        v = self.L.bracket(R.lift_matrix(x, co["s"]), R.lift_matrix(y, co["s2"]))
        parts = R.decompose(v, _eps(r, (1, 2)), g)
        _expect_only(parts, ("g", "s"), "[s⊗b, s'⊗b']")
        circ = _read_slot(parts, "g", co["ss_g"], "b∘b'")
        comm = None
        if r >= 3:
            v = self.L.bracket(R.lift_matrix(x, co["s"]), R.lift_matrix(y, co["t"]))
            parts = R.decompose(v, _eps(r, (1, 1), (2, -1)), g)
            _expect_only(parts, ("g", "s"), "[s⊗b, t⊗b']")
            again = _read_slot(parts, "g", co["st_g"], "b∘b'")
            if vsub(again, circ):
                raise NotCoordinatizableError("b∘b' depends on the witness pair", witness=(x, y))
            comm = _read_slot(parts, "s", co["st_s"], "[b,b']")
        return circ, comm

    def _fill(self, x, y):
        circ, comm = self._read_pair(x, y)
        self._circ.setdefault((x, y), circ)
        self._circ.setdefault((y, x), circ)
        if comm is not None:
            self._comm.setdefault((x, y), comm)
            self._comm.setdefault((y, x), scale(-1, comm))

    def circ_basis(self, x, y):
        if (x, y) not in self._circ:
            self._fill(x, y)
        return self._circ[(x, y)]

    def comm_basis(self, x, y):
        if (x, y) in self._comm:
            return self._comm[(x, y)]
        if x[0] == "b" and y[0] == "b" and self.r == 2:
            if self.skew_mode is None:
                raise SptoriError("the skew product on B is unset (r = 2); call define_skew_product")
            if self.skew_mode == "zero":
                v = {}
            else:
                v = _phi_bracket(self, x, y)
            self._comm[(x, y)] = v
            return v
        self._fill(x, y)
        return self._comm[(x, y)]

    def set_constant(self, op, x, y, vec):
        """Overwrite one cached product (both orders, respecting (anti)symmetry)."""
        table = self._circ if op == "circ" else self._comm
        table[(x, y)] = dict(vec)
        table[(y, x)] = dict(vec) if op == "circ" else scale(-1, vec)

    def circ(self, u, v):
        out = {}
        for x, a in u.items():
            for y, b in v.items():
                axpy(out, a * b, self.circ_basis(x, y))
        return out

    def comm(self, u, v):
        out = {}
        for x, a in u.items():
            for y, b in v.items():
                axpy(out, a * b, self.comm_basis(x, y))
        return out

    def dot(self, u, v):
        """Jordan product a·a' = ½ a∘a'."""
        return scale(HALF, self.circ(u, v))

    def mul(self, u, v):
        """Assembled product αα' = ½ α∘α' + ½ [α,α']."""
        return scale(HALF, axpy(self.circ(u, v), 1, self.comm(u, v)))

    # inner derivations, read from L
    def D_vector(self, x, y):
        """The element D_{x,y} of L (x, y basis keys of the same type)."""
        key = (x, y)
        if key in self._dvec:
            return self._dvec[key]
        if x[0] != y[0]:
            raise SptoriError("D_{x,y} is only read for two elements of A or two of B")
        R = self.reader
        M = self.L.model
        if x[0] == "a":
            u, w = R.lift(x)[R.m_long], R.lift(y)[R.m_long_neg]
            tr = M.gg_tr[R.m_long, R.m_long_neg]
        else:
            u, w = R.lift(x)[R.p_ref], R.lift(y)[R.p_ref_neg]
            tr = M.ss_tr[R.p_ref, R.p_ref_neg]
        g = self.spec.add(x[1], y[1])
        parts = R.decompose(self.L.bracket(u, w), self.L.roots.zero, g)
        d = scale(1 / tr, parts.get("d", {}))
        self._dvec[key] = d
        return d

    def D_apply_basis(self, x, y, z):
        key = (x, y, z)
        if key in self._dapp:
            return self._dapp[key]
        d = self.D_vector(x, y)
        out = {}
        if d:
            R = self.reader
            g = self.spec.add(self.spec.add(x[1], y[1]), z[1])
            if z[0] == "a":
                v = self.L.bracket(d, R.lift(z)[R.m_long])
                parts = R.decompose(v, R.long, g)
                out = parts.get(("g", R.m_long), {})
            else:
                v = self.L.bracket(d, R.lift(z)[R.p_ref])
                parts = R.decompose(v, R.short, g)
                _expect_only(parts, ("s",), "D acting on B")
                out = parts.get(("s", R.p_ref), {})
        self._dapp[key] = out
        return out

    def D(self, u, v, w):
        """D_{u,v} w, bilinear in u, v (same type) and linear in w."""
        out = {}
        for x, a in u.items():
            for y, b in v.items():
                for z, c in w.items():
                    axpy(out, a * b * c, self.D_apply_basis(x, y, z))
        return out

    # assembled algebra
    def algebra(self, name="coordinate algebra"):
        """The assembled graded algebra (needs the skew product on B)."""
        if self.skew_mode is None:
            raise SptoriError("the skew product on B is unset (r = 2); call define_skew_product")

        def mul(x, y):
            return self.mul({x: ONE}, {y: ONE})

        keys = self.keys() if self.spec.is_finite else None
        alg = GradedAlgebra(self.spec, self.degree, mul, keys=keys, component=self.component,
                            unit=self.unit(), name=name, label=self.label,
                            window_keys=None if keys is not None else self.keys)
        return alg

    def unit(self):
        """The element of A^0 corresponding to the identity of g (x_{2 eps1} ⊗ 1 = e_{2 eps1})."""
        R = self.reader
        e = R.gv[R.m_long]
        A0 = R.A(self.spec.zero)
        c = Span()
        for i, v in enumerate(A0):
            c.add(v, i)
        co = c.coords(e)
        if co is None:
            raise NotCoordinatizableError("the grading subalgebra does not lie in g⊗A^0")
        return {("a", self.spec.zero, i): x for i, x in co.items()}

    def sigma(self, u):
        return {k: c * self.sign(k) for k, c in u.items()}

    def table(self, window=None):
        """Structure constants of the assembled product as a canonical list."""
        keys = self.keys(window)
        out = []
        for x in keys:
            for y in keys:
                for k, c in sorted(self.mul({x: ONE}, {y: ONE}).items()):
                    out.append([list(x), list(y), list(k), str(c)])
        return out

    def fingerprint(self, window=None):
        blob = json.dumps(self.table(window), default=list, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


def extract_coordinates(L, r=None, window=None, verify=True):
    """Coordinate bundle of a C_r-graded Lie algebra.

    With ``verify`` every cell in range is decomposed up front, so a failure of
    the root-independence of A and B surfaces as NotCoordinatizableError here.
    """
    if r is not None and r != L.r:
        raise SptoriError(f"rank mismatch: L has rank {L.r}, asked for {r}")
    b = CoordinateBundle(L, window)
    if verify:
        ch = Check("root-independence", window=b.window)
        for g in b.degrees():
            for mu in L.weights():
                b.reader.cell_span(mu, g)
                ch.count += 1
        b.independence = ch
    return b


# -- B = [A,A] ⊕ B0 -------------------------------------------------------------


def split_B(bundle, window=None):
    """B0 = {b : [b, A] = 0} and [A,A], degree by degree, with the direct sum verified."""
    w = bundle.window if window is None else window
    A_test = bundle.A_keys(w)
    out = SplitB()
    for g in bundle.degrees(w):
        Bk = bundle.b_keys(g)
        if not Bk:
            continue
        cols = []
        for b in Bk:
            col = {}
            for a in A_test:
                for k, c in bundle.comm_basis(b, a).items():
                    col[(a, k)] = c
            cols.append(col)
        B0 = [{Bk[i]: c for i, c in rel.items()} for rel in kernel(cols)]
        AA, factors = _commutator_space(bundle, g, A_test)
        sp = Span()
        for i, v in enumerate(AA):
            sp.add(v, ("aa", i))
        for i, v in enumerate(B0):
            if sp.add(v, ("b0", i)) is not None:
                raise LemmaViolationError(f"[A,A] ∩ B0 != 0 in degree {g}", witness=(g, i))
        if sp.dim != len(Bk):
            raise LemmaViolationError(f"B != [A,A] + B0 in degree {g}", witness=(g,))
        out.AA[g], out.factors[g], out.B0[g], out.spans[g] = AA, factors, B0, sp
    bundle.split = out
    return out


def _commutator_space(bundle, g, A_test):
    """Independent [a1, a2] with deg a1 + deg a2 = g and a1 in the test range."""
    sp = Span()
    vecs, factors = [], []
    for a1 in A_test:
        h = bundle.spec.sub(g, a1[1])
        for a2 in bundle.a_keys(h):
            v = bundle.comm_basis(a1, a2)
            if v and sp.add(v) is None:
                vecs.append(v)
                factors.append((a1, a2))
    return vecs, factors


def _split_parts(bundle, v):
    """(AA-part, B0-part) of a homogeneous B-vector."""
    if not v:
        return {}, {}
    g = next(iter(v))[1]
    sp = bundle.split.spans.get(g)
    if sp is None:
        sp = _extend_split(bundle, g)
    c = sp.coords(v)
    if c is None:
        raise LemmaViolationError(f"B-vector outside [A,A] + B0 in degree {g}", witness=g)
    aa = _lin((x, bundle.split.AA[g][t[1]]) for t, x in c.items() if t[0] == "aa")
    b0 = _lin((x, bundle.split.B0[g][t[1]]) for t, x in c.items() if t[0] == "b0")
    return aa, b0


def _extend_split(bundle, g):
    """Split of a degree outside the window (B0 tested against the window's A)."""
    s = bundle.split
    A_test = bundle.A_keys()
    Bk = bundle.b_keys(g)
    cols = []
    for b in Bk:
        col = {}
        for a in A_test:
            for k, c in bundle.comm_basis(b, a).items():
                col[(a, k)] = c
        cols.append(col)
    B0 = [{Bk[i]: c for i, c in rel.items()} for rel in kernel(cols)]
    AA, factors = _commutator_space(bundle, g, A_test)
    sp = Span()
    for i, v in enumerate(AA):
        sp.add(v, ("aa", i))
    for i, v in enumerate(B0):
        if sp.add(v, ("b0", i)) is not None:
            raise LemmaViolationError(f"[A,A] ∩ B0 != 0 in degree {g}", witness=(g, i))
    s.AA[g], s.factors[g], s.B0[g], s.spans[g] = AA, factors, B0, sp
    return sp


# -- the skew product on B (r = 2) ------------------------------------------------


def s_plus_is_subgroup(bundle):
    """Tri-state: True / False, or None when a window cannot decide."""
    S = bundle.supports()["S+"]
    if bundle.spec.is_finite:
        return is_subgroup(S, bundle.spec)
    status, _ = subgroup_status_in_window(S, bundle.spec, bundle.window)
    return False if status == "fail" else None


class _Phi:
    """phi: [A,A] -> IDer(A,∘), phi(c)(a) = [c, a], per degree."""

    def __init__(self, bundle):
        self.bundle = bundle
        self.A_test = bundle.A_keys()
        self._spans = {}

    def fingerprint(self, op):
        out = {}
        for a in self.A_test:
            for k, c in op(a).items():
                out[(a, k)] = c
        return out

    def span(self, g):
        g = self.bundle.spec.reduce(g)
        if g in self._spans:
            return self._spans[g]
        b = self.bundle
        if g not in b.split.AA:
            _extend_split(b, g) if b.b_keys(g) else None
        AA = b.split.AA.get(g, [])
        sp = Span()
        for i, c in enumerate(AA):
            fp = self.fingerprint(lambda a: b.comm(c, {a: ONE}))
            if sp.add(fp, i) is not None:
                raise LemmaViolationError(f"phi is not injective in degree {g}", witness=(g, i))
        ider = Span()
        for a1 in self.A_test:
            for a2 in b.a_keys(b.spec.sub(g, a1[1])):
                x, y = {a1: ONE}, {a2: ONE}
                fp = self.fingerprint(
                    lambda a: axpy(b.circ(x, b.circ(y, {a: ONE})), -1, b.circ(y, b.circ(x, {a: ONE}))))
                if fp:
                    ider.add(fp)
        if ider.dim != sp.dim or any(not sp.contains(v) for v in ider.basis()):
            raise LemmaViolationError(f"phi([A,A]) != IDer(A,∘) in degree {g}", witness=(g, sp.dim, ider.dim))
        self._spans[g] = sp
        return sp

    def inverse(self, g, op):
        sp = self.span(g)
        fp = self.fingerprint(op)
        if not fp:
            return {}
        c = sp.coords(fp)
        if c is None:
            raise LemmaViolationError(f"4D_(b,b') is not in phi([A,A]) in degree {g}", witness=g)
        AA = self.bundle.split.AA.get(self.bundle.spec.reduce(g), [])
        return _lin((x, AA[i]) for i, x in c.items())


def _phi_bracket(bundle, x, y):
    bx, _ = _split_parts(bundle, {x: ONE})
    by, _ = _split_parts(bundle, {y: ONE})
    if not bx or not by:
        return {}
    g = bundle.spec.add(x[1], y[1])
    return bundle.phi.inverse(g, lambda a: scale(4, bundle.D(bx, by, {a: ONE})))


def define_skew_product(bundle):
    """Complete a rank-2 bundle: [B,B] = 0 when S+ is a subgroup, else [b,b'] = phi^{-1}(4 D_{b,b'})."""
    if bundle.r >= 3:
        bundle.case = "read"
        return bundle
    if bundle.split is None:
        split_B(bundle)
    sub = s_plus_is_subgroup(bundle)
    if sub is None:
        AA_zero = all(not v for v in bundle.split.AA.values())
        sub = AA_zero
        bundle.notes.append("S+ undecided inside the window; case chosen by [A,A] = 0")
    if sub:
        bundle.case = "i"
        bundle.skew_mode = "zero"
    else:
        bundle.case = "ii"
        bundle.phi = _Phi(bundle)
        for g in bundle.split.AA:
            bundle.phi.span(g)
        bundle.skew_mode = "phi"
    return bundle


# -- identity sweeps ----------------------------------------------------------------


def _sweep(name, tuples, fn, window):
    ch = Check(name, window=window)
    for t in tuples:
        ch.count += 1
        for lhs, rhs in fn(*t):
            if vsub(lhs, rhs):
                ch.fail(t)
                break
    return ch


def _e(k):
    return {k: ONE}


def seligman_suite(bundle, window=None):
    """The fourteen rank-2 identities among ∘, [.,.] and D, on all basis tuples.

    Every identity involves only the products of the Lie algebra, so the
    suite does not need the skew product on B.
    """
    if bundle.r != 2:
        raise SptoriError("the identity suite is stated for rank 2")
    w = bundle.window if window is None else window
    b = bundle
    As, Bs, Ks = b.A_keys(w), b.B_keys(w), b.keys(w)
    ci, cm, D = b.circ, b.comm, b.D
    P = itertools.product
    rep = Report("rank-2 identities")

    def i1(a, a1, a2):
        a, a1, a2 = _e(a), _e(a1), _e(a2)
        lhs = axpy(ci(a, ci(a2, a1)), -1, ci(a2, ci(a, a1)))
        rhs = axpy(cm(a, cm(a2, a1)), -1, cm(a2, cm(a, a1)))
        return [(lhs, rhs)]

    def i2(a, a1, a2):
        a, a1, a2 = _e(a), _e(a1), _e(a2)
        return [(cm(a, ci(a1, a2)), axpy(ci(cm(a, a1), a2), -1, ci(cm(a2, a), a1)))]

    def i3(a1, a2, a):
        a1, a2, a = _e(a1), _e(a2), _e(a)
        lhs = cm(cm(a1, a2), a)
        mid = axpy(ci(a1, ci(a2, a)), -1, ci(a2, ci(a, a1)))
        return [(lhs, mid), (lhs, scale(4, D(a1, a2, a)))]

    def i4(a, a1, bb):
        a, a1, bb = _e(a), _e(a1), _e(bb)
        out = []
        for z in Ks:
            z = _e(z)
            lhs = D(cm(a, a1), bb, z)
            rhs = axpy(D(cm(bb, a1), a, z), -1, D(cm(bb, a), a1, z))
            out.append((lhs, rhs))
        return out

    def i5(bb, a, a1):
        bb, a, a1 = _e(bb), _e(a), _e(a1)
        return [(cm(bb, ci(a, a1)), axpy(ci(cm(bb, a), a1), -1, ci(cm(a1, bb), a)))]

    def i6(bb, a, a1):
        bb, a, a1 = _e(bb), _e(a), _e(a1)
        rhs = axpy(axpy(cm(bb, ci(a, a1)), 1, ci(bb, cm(a, a1))), -1, ci(cm(bb, a), a1))
        return [(cm(ci(bb, a), a1), rhs)]

    def i7(bb, a, a1):
        bb, a, a1 = _e(bb), _e(a), _e(a1)
        return [(ci(a1, cm(bb, a)), axpy(ci(bb, cm(a, a1)), 1, cm(ci(bb, a1), a)))]

    def i8(a, a1, bb):
        a, a1, bb = _e(a), _e(a1), _e(bb)
        return [(scale(4, D(a, a1, bb)), axpy(cm(a, cm(a1, bb)), -1, cm(a1, cm(a, bb))))]

    def i9(a, bb, a1):
        a, bb, a1 = _e(a), _e(bb), _e(a1)
        return [(cm(a, cm(bb, a1)), axpy(ci(ci(bb, a), a1), -1, ci(bb, ci(a, a1))))]

    def i10(bb, b1, a):
        bb, b1, a = _e(bb), _e(b1), _e(a)
        out = []
        for z in Ks:
            z = _e(z)
            lhs = axpy(axpy(D(ci(bb, b1), a, z), 1, D(ci(b1, a), bb, z)), 1, D(ci(bb, a), b1, z))
            out.append((lhs, {}))
        return out

    def i11(bb, b1, a):
        bb, b1, a = _e(bb), _e(b1), _e(a)
        lhs = axpy(ci(bb, ci(b1, a)), -1, ci(b1, ci(bb, a)))
        mid = scale(4, D(bb, b1, a))
        rhs = axpy(cm(bb, cm(b1, a)), -1, cm(b1, cm(bb, a)))
        return [(lhs, mid), (mid, rhs)]

    def i12(a, bb, b1):
        a, bb, b1 = _e(a), _e(bb), _e(b1)
        rhs = _lin([(1, ci(bb, ci(b1, a))), (1, ci(b1, ci(bb, a))),
                    (1, cm(bb, cm(b1, a))), (1, cm(b1, cm(bb, a)))])
        return [(scale(2, ci(a, ci(bb, b1))), rhs)]

    def i13(a, bb, b1):
        a, bb, b1 = _e(a), _e(bb), _e(b1)
        return [(cm(a, ci(bb, b1)), axpy(ci(cm(a, bb), b1), -1, ci(cm(b1, a), bb)))]

    def i14(bb, b1, b2):
        bb, b1, b2 = _e(bb), _e(b1), _e(b2)
        lhs = _lin([(1, cm(bb, ci(b1, b2))), (1, cm(b1, ci(b2, bb))), (1, cm(b2, ci(bb, b1)))])
        return [(lhs, {})]

    rep.add(_sweep("A-circ-associator", P(As, As, As), i1, w))
    rep.add(_sweep("A-bracket-over-circ", P(As, As, As), i2, w))
    rep.add(_sweep("A-double-bracket-is-4D", P(As, As, As), i3, w))
    rep.add(_sweep("D-of-[A,A]-and-B", P(As, As, Bs), i4, w))
    rep.add(_sweep("B-bracket-over-A-circ", P(Bs, As, As), i5, w))
    rep.add(_sweep("bracket-of-B-circ-A", P(Bs, As, As), i6, w))
    rep.add(_sweep("A-circ-of-B-bracket", P(Bs, As, As), i7, w))
    rep.add(_sweep("D-AA-on-B", P(As, As, Bs), i8, w))
    rep.add(_sweep("A-bracket-B-bracket", P(As, Bs, As), i9, w))
    rep.add(_sweep("D-cyclic-B-B-A", P(Bs, Bs, As), i10, w))
    rep.add(_sweep("D-BB-on-A", P(Bs, Bs, As), i11, w))
    rep.add(_sweep("A-circ-of-B-circ", P(As, Bs, Bs), i12, w))
    rep.add(_sweep("A-bracket-over-B-circ", P(As, Bs, Bs), i13, w))
    rep.add(_sweep("B-bracket-circ-cyclic", P(Bs, Bs, Bs), i14, w))
    return rep


# -- lemma battery --------------------------------------------------------------------


def _zero_sweep(name, pairs, op, window):
    ch = Check(name, window=window)
    for x, y in pairs:
        ch.count += 1
        if op(_e(x), _e(y)):
            ch.fail((x, y))
    return ch


def lemma_five_way(bundle, window=None):
    """The five conditions that are equivalent for a rank-2 torus, each computed on its own."""
    w = bundle.window if window is None else window
    b = bundle
    As, Bs = b.A_keys(w), b.B_keys(w)
    sub = s_plus_is_subgroup(b)
    AB = all(not b.comm_basis(x, y) for x in As for y in Bs)
    AA = all(not b.comm_basis(x, y) for x in As for y in As)
    dot_eq = True
    for x in As:
        for y in As:
            if vsub(b.mul(_e(x), _e(y)), b.dot(_e(x), _e(y))):
                dot_eq = False
    assoc = True
    for x, y, z in itertools.product(As, As, As):
        X, Y, Z = _e(x), _e(y), _e(z)
        if vsub(b.dot(b.dot(X, Y), Z), b.dot(X, b.dot(Y, Z))):
            assoc = False
            break
    return {"S+ subgroup": sub, "[A,B]=0": AB, "[A,A]=0": AA, "dot=product on A": dot_eq,
            "(A,dot) associative": assoc}


def lemma_checks(bundle, window=None):
    """Instantiate the rank-2 torus lemmas on the bundle (after define_skew_product)."""
    if bundle.r != 2:
        raise SptoriError("the lemma battery is stated for rank 2")
    if bundle.skew_mode is None:
        define_skew_product(bundle)
    w = bundle.window if window is None else window
    b = bundle
    As, Bs, Ks = b.A_keys(w), b.B_keys(w), b.keys(w)
    sp = b.split
    rep = Report("rank-2 lemmas")

    # D_{b,b'} = [D_{a1,a2}, D_{a3,a4}] for b = ½[a1,a2], b' = ½[a3,a4]
    ch = rep.add(Check("D-of-commutators", window=w))
    facs = [(v, f) for g in sp.AA for v, f in zip(sp.AA[g], sp.factors[g])]
    for (v1, (a1, a2)), (v2, (a3, a4)) in itertools.product(facs, facs):
        x1, x3 = scale(2, _e(a1)), scale(2, _e(a3))
        for z in Ks:
            Z = _e(z)
            ch.count += 1
            lhs = b.D(v1, v2, Z)
            rhs = axpy(b.D(x1, _e(a2), b.D(x3, _e(a4), Z)), -1, b.D(x3, _e(a4), b.D(x1, _e(a2), Z)))
            if vsub(lhs, rhs):
                ch.fail((a1, a2, a3, a4, z))
                break

    # nonvanishing
    ch = rep.add(Check("nonvanishing-products", window=w))
    for x, y in itertools.chain(itertools.product(As, As), itertools.product(As, Bs)):
        ch.count += 1
        if not b.circ_basis(x, y) and not b.comm_basis(x, y):
            ch.fail((x, y))

    # B = [A,A] ⊕ B0 with factorizations
    ch = rep.add(Check("B-splits", window=w))
    for g in b.degrees(w):
        if not b.b_keys(g):
            continue
        ch.count += 1
        if g not in sp.spans or sp.spans[g].dim != len(b.b_keys(g)):
            ch.fail(("not-spanning", g))
        for v, (a1, a2) in zip(sp.AA.get(g, []), sp.factors.get(g, [])):
            if vsub(v, b.comm_basis(a1, a2)):
                ch.fail(("factorization", g, a1, a2))
        for v in sp.B0.get(g, []):
            if any(b.comm(v, _e(a)) for a in As):
                ch.fail(("B0", g))

    # five-way equivalence
    ch = rep.add(Check("five-way-equivalence", window=w))
    vals = lemma_five_way(b, w)
    rep.data["five-way"] = vals
    ch.count = 5
    decided = {k: v for k, v in vals.items() if v is not None}
    if len(set(decided.values())) > 1:
        ch.fail(vals)
    elif len(decided) < len(vals):
        ch.status = INCONCLUSIVE
        ch.detail = "S+ subgroup status undecided inside the window"

    not_sub = vals["S+ subgroup"] is False
    B0 = [v for g in sp.B0 for v in sp.B0[g]]
    AAv = [v for g in sp.AA for v in sp.AA[g]]

    # vanishing of D on B0
    ch = rep.add(Check("D-vanishes-on-B0", window=w))
    if not not_sub:
        ch.status = NOT_APPLICABLE
    else:
        Bv = [_e(k) for k in Bs]
        for v0 in B0:
            for z in Ks:
                Z = _e(z)
                for u in B0 + Bv:
                    ch.count += 1
                    if b.D(v0, u, Z) or b.D(u, v0, Z):
                        ch.fail(("D(B0,B)", z))
            for u1 in Bv:
                for u2 in Bv:
                    ch.count += 1
                    if b.D(u1, u2, v0):
                        ch.fail(("D(B,B)B0",))
        # D_{B,B} ⊆ D_{[A,A],[A,A]} ⊆ D_{A,A}, compared as operators on the basis
        def fp(x, y):
            out = {}
            for z in Ks:
                for k, c in b.D(x, y, _e(z)).items():
                    out[(z, k)] = c
            return out
        by_deg = {}
        for x in Bs:
            for y in Bs:
                by_deg.setdefault(b.spec.add(x[1], y[1]), []).append(fp(_e(x), _e(y)))
        for g, fps in by_deg.items():
            s_aa = Span()
            for v1 in AAv:
                for v2 in AAv:
                    if b.spec.add(next(iter(v1))[1], next(iter(v2))[1]) == g:
                        s_aa.add(fp(v1, v2))
            s_a = Span()
            for x in b.A_keys(w):
                for y in b.a_keys(b.spec.sub(g, x[1])):
                    s_a.add(fp(_e(x), _e(y)))
            ch.count += 1
            if any(not s_aa.contains(f) for f in fps):
                ch.fail(("D(B,B) not in D([A,A],[A,A])", g))
            if any(not s_a.contains(f) for f in s_aa.basis()):
                ch.fail(("D([A,A],[A,A]) not in D(A,A)", g))

    # B0 is central in the assembled algebra
    ch = rep.add(Check("B0-central", window=w))
    if not not_sub:
        ch.status = NOT_APPLICABLE
    else:
        for v0 in B0:
            for k in Ks:
                ch.count += 1
                if vsub(b.mul(v0, _e(k)), b.mul(_e(k), v0)):
                    ch.fail(("B0", k))

    # S+ not a subgroup => it generates G
    ch = rep.add(Check("S+-generates-G", window=w))
    ch.count = 1
    if not not_sub:
        ch.status = NOT_APPLICABLE
    elif not subgroup_generated(b.supports(w)["S+"], b.spec).equals_whole_group():
        ch.fail(("S+", b.supports(w)["S+"]))

    # the defining relation 4 D_{b,b'} a = [[b,b'], a], re-checked
    ch = rep.add(Check("skew-product-relation", window=w))
    if b.case != "ii":
        ch.status = NOT_APPLICABLE
    else:
        for x, y, a in itertools.product(Bs, Bs, As):
            ch.count += 1
            if vsub(scale(4, b.D(_e(x), _e(y), _e(a))), b.comm(b.comm_basis(x, y), _e(a))):
                ch.fail((x, y, a))

    # D_{a,a'∘a''} + D_{a',a''∘a} + D_{a'',a∘a'} = 0
    ch = rep.add(Check("D-cyclic-A", window=w))
    for x, y, z in itertools.product(As, As, As):
        X, Y, Z = _e(x), _e(y), _e(z)
        for t in Ks:
            T = _e(t)
            ch.count += 1
            v = _lin([(1, b.D(X, b.circ(Y, Z), T)), (1, b.D(Y, b.circ(Z, X), T)), (1, b.D(Z, b.circ(X, Y), T))])
            if v:
                ch.fail((x, y, z, t))
                break
    return rep


# -- associativity and classification -----------------------------------------------------


def associativity_check(bundle, window=None, strict=True):
    """Both halves of the associator (∘-part and bracket-part) on every type pattern, plus a direct sweep.

    With ``strict`` a failure on a bundle whose S+ is not a subgroup (or of
    rank >= 4) raises TheoremViolationError.
    """
    if bundle.skew_mode is None:
        raise SptoriError("define the skew product first")
    w = bundle.window if window is None else window
    b = bundle
    ci, cm = b.circ, b.comm
    kinds = {"A": b.A_keys(w), "B": b.B_keys(w)}
    rep = Report("associativity")

    def circ_part(x, y, z):
        X, Y, Z = _e(x), _e(y), _e(z)
        lhs = axpy(ci(ci(X, Y), Z), -1, ci(X, ci(Y, Z)))
        rhs = axpy(cm(X, cm(Y, Z)), -1, cm(cm(X, Y), Z))
        return [(lhs, rhs)]

    def bracket_part(x, y, z):
        X, Y, Z = _e(x), _e(y), _e(z)
        lhs = axpy(ci(cm(X, Y), Z), -1, ci(X, cm(Y, Z)))
        rhs = axpy(cm(X, ci(Y, Z)), -1, cm(ci(X, Y), Z))
        return [(lhs, rhs)]

    for pat in itertools.product("AB", repeat=3):
        tag = "".join(pat)
        tuples = list(itertools.product(*(kinds[p] for p in pat)))
        rep.add(_sweep(f"circ-associator[{tag}]", tuples, circ_part, w))
        rep.add(_sweep(f"bracket-associator[{tag}]", tuples, bracket_part, w))

    def assoc(x, y, z):
        X, Y, Z = _e(x), _e(y), _e(z)
        return [(b.mul(b.mul(X, Y), Z), b.mul(X, b.mul(Y, Z)))]

    ks = b.keys(w)
    rep.add(_sweep("associator", itertools.product(ks, ks, ks), assoc, w))
    must = (b.r == 2 and b.case == "ii") or b.r >= 4
    if strict and must and rep.status == FAIL:
        bad = rep.failures()[0]
        raise TheoremViolationError(f"associativity fails ({bad.name})", witness=bad.witnesses[0])
    return rep


@dataclass
class Classification:
    branch: str
    evidence: dict

    def to_dict(self):
        return {"branch": self.branch, "evidence": self.evidence}


ASSOCIATIVE = "associative torus with involution"
CLIFFORD = "Clifford torus"
OCTONION = "octonion/alternative torus, standard involution"


def classify(bundle, window=None):
    """Branch of the coordinate algebra: associative, Clifford (rank 2) or alternative (rank 3)."""
    b = bundle
    w = b.window if window is None else window
    if b.skew_mode is None:
        define_skew_product(b)
    ev = {"rank": b.r, "window": w}
    sub = s_plus_is_subgroup(b)
    ev["S+ subgroup"] = sub
    ev["supports"] = {k: [list(g) for g in v] for k, v in b.supports(w).items()}
    if b.r == 2 and b.case == "i" and b.B_keys(w):
        rep = Report("Clifford structure")
        As, Bs, Ks = b.A_keys(w), b.B_keys(w), b.keys(w)
        rep.add(_zero_sweep("[A,A]=0", itertools.product(As, As), b.comm, w))
        rep.add(_zero_sweep("[A,B]=0", itertools.product(As, Bs), b.comm, w))
        rep.add(_zero_sweep("[B,B]=0", itertools.product(Bs, Bs), b.comm, w))
        alg = b.algebra()
        rep.extend(ga_check_kind(alg, "jordan", window=w if not alg.is_finite else None))
        ev["checks"] = {c.name: c.label() for c in rep.checks}
        ev["fingerprint"] = b.fingerprint(w)
        if not rep.passed:
            raise TheoremViolationError("Case (i) bundle is not a Clifford torus", witness=rep.failures()[0].name)
        return Classification(CLIFFORD, ev)
    # with B = 0 the case (i) conditions hold vacuously; A is then a commutative torus
    ev["B empty"] = not b.B_keys(w)
    arep = associativity_check(b, w, strict=b.r != 3)
    ev["associative"] = arep.passed
    if not arep.passed:
        bad = arep.failures()[0]
        ev["associativity witness"] = [bad.name, repr(bad.witnesses[0]) if bad.witnesses else None]
    ev["fingerprint"] = b.fingerprint(w)
    if arep.passed:
        return Classification(ASSOCIATIVE, ev)
    if b.r == 2:
        bad = arep.failures()[0]
        raise TheoremViolationError(f"rank-2 coordinate algebra is not associative ({bad.name})",
                                    witness=bad.witnesses[0] if bad.witnesses else None)
    # rank 3, not associative
    alg = b.algebra()
    kw = None if alg.is_finite else w
    alt = ga_check_kind(alg, "alternative", window=kw)
    ev["alternative"] = f"pass (window {kw})" if alt.passed and kw is not None else alt.status
    A = [_e(k) for k in b.A_keys(w)]
    ok, wit = nucleus_contains(alg, A, window=kw)
    ev["symmetric in nucleus"] = ok
    central = all(not b.comm(a, _e(k)) for a in A for k in b.keys(w))
    ev["symmetric central"] = central
    if not alt.passed or not ok:
        raise TheoremViolationError("rank-3 coordinate algebra is neither associative nor alternative with "
                                    "symmetric elements in the nucleus", witness=wit)
    return Classification(OCTONION, ev)


def run_pipeline(L, window=None):
    """extract → split_B → define_skew_product → classify (rank 2 also runs the associativity sweep)."""
    b = extract_coordinates(L, window=window)
    if b.r == 2:
        split_B(b)
        define_skew_product(b)
    return b, classify(b)


# -- round trip against a known coordinate algebra ---------------------------------------


def identification(bundle):
    """Map bundle keys to keys of the coordinate algebra an sp construction was built from.

    Works when every A basis vector is x_{2 eps1} ⊗ a and every B basis vector is
    s_{eps1-eps2} ⊗ b for single keys a, b (the layout of :class:`~sptori.sp.SpAlgebra`).
    """
    R = bundle.reader
    out = {}
    for k in bundle.keys():
        vec = R.A(k[1])[k[2]] if k[0] == "a" else R.B(k[1])[k[2]]
        if len(vec) != 1:
            return None
        (key, c), = vec.items()
        want = ("g", R.m_long) if k[0] == "a" else ("s", R.p_ref)
        if c != 1 or tuple(key[:2]) != want:
            return None
        out[k] = key[2]
    return out


def round_trip(bundle, alg=None, window=None):
    """The assembled product equals the source algebra's product under :func:`identification`."""
    w = bundle.window if window is None else window
    alg = alg if alg is not None else bundle.L.alg
    ident = identification(bundle)
    ch = Check("round-trip", window=w)
    if ident is None:
        return ch.fail("no key identification")
    keys = bundle.keys(w)
    for x in keys:
        for y in keys:
            ch.count += 1
            got = {}
            for k, c in bundle.mul(_e(x), _e(y)).items():
                if k not in ident:
                    ident[k] = identification_key(bundle, k)
                got[ident[k]] = c
            want = alg.mul_basis(ident[x], ident[y])
            if vsub(got, want):
                ch.fail((ident[x], ident[y]))
    return ch


def identification_key(bundle, k):
    R = bundle.reader
    vec = R.A(k[1])[k[2]] if k[0] == "a" else R.B(k[1])[k[2]]
    (key, _), = vec.items()
    return key[2]
