"""The C_r root datum and the matrix model of sp_2r and its module s.

Matrix indices are 1-based in the public helpers (``E(i, j, r)``), matching the
usual matrix-unit notation; ``bar(i) = 2r + 1 - i``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import SpecMismatchError, SptoriError
from .foundations import Q, ONE, ZERO
from .linalg import Span


# -- root datum -------------------------------------------------------------

def _eps(r, i, c=1):
    v = [0] * r
    v[i - 1] += c
    return v


def eps_comb(r, terms):
    """Integer vector for sum of c * eps_i over ``terms = [(i, c), ...]`` (1-based i)."""
    v = [0] * r
    for i, c in terms:
        v[i - 1] += c
    return tuple(v)


def inner(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class RootDatumC:
    r: int

    def __post_init__(self):
        if self.r < 2:
            raise SptoriError("type C_r needs r >= 2")

    @property
    def long_roots(self):
        r = self.r
        return [eps_comb(r, [(i, s * 2)]) for i in range(1, r + 1) for s in (1, -1)]

    @property
    def short_roots(self):
        r = self.r
        out = []
        for i, j in itertools.combinations(range(1, r + 1), 2):
            for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                out.append(eps_comb(r, [(i, si), (j, sj)]))
        return out

    @property
    def roots(self):
        return self.long_roots + self.short_roots

    @property
    def zero(self):
        return (0,) * self.r

    def is_root(self, mu):
        return tuple(mu) in self._rootset

    @property
    def _rootset(self):
        return _rootset(self.r)

    def is_long(self, mu):
        return inner(mu, mu) == 4

    def is_short(self, mu):
        return inner(mu, mu) == 2

    def coroot(self, mu):
        """mu-check as coefficients on the basis h_i = E_ii - E_{bar i, bar i} of the Cartan subalgebra."""
        mu = tuple(mu)
        if not self.is_root(mu):
            raise SptoriError(f"{mu} is not a root of C_{self.r}")
        n2 = inner(mu, mu)
        return tuple(Q(2 * x, n2) for x in mu)

    def cartan(self, nu, mu):
        if not self.is_root(mu):
            raise SptoriError(f"{mu} is not a root of C_{self.r}")
        v = Q(2 * inner(nu, mu), inner(mu, mu))
        if v.denominator != 1:
            raise SptoriError(f"non-integral pairing {nu}, {mu}")
        return int(v)

    def pair(self, nu, h):
        """nu(h) for h given in h_i coordinates."""
        return sum(Q(a) * b for a, b in zip(nu, h))

    def label(self, mu):
        parts = []
        for i, c in enumerate(mu, 1):
            if c:
                s = "+" if c > 0 else "-"
                mag = "" if abs(c) == 1 else str(abs(c))
                parts.append(f"{s}{mag}e{i}")
        out = "".join(parts) or "0"
        return out[1:] if out.startswith("+") else out


@lru_cache(maxsize=None)
def _rootset(r):
    return frozenset(RootDatumC(r).roots)


def roots_c(r):
    return RootDatumC(r)


def cartan(nu, mu):
    r = len(mu)
    return RootDatumC(r).cartan(nu, mu)


# -- matrices ---------------------------------------------------------------

def zeros(r):
    return np.full((2 * r, 2 * r), ZERO, dtype=object)


def E(i, j, r, c=1):
    m = zeros(r)
    m[i - 1, j - 1] = Q(c)
    return m


def bar(i, r):
    return 2 * r + 1 - i


def identity(r):
    m = zeros(r)
    for i in range(2 * r):
        m[i, i] = ONE
    return m


def symplectic_form(r):
    m = zeros(r)
    n = 2 * r
    for i in range(1, n + 1):
        j = n + 1 - i
        m[i - 1, j - 1] = Q((i > j) - (i < j))
    return m


def mat_eq(a, b):
    return bool(np.all(a == b))


def is_zero_mat(a):
    return bool(np.all(a == 0))


def trace(a):
    return sum(a[i, i] for i in range(a.shape[0]))


def in_g(x, r):
    M = symplectic_form(r)
    return mat_eq(x.T.dot(M), -M.dot(x))


def in_s(s, r):
    M = symplectic_form(r)
    return mat_eq(s.T.dot(M), M.dot(s)) and trace(s) == 0


def tag(x, r):
    if in_g(x, r):
        return "g"
    if in_s(x, r):
        return "s"
    return "other"


@dataclass(frozen=True, eq=False)
class MatrixElt:
    m: object
    r: int

    @property
    def tag(self):
        return tag(self.m, self.r)


def mat_bracket(w, z):
    if w.shape != z.shape:
        raise SpecMismatchError("matrix size mismatch")
    return w.dot(z) - z.dot(w)


def mat_trace(w, z):
    if w.shape != z.shape:
        raise SpecMismatchError("matrix size mismatch")
    return trace(w.dot(z))


def mat_circ(w, z):
    if w.shape != z.shape:
        raise SpecMismatchError("matrix size mismatch")
    r = w.shape[0] // 2
    out = w.dot(z) + z.dot(w)
    t = trace(w.dot(z)) / r
    if t:
        for i in range(2 * r):
            out[i, i] -= t
    return out


def h_basis(r):
    return [E(i, i, r) - E(bar(i, r), bar(i, r), r) for i in range(1, r + 1)]


def h_element(coeffs, r):
    out = zeros(r)
    for c, h in zip(coeffs, h_basis(r)):
        out = out + h * c
    return out


def g_basis(mu, r):
    """Root vector of sp_2r for the root mu (integer eps-coordinates)."""
    mu = tuple(mu)
    rd = RootDatumC(r)
    if len(mu) != r or not rd.is_root(mu):
        raise SptoriError(f"{mu} is not a root of C_{r}")
    pos = [i + 1 for i, c in enumerate(mu) if c > 0 for _ in range(c)]
    neg = [i + 1 for i, c in enumerate(mu) if c < 0 for _ in range(-c)]
    if len(pos) == 1 and len(neg) == 1:  # eps_i - eps_j
        i, j = pos[0], neg[0]
        return E(i, j, r) - E(bar(j, r), bar(i, r), r)
    if len(pos) == 2:  # eps_i + eps_j, i = j allowed
        i, j = pos
        return E(i, bar(j, r), r) + E(j, bar(i, r), r)
    i, j = neg
    return E(bar(j, r), i, r) + E(bar(i, r), j, r)


def s_weights(r):
    """Nonzero weights of s: +-eps_i +- eps_j with i != j (each multiplicity one)."""
    return RootDatumC(r).short_roots


def s_basis(w, r):
    """Weight vector of s for the weight w = +-eps_i +- eps_j (i != j).

    The matrices are the listed ones: ``E_ij + E_{bar j, bar i}`` (i != j),
    ``E_{i, bar j} - E_{j, bar i}`` and ``E_{bar j, i} - E_{bar i, j}`` (i < j);
    each is attached to the weight it actually has under the Cartan subalgebra.
    """
    w = tuple(w)
    if len(w) != r or not (inner(w, w) == 2 and RootDatumC(r).is_root(w)):
        raise SptoriError(f"{w} is not a nonzero weight of s for C_{r}")
    pos = [i + 1 for i, c in enumerate(w) if c > 0]
    neg = [i + 1 for i, c in enumerate(w) if c < 0]
    if len(pos) == 1 and len(neg) == 1:
        i, j = pos[0], neg[0]
        return E(i, j, r) + E(bar(j, r), bar(i, r), r)
    if len(pos) == 2:
        i, j = sorted(pos)
        return E(i, bar(j, r), r) - E(j, bar(i, r), r)
    i, j = sorted(neg)
    return E(bar(j, r), i, r) - E(bar(i, r), j, r)


def s0_basis(r):
    """Zero-weight part of s: (E_ii + E_{bar i}) - (E_{i+1} + E_{bar(i+1)}), i = 1..r-1."""
    out = []
    for i in range(1, r):
        d = E(i, i, r) + E(bar(i, r), bar(i, r), r)
        d = d - E(i + 1, i + 1, r) - E(bar(i + 1, r), bar(i + 1, r), r)
        out.append(d)
    return out


def weight_of(x, r):
    """Weight of a matrix under ad(h) or ``None`` if x is not a weight vector."""
    hs = h_basis(r)
    if is_zero_mat(x):
        return None
    wt = []
    for h in hs:
        y = mat_bracket(h, x)
        idx = np.argwhere(x != 0)[0]
        c = y[idx[0], idx[1]] / x[idx[0], idx[1]]
        if not mat_eq(y, x * c):
            return None
        wt.append(c)
    if any(Q(c).denominator != 1 for c in wt):
        return None
    return tuple(int(c) for c in wt)


# -- indexed bases and product tables ----------------------------------------

@dataclass
class BasisEntry:
    label: str
    weight: tuple
    m: object


class SymplecticModel:
    """Indexed bases of g and s with precomputed product tables.

    Tables (keys are basis indices, values sparse coordinate dicts):
    ``gg_br``: [x,y] in g; ``gg_ci``: x∘y in s; ``gg_tr``: tr(xy);
    ``gs_ci``: x∘s in g; ``gs_br``: [x,s] in s;
    ``ss_br``: [s,t] in g; ``ss_ci``: s∘t in s; ``ss_tr``: tr(st).
    """

    def __init__(self, r):
        self.r = r
        self.roots = RootDatumC(r)
        g = []
        for i, h in enumerate(h_basis(r), 1):
            g.append(BasisEntry(f"h{i}", self.roots.zero, h))
        for mu in sorted(self.roots.roots, reverse=True):
            g.append(BasisEntry(f"x[{self.roots.label(mu)}]", mu, g_basis(mu, r)))
        s = []
        for i, d in enumerate(s0_basis(r), 1):
            s.append(BasisEntry(f"d{i}", self.roots.zero, d))
        for w in sorted(s_weights(r), reverse=True):
            s.append(BasisEntry(f"s[{self.roots.label(w)}]", w, s_basis(w, r)))
        self.g = g
        self.s = s
        self.g_index = {e.weight: i for i, e in enumerate(g) if any(e.weight)}
        self.s_index = {e.weight: i for i, e in enumerate(s) if any(e.weight)}
        self.h_indices = list(range(r))
        self.s0_indices = list(range(r - 1))
        self._gspan = self._span(g)
        self._sspan = self._span(s)
        self._tables()

    @staticmethod
    def _flat(m):
        return {(int(i), int(j)): m[i, j] for i, j in np.argwhere(m != 0)}

    def _span(self, basis):
        sp = Span()
        for i, e in enumerate(basis):
            if sp.add(self._flat(e.m), i) is not None:
                raise SptoriError("dependent basis")
        return sp

    def g_coords(self, m):
        c = self._gspan.coords(self._flat(m))
        if c is None:
            raise SptoriError("matrix is not in sp_2r")
        return c

    def s_coords(self, m):
        c = self._sspan.coords(self._flat(m))
        if c is None:
            raise SptoriError("matrix is not in s")
        return c

    def _tables(self):
        # All basis matrices are integral, so the products are computed in int64
        # and decomposed with an integral left inverse (common denominator).
        r = self.r
        n = 2 * r
        G = np.array([e.m for e in self.g], dtype=object).astype(np.int64)
        S = np.array([e.m for e in self.s], dtype=object).astype(np.int64)
        ginv = _IntLeftInverse(G.reshape(len(G), -1))
        sinv = _IntLeftInverse(S.reshape(len(S), -1))
        eye = np.eye(n, dtype=np.int64)

        def prods(X, Y):
            XY = np.einsum("aij,bjk->abik", X, Y)
            YX = np.einsum("bij,ajk->abik", Y, X)
            tr = np.einsum("abii->ab", XY)
            circ_r = r * (XY + YX) - tr[:, :, None, None] * eye
            return XY - YX, circ_r, tr

        def table(arr, inv, den):
            a, b = arr.shape[:2]
            coords = inv.solve(arr.reshape(a * b, -1), den)
            out = {}
            for i in range(a):
                for j in range(b):
                    out[i, j] = coords[i * b + j]
            return out

        br, ci, tr = prods(G, G)
        self.gg_br = table(br, ginv, 1)
        self.gg_ci = table(ci, sinv, r)
        self.gg_tr = {(i, j): Q(int(tr[i, j])) for i in range(len(G)) for j in range(len(G))}
        br, ci, tr = prods(G, S)
        self.gs_br = table(br, sinv, 1)
        self.gs_ci = table(ci, ginv, r)
        br, ci, tr = prods(S, S)
        self.ss_br = table(br, ginv, 1)
        self.ss_ci = table(ci, sinv, r)
        self.ss_tr = {(i, j): Q(int(tr[i, j])) for i in range(len(S)) for j in range(len(S))}

    def coroot_g(self, mu):
        """mu-check as a g-coordinate vector (on the h basis)."""
        return {i: c for i, c in enumerate(self.roots.coroot(mu)) if c}

    def h_action(self, weight, hcoords):
        return sum(Q(w) * c for w, c in zip(weight, (hcoords.get(i, 0) for i in range(self.r))))

    @property
    def dim_g(self):
        return len(self.g)

    @property
    def dim_s(self):
        return len(self.s)


class _IntLeftInverse:
    """Exact left inverse of an integer matrix B (rows = basis vectors), scaled to integers.

    ``solve(V, den)`` returns, for each row v of V, the coordinates c with
    ``c @ B = v / den``; it raises if some v is not in the row space.
    """

    def __init__(self, B):
        from fractions import Fraction
        self.B = B
        k, m = B.shape
        gram = [[Fraction(int(x)) for x in row] for row in B.dot(B.T)]
        inv = _fraction_inverse(gram)
        den = 1
        for row in inv:
            for x in row:
                den = den * x.denominator // _gcd(den, x.denominator)
        self.den = den
        invi = np.array([[int(x * den) for x in row] for row in inv], dtype=object)
        self.L = invi.dot(B.astype(object))  # k x m, integral, = den * (B B^T)^-1 B
        self.B = B.astype(np.int64)

    def solve(self, V, den=1):
        total = self.den * den
        L, B = self.L, self.B
        bound = int(np.abs(V).max(initial=0)) * int(np.abs(L).max(initial=0)) * V.shape[1]
        if bound * int(np.abs(B).max(initial=0)) * B.shape[0] < 2 ** 62:
            L = L.astype(np.int64)
        else:
            V = V.astype(object)
        C = V.dot(L.T)  # rows: total * coords
        if not np.array_equal(C.dot(B), V * self.den):
            raise SptoriError("a product left the expected space")
        out = []
        for row in C.tolist():
            out.append({i: Q(c, total) for i, c in enumerate(row) if c})
        return out


def _gcd(a, b):
    import math
    return math.gcd(a, b)


def _fraction_inverse(a):
    from fractions import Fraction
    n = len(a)
    m = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


@lru_cache(maxsize=None)
def model(r):
    return SymplecticModel(r)


# -- witness matrices ----------------------------------------------------------

def product_witnesses(r):
    """Matrices whose brackets read off the coordinate products.

    ``w`` in g_{eps1-eps2} and ``z`` in g_{2 eps2}: [w,z] and w∘z are both
    nonzero, so [w⊗a, z⊗a'] carries a∘a' and [a,a'].  ``s`` in s_{eps2-eps1}
    pairs with ``w`` (A×B products) and with ``s2`` in s_{eps1+eps2} (b∘b');
    for r >= 3, ``t`` in s_{eps1-eps3} gives s∘t != 0 and hence [b,b'].
    """
    n = 2 * r
    out = {
        "w": E(1, 2, r) - E(n - 1, n, r),
        "z": E(2, n - 1, r),
        "s": E(2, 1, r) + E(n, n - 1, r),
        "s2": E(1, n - 1, r) - E(2, n, r),
    }
    if r >= 3:
        out["t"] = E(1, 3, r) + E(n - 2, n, r)
    return out


def division_witnesses(r):
    """The pairs (e, e') and (s, s') used to solve [x, y] = mu-check for x = e⊗a + s⊗b.

    e = E12 - E34 and s = E12 + E34 (and their halved transposes) for r = 2;
    for larger r the second block moves to rows/columns (bar 2, bar 1).
    """
    n = 2 * r
    half = Q(1, 2)
    e = E(1, 2, r) - E(n - 1, n, r)
    s = E(1, 2, r) + E(n - 1, n, r)
    e2 = (E(2, 1, r) - E(n, n - 1, r)) * half
    s2 = (E(2, 1, r) + E(n, n - 1, r)) * half
    return {"e": e, "e2": e2, "s": s, "s2": s2}
