"""Bigraded Lie algebras given by structure constants.

A :class:`LieAlgebra` exposes a homogeneous basis indexed by keys, each key
carrying a root weight (tuple over eps_1..eps_r, zero for the 0-weight space)
and a G-degree.  Everything downstream (verifier, extraction) uses only this
interface: ``keys``/``cell``, ``bracket``, ``g_vector`` (the embedding of the
grading subalgebra), ``h_vector`` and the root datum.
"""
from __future__ import annotations

import itertools

from .errors import SptoriError, InconclusiveError
from .foundations import GroupSpec, ONE
from .linalg import axpy, scale
from .symplectic import model


class LieAlgebra:
    """Base class: subclasses implement ``_bracket_basis`` and the key enumeration."""

    spec: GroupSpec
    r: int
    window = None

    def __init__(self, spec, r):
        self.spec = spec
        self.r = r
        self.model = model(r)
        self.roots = self.model.roots
        self._br = {}

    # -- interface -------------------------------------------------------
    @property
    def is_finite(self):
        return self.window is None

    def keys(self, window=None):
        raise NotImplementedError

    def weight(self, k):
        raise NotImplementedError

    def gdeg(self, k):
        raise NotImplementedError

    def cell(self, mu, g):
        raise NotImplementedError

    def g_vector(self, m):
        """Image of the m-th basis matrix of sp_2r in L."""
        raise NotImplementedError

    def label(self, k):
        return repr(k)

    def _bracket_basis(self, a, b):
        raise NotImplementedError

    # -- derived ---------------------------------------------------------
    def bracket_basis(self, a, b):
        key = (a, b)
        v = self._br.get(key)
        if v is None:
            if a == b:
                v = {}
            else:
                w = self._br.get((b, a))
                v = scale(-1, w) if w is not None else self._bracket_basis(a, b)
            self._br[key] = v
        return v

    def bracket(self, u, v):
        out = {}
        for a, ca in u.items():
            for b, cb in v.items():
                br = self.bracket_basis(a, b)
                if br:
                    axpy(out, ca * cb, br)
        return out

    def h_vector(self, coeffs):
        """Element of the Cartan subalgebra given by coefficients on h_1..h_r."""
        out = {}
        for i, c in enumerate(coeffs):
            if c:
                axpy(out, c, self.g_vector(i))
        return out

    def coroot_vector(self, mu):
        return self.h_vector(self.roots.coroot(mu))

    def weights(self):
        return [self.roots.zero] + self.roots.roots

    def degrees(self, window=None):
        w = self.window if window is None else window
        if self.spec.is_finite and w is None:
            return self.spec.elements()
        return self.spec.window(w)

    def cells(self, window=None):
        for mu in self.weights():
            for g in self.degrees(window):
                ks = self.cell(mu, g)
                if ks:
                    yield mu, g, ks

    def dimension(self, window=None):
        return len(self.keys(window))

    def dim_table(self, window=None):
        return {(mu, g): len(ks) for mu, g, ks in self.cells(window)}


class TableLieAlgebra(LieAlgebra):
    """Finite Lie algebra given by an explicit table (used for files and synthetic inputs).

    ``basis``: dict key -> (weight, degree); ``table``: (a, b) -> vector for a < b
    in key order (antisymmetry fills the rest); ``g_embedding``: list of vectors,
    indexed like the sp_2r basis of :mod:`symplectic`.
    """

    def __init__(self, spec, r, basis, table, g_embedding, labels=None):
        super().__init__(spec, r)
        self._basis = dict(basis)
        self._keys = list(basis)
        self._pos = {k: i for i, k in enumerate(self._keys)}
        self._table = {}
        for (a, b), v in table.items():
            v = {k: c for k, c in v.items() if c}
            self._table[(a, b)] = v
            self._table[(b, a)] = scale(-1, v)
        self._g = [dict(v) for v in g_embedding]
        self._labels = labels or {}
        self._cells = {}
        for k, (mu, g) in self._basis.items():
            self._cells.setdefault((tuple(mu), spec.reduce(g)), []).append(k)

    def keys(self, window=None):
        if window is None:
            return list(self._keys)
        return [k for k in self._keys if self.spec.in_window(self.gdeg(k), window)]

    def weight(self, k):
        return tuple(self._basis[k][0])

    def gdeg(self, k):
        return self.spec.reduce(self._basis[k][1])

    def cell(self, mu, g):
        return list(self._cells.get((tuple(mu), self.spec.reduce(g)), ()))

    def g_vector(self, m):
        return self._g[m]

    def label(self, k):
        return self._labels.get(k, repr(k))

    def _bracket_basis(self, a, b):
        return dict(self._table.get((a, b), {}))

    def structure_table(self):
        out = {}
        for a, b in itertools.combinations(self._keys, 2):
            v = self.bracket_basis(a, b)
            if v:
                out[(a, b)] = v
        return out


def materialize(L, window=None):
    """Copy any finite LieAlgebra (or a window of one) into a :class:`TableLieAlgebra`."""
    keys = L.keys(window)
    basis = {k: (L.weight(k), L.gdeg(k)) for k in keys}
    keyset = set(keys)
    table = {}
    for a, b in itertools.combinations(keys, 2):
        v = L.bracket_basis(a, b)
        if v and (window is None or set(v) <= keyset):
            table[(a, b)] = v
    g = [L.g_vector(m) for m in range(L.model.dim_g)]
    labels = {k: L.label(k) for k in keys}
    return TableLieAlgebra(L.spec, L.r, basis, table, g, labels)


def with_central_line(L, mu=None, g=None, key=("z",)):
    """Synthetic ``L + F z`` with z central, of weight ``mu`` (default 0) and degree ``g`` (default 0)."""
    if not L.is_finite:
        raise InconclusiveError("central extension test inputs need a finite algebra")
    mu = tuple(mu) if mu is not None else L.roots.zero
    g = L.spec.reduce(g) if g is not None else L.spec.zero
    base = materialize(L)
    basis = dict(base._basis)
    basis[key] = (mu, g)
    table = {k: v for k, v in base._table.items()}
    labels = dict(base._labels)
    labels[key] = "z"
    return TableLieAlgebra(L.spec, L.r, basis, table, base._g, labels)
