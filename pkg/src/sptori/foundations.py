"""Exact scalars and finitely generated abelian groups ``Z^n x Z_m1 x ... x Z_mk``.

Degrees are stored internally as plain integer tuples (torsion slots reduced);
:class:`GroupElement` is the typed wrapper used at API boundaries.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

from .errors import SpecMismatchError, UnsupportedForInfiniteGroup

Q = gmpy2.mpq
ZERO = Q(0)
ONE = Q(1)
HALF = Q(1, 2)


def qq(x, den=1):
    """Coerce ints, Fractions, strings like ``"3/4"`` or ``[num, den]`` pairs to mpq."""
    if isinstance(x, (list, tuple)):
        return Q(int(x[0]), int(x[1]))
    if isinstance(x, Fraction):
        return Q(x.numerator, x.denominator)
    if isinstance(x, str):
        return Q(Fraction(x))
    if den != 1:
        return Q(x, den)
    return Q(x)


def q_to_pair(x):
    x = Q(x)
    return [int(x.numerator), int(x.denominator)]


@dataclass(frozen=True)
class GroupSpec:
    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(m) for m in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free_rank must be nonnegative")
        if any(m < 2 for m in self.torsion):
            raise ValueError(f"torsion entries must be >= 2, got {self.torsion}")

    @property
    def rank(self):
        """Number of coordinates (free plus torsion)."""
        return self.free_rank + len(self.torsion)

    @property
    def is_finite(self):
        return self.free_rank == 0

    @property
    def order(self):
        if not self.is_finite:
            return None
        out = 1
        for m in self.torsion:
            out *= m
        return out

    @property
    def zero(self):
        return (0,) * self.rank

    def reduce(self, coords) -> tuple:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise SpecMismatchError(f"{coords} does not conform to {self}")
        n = self.free_rank
        return coords[:n] + tuple(c % m for c, m in zip(coords[n:], self.torsion))

    def add(self, a, b) -> tuple:
        n = self.free_rank
        out = [x + y for x, y in zip(a, b)]
        for j, m in enumerate(self.torsion):
            out[n + j] %= m
        return tuple(out)

    def neg(self, a) -> tuple:
        return self.reduce(-x for x in a)

    def sub(self, a, b) -> tuple:
        return self.add(a, self.neg(b))

    def scale(self, k, a) -> tuple:
        return self.reduce(k * x for x in a)

    def element(self, coords) -> "GroupElement":
        return GroupElement(self, self.reduce(coords))

    def unit_vector(self, i) -> tuple:
        return self.reduce(1 if j == i else 0 for j in range(self.rank))

    def elements(self):
        """All elements of a finite group, in lexicographic order."""
        if not self.is_finite:
            raise UnsupportedForInfiniteGroup("cannot enumerate an infinite group")
        return list(itertools.product(*(range(m) for m in self.torsion)))

    def window(self, radius: int):
        """Degrees whose free coordinates lie in ``[-radius, radius]``; torsion slots range fully."""
        ranges = [range(-radius, radius + 1)] * self.free_rank
        ranges += [range(m) for m in self.torsion]
        return list(itertools.product(*ranges))

    def in_window(self, g, radius) -> bool:
        if radius is None:
            return True
        return all(abs(c) <= radius for c in g[: self.free_rank])

    def to_dict(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d.get("free_rank", 0)), tuple(d.get("torsion", ())))


@dataclass(frozen=True)
class GroupElement:
    spec: GroupSpec
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", self.spec.reduce(self.coords))

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.spec != self.spec:
            raise SpecMismatchError(f"{other!r} is not an element of {self.spec}")

    def __add__(self, other):
        self._check(other)
        return GroupElement(self.spec, self.spec.add(self.coords, other.coords))

    def __neg__(self):
        return GroupElement(self.spec, self.spec.neg(self.coords))

    def __sub__(self, other):
        self._check(other)
        return self + (-other)

    def is_zero(self):
        return not any(self.coords)


def grp_op(a: GroupElement, b: GroupElement | None = None, op: str = "add") -> GroupElement:
    if op == "add":
        return a + b
    if op == "neg":
        return -a
    raise ValueError(f"unknown group operation {op!r}")


def _as_coords(spec, x):
    if isinstance(x, GroupElement):
        if x.spec != spec:
            raise SpecMismatchError(f"{x!r} is not an element of {spec}")
        return x.coords
    return spec.reduce(x)


def integer_echelon(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Hermite-style row echelon form over Z: positive pivots, entries above pivots reduced."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not nz:
            col += 1
            continue
        # Euclid on the column until a single row carries it
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            new = [piv]
            for r in nz[1:]:
                f = r[col] // piv[col]
                r = [x - f * y for x, y in zip(r, piv)]
                if r[col] != 0:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            nz = new
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for r in out:
            f = r[col] // piv[col]
            if f:
                r[:] = [x - f * y for x, y in zip(r, piv)]
        out.append(piv)
        rows = rest
        col += 1
    return out


@dataclass(frozen=True)
class SubgroupDesc:
    """Subgroup of a finitely generated abelian group via an integer echelon lattice.

    The lattice lives in ``Z^(n+k)`` and contains the torsion relations
    ``m_j e_(n+j)``, so membership of a lifted element decides membership in G.
    """

    spec: GroupSpec
    generators: tuple
    echelon: tuple = field(compare=False)

    def contains(self, x) -> bool:
        v = list(_as_coords(self.spec, x))
        for row in self.echelon:
            col = next(i for i, c in enumerate(row) if c)
            if v[col] % row[col]:
                return False
            f = v[col] // row[col]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return not any(v)

    membership = contains

    def equals_whole_group(self) -> bool:
        return len(self.echelon) == self.spec.rank and all(
            row[i] == 1 for i, row in enumerate(self.echelon)
        )

    def index(self):
        """Index [G : H] for full-rank lattices; ``None`` when infinite."""
        if len(self.echelon) < self.spec.rank:
            return None
        out = 1
        for i, row in enumerate(self.echelon):
            out *= row[i]
        return out

    def elements(self):
        if not self.spec.is_finite:
            raise UnsupportedForInfiniteGroup("cannot enumerate a subgroup of an infinite group")
        return [g for g in self.spec.elements() if self.contains(g)]


def subgroup_generated(S: Iterable, spec: GroupSpec | None = None) -> SubgroupDesc:
    S = list(S)
    if spec is None:
        if not S or not isinstance(S[0], GroupElement):
            raise ValueError("spec required when generators are raw tuples or empty")
        spec = S[0].spec
    gens = tuple(sorted({_as_coords(spec, s) for s in S}))
    n = spec.free_rank
    rows = [list(g) for g in gens]
    for j, m in enumerate(spec.torsion):
        rel = [0] * spec.rank
        rel[n + j] = m
        rows.append(rel)
    ech = integer_echelon(rows, spec.rank)
    return SubgroupDesc(spec, gens, tuple(tuple(r) for r in ech))


def is_subgroup(S: Iterable, spec: GroupSpec) -> bool:
    if not spec.is_finite:
        raise UnsupportedForInfiniteGroup(
            "is_subgroup needs a finite group; use subgroup_generated on a window"
        )
    S = {_as_coords(spec, s) for s in S}
    if spec.zero not in S:
        return False
    for a in S:
        if spec.neg(a) not in S:
            return False
        for b in S:
            if spec.add(a, b) not in S:
                return False
    return True


def subgroup_status_in_window(S: Iterable, spec: GroupSpec, radius: int):
    """Tri-state subgroup test for a support known only inside a window.

    Returns ``("fail", witness)`` when closure is violated by elements whose sum
    stays inside the window, ``("pass", None)`` for finite groups that pass, and
    ``("inconclusive", None)`` otherwise.
    """
    S = {_as_coords(spec, s) for s in S}
    if spec.is_finite:
        return ("pass", None) if is_subgroup(S, spec) else ("fail", _closure_witness(S, spec, None))
    w = _closure_witness(S, spec, radius)
    if w is not None:
        return "fail", w
    return "inconclusive", None


def _closure_witness(S, spec, radius):
    if spec.zero not in S and spec.in_window(spec.zero, radius):
        return ("missing-identity", spec.zero)
    for a in sorted(S):
        na = spec.neg(a)
        if spec.in_window(na, radius) and na not in S:
            return ("missing-inverse", a)
        for b in sorted(S):
            c = spec.add(a, b)
            if spec.in_window(c, radius) and c not in S:
                return ("not-closed", a, b)
    return None
