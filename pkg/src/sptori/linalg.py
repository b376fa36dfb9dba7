"""Sparse exact linear algebra over Q.

Vectors are dicts mapping hashable keys to nonzero mpq coefficients.  The
workhorse is :class:`Span`, an incremental echelon basis that also remembers
how each basis row was built from tagged generators, so membership tests can
return coordinates and dependent generators yield kernel relations.
"""
from __future__ import annotations

from .foundations import Q, ZERO


def vec(items=None):
    out = {}
    if items:
        for k, c in (items.items() if isinstance(items, dict) else items):
            add_to(out, k, c)
    return out


def add_to(v, k, c):
    if not c:
        return
    c = v.get(k, ZERO) + c
    if c:
        v[k] = c
    else:
        v.pop(k, None)


def axpy(v, c, w):
    """In place ``v += c*w``."""
    if not c:
        return v
    for k, x in w.items():
        add_to(v, k, c * x)
    return v


def vadd(*vs):
    out = {}
    for v in vs:
        axpy(out, 1, v)
    return out


def vsub(v, w):
    return axpy(dict(v), -1, w)


def scale(c, v):
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def lincomb(pairs):
    out = {}
    for c, v in pairs:
        axpy(out, c, v)
    return out


def is_zero(v):
    return not v


def leading(v, order=None):
    if order is not None:
        return min(v, key=order)
    try:
        return min(v)
    except TypeError:
        return min(v, key=repr)


def normalize(v, order=None):
    """Scale so the leading coefficient is 1."""
    if not v:
        return v
    return scale(1 / v[leading(v, order)], v)


class Span:
    """Echelon basis of a subspace with generator bookkeeping."""

    __slots__ = ("rows", "pivots", "tags", "order")

    def __init__(self, order=None):
        self.rows = []  # (pivot, row, tagcombo)
        self.pivots = {}
        self.order = order

    def __len__(self):
        return len(self.rows)

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v, tags=None):
        """Return ``(residue, tagcombo)``; residue is v minus its projection along the basis.

        ``tagcombo`` tracks ``tags - sum(c_i * rowtags_i)``.
        """
        v = dict(v)
        t = dict(tags) if tags is not None else None
        for p, row, rt in self.rows:
            c = v.get(p)
            if c:
                axpy(v, -c, row)
                if t is not None:
                    axpy(t, -c, rt)
        return v, t

    def add(self, v, tag=None):
        """Insert v.  Returns ``None`` if independent, else the relation (tag combination) it satisfies."""
        tags = {tag: Q(1)} if tag is not None else {}
        res, t = self.reduce(v, tags)
        if not res:
            return t
        p = leading(res, self.order)
        c = 1 / res[p]
        res = scale(c, res)
        t = scale(c, t)
        self.rows.append((p, res, t))
        self.pivots[p] = len(self.rows) - 1
        return None

    def contains(self, v):
        return not self.reduce(v)[0]

    def coords(self, v):
        """Tag combination expressing v, or ``None`` when v is outside the span."""
        res, t = self.reduce(v, {})
        if res:
            return None
        return scale(-1, t)

    def basis(self):
        return [row for _, row, _ in self.rows]

    def copy(self):
        s = Span(self.order)
        s.rows = list(self.rows)
        s.pivots = dict(self.pivots)
        return s


def span_of(vectors, order=None):
    s = Span(order)
    for i, v in enumerate(vectors):
        s.add(v, i)
    return s


def rank(vectors):
    return span_of(vectors).dim


def independent_subset(vectors):
    """Indices of a maximal independent subset, chosen greedily in order."""
    s = Span()
    out = []
    for i, v in enumerate(vectors):
        if s.add(v, i) is None:
            out.append(i)
    return out


def kernel(columns, order=None):
    """Basis of ``{c : sum_i c_i columns[i] = 0}`` as dicts index -> coefficient.

    Each basis vector has coefficient 1 on a distinct dependent column, giving a
    deterministic normalized basis.
    """
    s = Span(order)
    out = []
    for i, v in enumerate(columns):
        rel = s.add(v, i)
        if rel is not None:
            out.append(rel)
    return out


def solve(columns, target):
    """Some coefficient dict c with ``sum c_i columns[i] = target``, or ``None``."""
    s = span_of(columns)
    return s.coords(target)


def same_span(vs, ws):
    a = span_of(vs)
    b = span_of(ws)
    return a.dim == b.dim and all(a.contains(w) for w in ws)


def apply_matrix(mat, v):
    """``mat`` maps key -> image vector (column dict)."""
    out = {}
    for k, c in v.items():
        col = mat.get(k)
        if col:
            axpy(out, c, col)
    return out
