"""Structural checks on a LieAlgebra: bigrading, Jacobi, center, graded simplicity."""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor

from .errors import InconclusiveError
from .linalg import Span, axpy, scale
from .report import Check, Report, PASS, FAIL, INCONCLUSIVE


def _add_weights(a, b):
    return tuple(x + y for x, y in zip(a, b))


def bigrading_check(L, window=None, limit=5):
    """[L_mu^g, L_nu^h] ⊆ L_{mu+nu}^{g+h} and antisymmetry on all basis pairs."""
    ch = Check("bigrading", window=None if L.is_finite else window)
    anti = Check("antisymmetry", window=ch.window)
    keys = L.keys(window)
    for a, b in itertools.combinations_with_replacement(keys, 2):
        v = L.bracket_basis(a, b)
        w = L.bracket_basis(b, a)
        ch.count += 1
        anti.count += 1
        if axpy(dict(v), 1, w):
            anti.fail((a, b), limit=limit)
        mu = _add_weights(L.weight(a), L.weight(b))
        g = L.spec.add(L.gdeg(a), L.gdeg(b))
        for k in v:
            if L.weight(k) != mu or L.gdeg(k) != g:
                ch.fail((a, b, k), limit=limit)
                break
    return ch, anti


def _jacobi_value(L, a, b, c):
    out = {}
    br = L.bracket_basis
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        yz = br(y, z)
        for k, coef in yz.items():
            v = br(x, k)
            if v:
                axpy(out, coef, v)
    return out


def _triples(L, keys):
    """Index triples i < j < k whose weight sum is a root or zero (others vanish by the bigrading)."""
    allowed = set(L.weights())
    wts = [L.weight(k) for k in keys]
    n = len(keys)
    for i in range(n):
        wi = wts[i]
        for j in range(i + 1, n):
            wij = _add_weights(wi, wts[j])
            for k in range(j + 1, n):
                if _add_weights(wij, wts[k]) in allowed:
                    yield i, j, k


_WORKER = {}


def _jacobi_chunk(args):
    start, step, limit = args
    L, keys = _WORKER["L"], _WORKER["keys"]
    bad, count = [], 0
    for t, (i, j, k) in enumerate(_triples(L, keys)):
        if t % step != start:
            continue
        count += 1
        if _jacobi_value(L, keys[i], keys[j], keys[k]):
            bad.append((keys[i], keys[j], keys[k]))
            if len(bad) >= limit:
                break
    return bad, count


def jacobi_check(L, window=None, jobs=1, limit=5):
    """Jacobi identity on all basis triples (inside ``window`` in window mode).

    Triples whose weight sum is not in Δ ∪ {0} are skipped: every term of
    their Jacobi sum lies in a zero weight space (bigrading law, verified
    separately).
    """
    keys = L.keys(window)
    ch = Check("jacobi", window=None if L.is_finite else window)
    if jobs and jobs > 1:
        _WORKER["L"], _WORKER["keys"] = L, keys
        try:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                results = list(ex.map(_jacobi_chunk, [(s, jobs, limit) for s in range(jobs)]))
        finally:
            _WORKER.clear()
        for bad, count in results:
            ch.count += count
            for w in bad:
                ch.fail(w, limit=limit)
        return ch
    for i, j, k in _triples(L, keys):
        ch.count += 1
        if _jacobi_value(L, keys[i], keys[j], keys[k]):
            ch.fail((keys[i], keys[j], keys[k]), limit=limit)
            if len(ch.witnesses) >= limit:
                break
    return ch


def lie_center(L):
    """Basis of the center (the center of a graded algebra is graded, so solve per cell)."""
    if not L.is_finite:
        raise InconclusiveError("the center is only computed in full mode")
    keys = L.keys()
    out = []
    for mu, g, cell in L.cells():
        cols = []
        for z in cell:
            col = {}
            for k in keys:
                for kk, c in L.bracket_basis(z, k).items():
                    col[(k, kk)] = c
            cols.append(col)
        sp = Span()
        for i, col in enumerate(cols):
            rel = sp.add(col, i)
            if rel is not None:
                out.append({cell[j]: c for j, c in rel.items()})
    return out


def ideal_closure(L, seeds, stop_at=None):
    """Span of the ideal generated by ``seeds`` (finite L)."""
    keys = L.keys()
    sp = Span()
    queue = []
    for v in seeds:
        if sp.add(v) is None:
            queue.append(v)
    while queue:
        v = queue.pop()
        for k in keys:
            w = L.bracket({k: 1}, v)
            if w and sp.add(w) is None:
                queue.append(w)
                if stop_at is not None and sp.dim >= stop_at:
                    return sp
    return sp


def graded_simple_check(L):
    """Tri-state graded simplicity.

    Passes when: the center is zero; the ideal generated by the grading
    subalgebra is all of L; and every root-cell basis vector y of L_mu^g has
    some y' in L_{-mu}^{-g} with [[y, y'], e_mu] != 0 (so its ideal contains
    e_mu, hence g, hence L).  Zero-weight elements are covered by the zero
    center together with L_0 = sum [L_mu, L_-mu].  Root cells of dimension > 1
    make the verdict inconclusive.
    """
    ch = Check("graded-simple")
    if not L.is_finite:
        ch.status = INCONCLUSIVE
        ch.detail = "window mode"
        return ch
    if lie_center(L):
        return ch.fail("nonzero center")
    n = L.dimension()
    gvecs = [L.g_vector(m) for m in range(L.model.dim_g)]
    if ideal_closure(L, gvecs).dim != n:
        return ch.fail("ideal generated by the grading subalgebra is proper")
    for mu, g, cell in L.cells():
        if not any(mu):
            continue
        if len(cell) > 1:
            ch.status = INCONCLUSIVE
            ch.detail = f"root cell {mu},{g} has dimension {len(cell)}"
            continue
        y = cell[0]
        e = L.g_vector(L.model.g_index[mu])
        ok = False
        for y2 in L.cell(tuple(-x for x in mu), L.spec.neg(g)):
            t = L.bracket_basis(y, y2)
            if t and L.bracket(t, e):
                ok = True
                break
        ch.count += 1
        if not ok:
            return ch.fail((mu, g, y))
    return ch


def lie_report(L, jobs=1, window=None):
    rep = Report("lie")
    bg, anti = bigrading_check(L, window)
    rep.add(anti)
    rep.add(bg)
    rep.add(jacobi_check(L, window=window, jobs=jobs))
    if L.is_finite:
        c = Check("center-zero")
        z = lie_center(L)
        if z:
            c.fail(z[0])
        rep.add(c)
    return rep
