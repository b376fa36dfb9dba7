"""Constructor configs and the JSON file formats for algebras and Lie algebras.

Algebra files are one JSON document: basis keys with degrees, structure
constants as ``[i, j, [[k, num, den], ...]]`` triples and the involution as
one matrix per component.  Lie algebra files are JSON lines: a header line
(basis as ``[mu, g, i]`` triples, grading-subalgebra embedding, source
config), then one line per nonzero bracket of basis elements ``a < b``.

Algebras over an infinite grading group are only stored inside a window;
such files keep their constructor config, and loading rebuilds the algebra
from it and compares the stored constants against the rebuilt ones.
"""
from __future__ import annotations

import json

import jsonschema

from .algebra import GradedAlgebra, Involution
from .constructors import CliffordData, CocycleMatrix, clifford_torus, octonion_torus, quantum_torus, reversal_involution
from .errors import ConfigError, SpecMismatchError
from .foundations import GroupSpec, q_to_pair, qq, subgroup_generated
from .lie import TableLieAlgebra

_rational = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}]}
_group = {
    "type": "object",
    "properties": {
        "free_rank": {"type": "integer", "minimum": 0},
        "torsion": {"type": "array", "items": {"type": "integer", "minimum": 2}},
    },
    "required": ["free_rank", "torsion"],
    "additionalProperties": False,
}
_intvec = {"type": "array", "items": {"type": "integer"}}

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["quantum", "octonion", "clifford"]},
        "group": _group,
        "q": {"type": "array", "items": {"type": "array", "items": _rational}},
        "involution": {
            "type": "object",
            "properties": {"kind": {"const": "reversal"},
                           "signs": {"type": "array", "items": {"enum": [1, -1]}}},
            "additionalProperties": False,
        },
        "n": {"type": "integer", "minimum": 3},
        "plus_subgroup": {"type": "array", "items": _intvec},
        "module": {"type": "array", "items": _intvec},
        "form": {"type": "array", "items": {"type": "array", "prefixItems": [
            {"type": "integer"}, {"type": "integer"}, _rational], "minItems": 3, "maxItems": 3}},
        "window": {"type": "integer", "minimum": 0},
        "sp": {
            "type": "object",
            "required": ["r"],
            "properties": {
                "r": {"type": "integer", "minimum": 2},
                "jacobi": {"type": "boolean"},
                "jacobi_window": {"type": "integer", "minimum": 0},
            },
            "additionalProperties": False,
        },
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": "quantum"}}}, "then": {"required": ["group", "q"]}},
        {"if": {"properties": {"kind": {"const": "clifford"}}},
         "then": {"required": ["group", "plus_subgroup", "module"]}},
    ],
    "additionalProperties": False,
}


def validate_config(cfg):
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path)
        raise ConfigError(f"config violates the schema at '{path}': {e.message}") from None


def algebra_from_config(cfg):
    """(algebra, involution) described by a constructor config."""
    validate_config(cfg)
    kind = cfg["kind"]
    if kind == "quantum":
        spec = GroupSpec.from_dict(cfg["group"])
        q = cfg["q"]
        if len(q) != spec.rank or any(len(row) != spec.rank for row in q):
            raise SpecMismatchError(f"q must be {spec.rank}x{spec.rank}")
        alg = quantum_torus(spec, CocycleMatrix(tuple(tuple(qq(x) for x in row) for row in q)))
        inv = cfg.get("involution", {})
        return alg, reversal_involution(alg, inv.get("signs"))
    if kind == "octonion":
        return octonion_torus(cfg.get("n", 3))
    spec = GroupSpec.from_dict(cfg["group"])
    H = subgroup_generated([tuple(g) for g in cfg["plus_subgroup"]], spec)
    form = {(int(i), int(j)): qq(c) for i, j, c in cfg.get("form", [])}
    return clifford_torus(spec, CliffordData(H, [tuple(d) for d in cfg["module"]], form))


def _jkey(k):
    if isinstance(k, tuple):
        return [_jkey(x) for x in k]
    return k


def _tkey(k):
    if isinstance(k, list):
        return tuple(_tkey(x) for x in k)
    return k


def _vec_out(v, idx):
    return [[idx[k], *q_to_pair(c)] for k, c in sorted(v.items(), key=lambda kc: idx[kc[0]])]


def _vec_in(rows, keys):
    return {keys[i]: qq([n, d]) for i, n, d in rows}


# -- coordinate algebras ------------------------------------------------------------


def algebra_to_dict(alg, sigma, window=None, config=None):
    if alg.is_finite:
        keys, window = list(alg.keys), None
    else:
        if window is None:
            raise SpecMismatchError("an infinite algebra is stored inside a window")
        keys = alg.test_keys(window)
    idx = {k: i for i, k in enumerate(keys)}
    table = []
    for a in keys:
        for b in keys:
            v = alg.mul_basis(a, b)
            if v and all(k in idx for k in v):
                table.append([idx[a], idx[b], _vec_out(v, idx)])
    comps = {}
    for k in keys:
        comps.setdefault(alg.spec.reduce(alg.degree(k)), []).append(k)
    inv = []
    for g, ks in comps.items():
        mat = [[q_to_pair(sigma.image(col).get(row, 0)) for col in ks] for row in ks]
        inv.append({"degree": list(g), "keys": [idx[k] for k in ks], "matrix": mat})
    return {
        "format": "sptori-algebra",
        "version": 1,
        "name": alg.name,
        "kind": alg.kind_claim,
        "group": alg.spec.to_dict(),
        "window": window,
        "config": config if config is not None else alg.config,
        "basis": [{"key": _jkey(k), "degree": list(alg.spec.reduce(alg.degree(k))), "label": alg.label(k)}
                  for k in keys],
        "unit": _vec_out(alg.unit, idx) if alg.unit else None,
        "table": table,
        "involution": inv,
    }


def algebra_from_dict(d):
    """(algebra, involution, stored) where ``stored`` is the file's own table algebra.

    Windowed files rebuild the algebra from their config; ``stored`` is then
    used only for comparison (see :func:`stored_mismatches`).
    """
    if d.get("format") != "sptori-algebra":
        raise ConfigError("not an algebra file")
    spec = GroupSpec.from_dict(d["group"])
    keys = [_tkey(b["key"]) for b in d["basis"]]
    degrees = {k: tuple(b["degree"]) for k, b in zip(keys, d["basis"])}
    labels = {k: b["label"] for k, b in zip(keys, d["basis"])}
    table = {(keys[i], keys[j]): _vec_in(rows, keys) for i, j, rows in d["table"]}
    images = {}
    for comp in d["involution"]:
        ks = [keys[i] for i in comp["keys"]]
        for c, col in enumerate(ks):
            images[col] = {ks[r]: qq(comp["matrix"][r][c]) for r in range(len(ks)) if qq(comp["matrix"][r][c])}
    unit = _vec_in(d["unit"], keys) if d.get("unit") else None
    if d.get("window") is None:
        alg = GradedAlgebra.from_table(spec, degrees, table, unit=unit, kind_claim=d.get("kind", "unconstrained"),
                                       name=d.get("name", "algebra"), labels=labels)
        alg.config = d.get("config")
        return alg, Involution(alg, images), None
    if not d.get("config"):
        raise ConfigError("a windowed algebra file needs its constructor config")
    alg, sigma = algebra_from_config(d["config"])
    stored = {"keys": keys, "table": table, "involution": images}
    return alg, sigma, stored


def stored_mismatches(alg, sigma, stored, limit=5):
    """Differences between a windowed file's stored constants and the rebuilt algebra."""
    out = []
    keys = stored["keys"]
    keyset = set(keys)
    for a in keys:
        for b in keys:
            v = alg.mul_basis(a, b)
            if v and not set(v) <= keyset:
                continue
            if stored["table"].get((a, b), {}) != v:
                out.append(("product", a, b))
                if len(out) >= limit:
                    return out
    for k in keys:
        if stored["involution"].get(k, {}) != sigma.image(k):
            out.append(("involution", k))
    return out[:limit]


# -- Lie algebras ------------------------------------------------------------------------


def _lie_index(L, window):
    out = {}
    for mu, g, cell in L.cells(window):
        for i, k in enumerate(cell):
            out[k] = [list(mu), list(g), i]
    return out


def lie_to_lines(L, window=None, config=None):
    """JSON lines for a Lie algebra (finite, or the window of a lazy one)."""
    w = None if L.is_finite else (window if window is not None else L.window)
    idx = _lie_index(L, w)
    keys = [k for mu, g, cell in L.cells(w) for k in cell]
    pos = {k: n for n, k in enumerate(keys)}
    header = {
        "format": "sptori-lie",
        "version": 1,
        "r": L.r,
        "group": L.spec.to_dict(),
        "window": w,
        "config": config,
        "basis": [idx[k] for k in keys],
        "labels": [L.label(k) for k in keys],
        "g_embedding": [[[idx[k], *q_to_pair(c)] for k, c in sorted(L.g_vector(m).items(), key=lambda kc: pos[kc[0]])]
                        for m in range(L.model.dim_g)],
    }
    lines = [json.dumps(header, sort_keys=True)]
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            v = L.bracket_basis(a, b)
            if not v or not all(k in pos for k in v):
                continue
            row = [[idx[k], *q_to_pair(c)] for k, c in sorted(v.items(), key=lambda kc: pos[kc[0]])]
            lines.append(json.dumps({"a": idx[a], "b": idx[b], "v": row}, sort_keys=True))
    return lines


def dimension_table(L, window=None):
    """Plain-text table of dim L_mu^g."""
    w = None if L.is_finite else (window if window is not None else L.window)
    rows = [f"# dim L_mu^g (rank {L.r}, group {L.spec.to_dict()})"]
    for mu, g, cell in L.cells(w):
        rows.append(f"{list(mu)}\t{list(g)}\t{len(cell)}")
    return "\n".join(rows) + "\n"


def lie_from_lines(lines):
    """(table Lie algebra, header)."""
    lines = [ln for ln in lines if ln.strip()]
    if not lines:
        raise ConfigError("empty Lie algebra file")
    header = json.loads(lines[0])
    if header.get("format") != "sptori-lie":
        raise ConfigError("not a Lie algebra file")
    spec = GroupSpec.from_dict(header["group"])
    r = int(header["r"])
    keys = [_tkey(b) for b in header["basis"]]
    basis = {k: (k[0], k[1]) for k in keys}
    labels = dict(zip(keys, header.get("labels", [])))
    table = {}
    for ln in lines[1:]:
        row = json.loads(ln)
        a, b = _tkey(row["a"]), _tkey(row["b"])
        table[(a, b)] = {_tkey(k): qq([n, d]) for k, n, d in row["v"]}
    g = [{_tkey(k): qq([n, d]) for k, n, d in vec} for vec in header["g_embedding"]]
    return TableLieAlgebra(spec, r, basis, table, g, labels), header


def lie_mismatches(L, stored, window, limit=5):
    """Brackets where a stored windowed table disagrees with a rebuilt Lie algebra.

    Only stored basis vectors of degree inside ``window`` are compared.
    """
    idx = _lie_index(L, window)
    back = {_tkey(v): k for k, v in idx.items()}
    keys = [k for k in stored.keys() if L.spec.in_window(k[1], window)]
    if set(keys) != set(back):
        return [("basis", sorted(set(keys) ^ set(back))[:3])]
    out = []
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            v = L.bracket_basis(back[a], back[b])
            if not all(k in idx for k in v):
                continue
            want = {_tkey(idx[k]): c for k, c in v.items()}
            if stored.bracket_basis(a, b) != want:
                out.append(("bracket", a, b))
                if len(out) >= limit:
                    return out
    return out
