"""Command line front end.

    sptori build CONFIG [--out PATH] [--window W]
    sptori verify INPUT [--suite S] [--window W] [--jobs N] [--allow-inconclusive] [--out PATH]
    sptori classify INPUT [--window W] [--allow-inconclusive] [--out PATH]

INPUT is a constructor config, an algebra file or a Lie algebra file.  Reports
are JSON on stdout (and in ``--out``); a one-line summary goes to stderr.

Exit codes: 0 every check passed, 1 a check failed (or was inconclusive
without ``--allow-inconclusive``, or classification was refused), 2 the input
was rejected (schema, constructor or usage error).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import errors as E
from .algebra import ga_check_involution, ga_check_kind, torus_check
from .coordinates import define_skew_product, extract_coordinates, lemma_checks, round_trip, run_pipeline, \
    seligman_suite, split_B
from .lie import TableLieAlgebra
from .lie_checks import jacobi_check, lie_report
from .report import Check, Report, FAIL, INCONCLUSIVE, NOT_APPLICABLE, PASS
from .serialize import (algebra_from_config, algebra_from_dict, algebra_to_dict, dimension_table, lie_from_lines,
                        lie_mismatches, lie_to_lines, stored_mismatches, validate_config)
from .sp import build_sp
from .verify import check_grading_subalgebra, verify_lie_g_torus

SUITES = ("axioms", "jacobi", "identities", "lemmas")

# errors meaning "the object was read but a check on it failed"
CHECK_ERRORS = (E.NotLieError, E.DivisionFailureError, E.NotCoordinatizableError, E.LemmaViolationError,
                E.TheoremViolationError, E.InternalInconsistencyError, E.InconclusiveError)


class UsageError(E.SptoriError):
    code = "usage"


class Refused(E.SptoriError):
    code = "verification-failed"


@dataclass
class Loaded:
    what: str  # "algebra" or "lie"
    window: int | None = None
    alg: object = None
    sigma: object = None
    lie: object = None
    config: dict | None = None
    notes: list = field(default_factory=list)


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text), None
    except json.JSONDecodeError:
        pass
    lines = text.splitlines()
    try:
        head = json.loads(lines[0]) if lines else None
    except json.JSONDecodeError:
        head = None
    if not isinstance(head, dict) or head.get("format") != "sptori-lie":
        raise E.ConfigError(f"{path} is neither JSON nor a Lie algebra file")
    return None, lines


def _need_window(spec, window, what):
    if not spec.is_finite and window is None:
        raise UsageError(f"{what} is graded by a group with free rank {spec.free_rank}; pass --window")


def _sp_from_config(cfg, alg, sigma, window, jobs):
    sp = cfg["sp"]
    return build_sp(alg, sigma, sp["r"], window=window, jacobi=sp.get("jacobi", True),
                    jacobi_window=sp.get("jacobi_window"), jobs=jobs)


def load_input(path, window=None, jobs=1):
    doc, lines = _read(path)
    if lines is not None:
        return _load_lie(lines, window, jobs)
    if not isinstance(doc, dict):
        raise E.ConfigError("top-level JSON value must be an object")
    if doc.get("format") == "sptori-algebra":
        alg, sigma, stored = algebra_from_dict(doc)
        out = Loaded("algebra", config=doc.get("config"))
        if stored is not None:
            _need_window(alg.spec, window, "the algebra")
            if window > doc["window"]:
                raise UsageError(f"--window {window} exceeds the stored window {doc['window']}")
            bad = stored_mismatches(alg, sigma, stored)
            if bad:
                raise E.InternalInconsistencyError("stored constants disagree with the rebuilt algebra",
                                                   witness=bad[0])
            out.window = window
        out.alg, out.sigma = alg, sigma
        return out
    if "format" in doc:
        raise E.ConfigError(f"unknown file format {doc['format']!r}")
    validate_config(doc)
    alg, sigma = algebra_from_config(doc)
    w = window if window is not None else doc.get("window")
    if not alg.is_finite:
        _need_window(alg.spec, window, "the config")
    if "sp" not in doc:
        return Loaded("algebra", window=None if alg.is_finite else w, alg=alg, sigma=sigma, config=doc)
    L = _sp_from_config(doc, alg, sigma, None if alg.is_finite else w, jobs)
    return Loaded("lie", window=None if L.is_finite else w, alg=alg, sigma=sigma, lie=L, config=doc)


def _load_lie(lines, window, jobs):
    T, head = lie_from_lines(lines)
    cfg = head.get("config")
    if head.get("window") is None:
        return Loaded("lie", lie=T, config=cfg)
    _need_window(T.spec, window, "the Lie algebra")
    if window > head["window"]:
        raise UsageError(f"--window {window} exceeds the stored window {head['window']}")
    if not cfg or "sp" not in cfg:
        raise E.ConfigError("a windowed Lie algebra file needs its constructor config (with 'sp')")
    alg, sigma = algebra_from_config(cfg)
    L = build_sp(alg, sigma, cfg["sp"]["r"], window=window, jacobi=False)
    bad = lie_mismatches(L, T, window)
    if bad:
        raise E.InternalInconsistencyError("stored brackets disagree with the rebuilt Lie algebra", witness=bad[0])
    out = Loaded("lie", window=window, alg=alg, sigma=sigma, lie=L, config=cfg)
    out.notes.append("checks run on the algebra rebuilt from the embedded config")
    return out


# -- build ---------------------------------------------------------------------------------


def cmd_build(args):
    doc, lines = _read(args.config)
    if lines is not None or not isinstance(doc, dict) or "format" in doc:
        raise E.ConfigError("build expects a constructor config")
    validate_config(doc)
    alg, sigma = algebra_from_config(doc)
    window = args.window if args.window is not None else doc.get("window")
    if not alg.is_finite:
        _need_window(alg.spec, window, "the config")
    else:
        window = None
    if "sp" in doc:
        L = _sp_from_config(doc, alg, sigma, window, args.jobs)
        payload = "\n".join(lie_to_lines(L, window, config=doc)) + "\n"
        extra = dimension_table(L, window)
        summary = f"Lie algebra: rank {L.r}, dimension {L.dimension(window)}"
    else:
        payload = _dumps(algebra_to_dict(alg, sigma, window, config=doc))
        extra = None
        summary = f"algebra: {len(alg.test_keys(window))} basis elements"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
        if extra is not None:
            with open(args.out + ".dims.txt", "w", encoding="utf-8") as fh:
                fh.write(extra)
    else:
        sys.stdout.write(payload)
    print(summary, file=sys.stderr)
    return 0


# -- verify --------------------------------------------------------------------------------


def _na(name, why):
    return Check(name, NOT_APPLICABLE, detail=why)


def _as_check(name, err):
    return Check(name, FAIL, witnesses=[repr(err.witness)] if err.witness is not None else [],
                 detail=f"{err.code}: {err}")


def _algebra_suites(ld, suites):
    alg, sigma, w = ld.alg, ld.sigma, ld.window
    out = {}
    for s in suites:
        rep = Report(s)
        if s == "axioms":
            rep.extend(ga_check_involution(alg, sigma, w))
            if alg.kind_claim != "unconstrained":
                rep.extend(ga_check_kind(alg, alg.kind_claim, w), prefix="kind:")
                rep.extend(torus_check(alg, alg.kind_claim, w), prefix="torus:")
        else:
            rep.add(_na(s, "suite applies to Lie algebra inputs"))
        out[s] = rep
    return out


def _bundle(L, w):
    b = extract_coordinates(L, window=w)
    split_B(b, w)
    define_skew_product(b)
    return b


def _lie_suites(ld, suites, jobs):
    L, w = ld.lie, ld.window
    out = {}
    bundle = None
    for s in suites:
        rep = Report(s)
        if s == "axioms":
            rep.add(check_grading_subalgebra(L))
            rep.extend(verify_lie_g_torus(L, w))
        elif s == "jacobi":
            rep.extend(lie_report(L, jobs=jobs, window=w))
        elif L.r != 2:
            rep.add(_na(s, "stated for rank 2"))
        else:
            try:
                if bundle is None:
                    bundle = _bundle(L, w)
                rep.extend(seligman_suite(bundle, w) if s == "identities" else lemma_checks(bundle, w))
            except CHECK_ERRORS as e:
                rep.add(_as_check(s, e))
        out[s] = rep
    return out


def _overall(reports):
    sts = {r.status for r in reports}
    if FAIL in sts:
        return FAIL
    if INCONCLUSIVE in sts:
        return INCONCLUSIVE
    return PASS


def _emit(obj, args):
    text = _dumps(obj)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _label(status, window):
    return f"pass (window {window})" if status == PASS and window is not None else status


def _exit_for(status, allow):
    if status == PASS or (status == INCONCLUSIVE and allow):
        return 0
    return 1


def cmd_verify(args):
    ld = load_input(args.input, args.window, args.jobs)
    suites = SUITES if args.suite == "all" else (args.suite,)
    reps = _algebra_suites(ld, suites) if ld.what == "algebra" else _lie_suites(ld, suites, args.jobs)
    status = _overall(reps.values())
    suites = {}
    for k, v in reps.items():
        suites[k] = v.to_dict()
        suites[k]["status"] = _label(v.status, ld.window)
    obj = {"input": ld.what, "window": ld.window, "status": _label(status, ld.window), "suites": suites}
    if ld.notes:
        obj["notes"] = ld.notes
    _emit(obj, args)
    for k, v in reps.items():
        print(f"{k}: {_label(v.status, ld.window)}", file=sys.stderr)
    return _exit_for(status, args.allow_inconclusive)


# -- classify ------------------------------------------------------------------------------


def _source_round_trip(ld, bundle):
    """Compare the extracted algebra against the constructor config the input came from."""
    L = ld.lie
    if not ld.config or "sp" not in ld.config:
        return None
    if not hasattr(L, "alg"):
        alg, sigma = algebra_from_config(ld.config)
        L2 = build_sp(alg, sigma, L.r, window=ld.window, jacobi=False)
        b2 = _bundle(L2, ld.window) if L.r == 2 else extract_coordinates(L2, window=ld.window)
        if b2.fingerprint(ld.window) != bundle.fingerprint(ld.window):
            return "fail (fingerprint differs from the config)"
        bundle = b2
    return round_trip(bundle, window=ld.window).label()


def cmd_classify(args):
    ld = load_input(args.input, args.window, args.jobs)
    if ld.what != "lie":
        raise UsageError("classify expects a Lie algebra (file or config with 'sp')")
    ver = verify_lie_g_torus(ld.lie, ld.window)
    ver.add(check_grading_subalgebra(ld.lie))
    if isinstance(ld.lie, TableLieAlgebra):
        # constructed inputs were Jacobi-checked by build_sp; tables from files were not
        ver.add(jacobi_check(ld.lie, jobs=args.jobs))
    if _exit_for(ver.status, args.allow_inconclusive):
        bad = ver.failures()[0] if ver.failures() else None
        raise Refused(f"input is not a Lie G-torus of type C (status {ver.status}); refusing to classify",
                      witness=(bad.name, bad.witnesses[:1]) if bad else None)
    bundle, cls = run_pipeline(ld.lie, ld.window)
    obj = cls.to_dict()
    rt = _source_round_trip(ld, bundle)
    if rt is not None:
        obj["evidence"]["round-trip"] = rt
    obj["verification"] = _label(ver.status, ld.window)
    _emit(obj, args)
    print(cls.branch, file=sys.stderr)
    return 0 if rt is None or rt.startswith("pass") else 1


# -- entry point ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="sptori", description="Exact sp_2r(a) construction, verification and "
                                                            "classification of coordinate algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct an algebra or Lie algebra from a config")
    b.add_argument("config")
    b.add_argument("--out")
    b.add_argument("--window", type=int)
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="run check suites")
    v.add_argument("input")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--window", type=int)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--allow-inconclusive", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", help="extract the coordinate algebra and name its branch")
    c.add_argument("input")
    c.add_argument("--window", type=int)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--allow-inconclusive", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_classify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "window", None) is not None and args.window < 0:
        return _fail(UsageError("--window must be nonnegative"), 2)
    try:
        return args.func(args)
    except CHECK_ERRORS + (Refused,) as e:
        return _fail(e, 1)
    except E.SptoriError as e:
        return _fail(e, 2)
    except ValueError as e:
        return _fail(E.ConfigError(str(e)), 2)


def _fail(err, code):
    sys.stdout.write(_dumps(err.to_dict()))
    print(f"error: {err}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
