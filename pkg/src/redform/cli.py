"""Command-line front end.

Every subcommand reads a system file ({"var": ..., "matrix": [[expr, ...]]}),
runs one pipeline stage, and emits a JSON report (to --out if given, else to
standard output, with a one-line human summary either way).

Exit codes: 0 success, 1 mathematical failure (a verdict contradicting
--expect-reduced, or a golden mismatch in `example`), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys

from .field import GaussRational, RF_RING, Q
from .linalg import Mat
from .parsing import ParseError, format_ratfunc, format_gauss
from .diffsys import (LinearDiffSystem, gauge_transform, series_solution,
                      substitute_power, pick_ordinary_point,
                      DEFAULT_SERIES_ORDER)
from .constructions import (parse_construction, format_construction,
                            apply_algebra, apply_group, Id, Sym,
                            ConstructionError)
from .ratsols import BoundConfig, rational_solutions
from .weinorman import decompose
from .reduction import (InvariantSolution, is_reduced, build_system_S,
                        verify_reduction)
from .gallery import EXAMPLE_NAMES, run_example, load_golden

__all__ = ["main"]


class InputError(Exception):
    pass


class MathFailure(Exception):
    pass


def _load_system(path) -> LinearDiffSystem:
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    try:
        return LinearDiffSystem.from_json(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON: {e}") from None
    except ParseError as e:
        raise InputError(f"{path}: {e}") from None
    except (KeyError, ValueError, TypeError) as e:
        raise InputError(f"{path}: malformed system file: {e}") from None


def _load_matrix(path, var) -> Mat:
    sys_like = _load_system(path)
    if sys_like.var != var:
        raise InputError(
            f"{path}: matrix uses variable {sys_like.var!r}, system uses {var!r}")
    return sys_like.matrix


def _parse_constructions(args, default=None):
    texts = args.construction or ([default] if default else None)
    if not texts:
        raise InputError("at least one --construction is required")
    out = []
    for t in texts:
        try:
            out.append(parse_construction(t))
        except (ConstructionError, ParseError, ValueError) as e:
            raise InputError(f"bad construction {t!r}: {e}") from None
    return out


def _parse_bounds(args) -> BoundConfig:
    if not args.bounds:
        return BoundConfig()
    parts = args.bounds.split(",")
    if len(parts) != 3:
        raise InputError("--bounds expects three integers: window,slack,cap")
    try:
        w, s, c = (int(p) for p in parts)
        return BoundConfig(w, s, c)
    except ValueError as e:
        raise InputError(f"bad --bounds: {e}") from None


def _parse_rational(text) -> GaussRational:
    try:
        return GaussRational(Q(text))
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad rational {text!r}: {e}") from None


def _fmt_matrix(m: Mat, var):
    return [[format_ratfunc(e, var) for e in row] for row in m.entries]


def _emit(report: dict, args, summary: str):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
        print(summary)
    else:
        print(text, end="")
        print(summary, file=_sys.stderr)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_wei_norman(args):
    sys = _load_system(args.system)
    deco = decompose(sys)
    report = {
        "var": sys.var,
        "rank": deco.rank,
        "coeffs": [format_ratfunc(f, sys.var) for f in deco.coeffs],
        "mats": [[[format_gauss(c) for c in row] for row in M.entries]
                 for M in deco.mats],
    }
    _emit(report, args, f"wei-norman rank {deco.rank}")
    return 0


def _cmd_construct(args):
    sys = _load_system(args.system)
    exprs = _parse_constructions(args)
    entries = []
    for e in exprs:
        alg = apply_algebra(e, sys.matrix)
        entry = {"construction": format_construction(e),
                 "algebra": _fmt_matrix(alg, sys.var)}
        try:
            grp = apply_group(e, sys.matrix)
            entry["group"] = _fmt_matrix(grp, sys.var)
        except ConstructionError as err:
            entry["group_error"] = str(err)
        entries.append(entry)
    _emit({"var": sys.var, "constructions": entries}, args,
          f"constructed {len(entries)} matrix pair(s)")
    return 0


def _cmd_ratsols(args):
    sys = _load_system(args.system)
    exprs = _parse_constructions(args, default="id")
    cfg = _parse_bounds(args)
    out = []
    for e in exprs:
        B = apply_algebra(e, sys.matrix)
        basis = rational_solutions(LinearDiffSystem(B, sys.var), cfg)
        out.append({
            "construction": format_construction(e),
            "basis": [[format_ratfunc(f, sys.var) for f in vec]
                      for vec in basis.vectors],
            "warnings": list(basis.warnings),
        })
    total = sum(len(b["basis"]) for b in out)
    _emit({"var": sys.var, "solutions": out}, args,
          f"{total} rational solution(s)")
    return 0


def _cmd_check_reduced(args):
    sys = _load_system(args.system)
    exprs = _parse_constructions(args, default="sym(2,id)")
    cfg = _parse_bounds(args)
    cert = is_reduced(sys, exprs, cfg)
    _emit(cert.to_json_dict(sys.var), args,
          f"verdict: {'reduced' if cert.verdict else 'not reduced'} "
          f"(relative to {len(exprs)} construction(s))")
    if args.expect_reduced and not cert.verdict:
        raise MathFailure("expected a reduced system, verdict is false")
    return 0


def _cmd_gauge(args):
    sys = _load_system(args.system)
    P = _load_matrix(args.p, sys.var)
    det = P.det()
    if det.is_zero():
        raise InputError(
            f"singular gauge matrix (det = {format_ratfunc(det, sys.var)})")
    gauged = gauge_transform(P, sys)
    _emit(gauged.to_json_dict(), args, "gauged system computed")
    return 0


def _cmd_series(args):
    sys = _load_system(args.system)
    z0 = _parse_rational(args.z0) if args.z0 else pick_ordinary_point(sys)
    order = args.order if args.order is not None else DEFAULT_SERIES_ORDER
    try:
        ser = series_solution(sys, z0, order)
    except ValueError as e:
        raise InputError(str(e)) from None
    report = {
        "var": sys.var,
        "z0": format_gauss(z0),
        "order": ser.order,
        "coeffs": [[[format_gauss(c) for c in row] for row in U.entries]
                   for U in ser.coeffs],
    }
    _emit(report, args, f"series to order {ser.order} at z0={format_gauss(z0)}")
    return 0


def _cmd_subst(args):
    sys = _load_system(args.system)
    if args.subst is None or args.subst < 1:
        raise InputError("--subst requires a positive integer exponent")
    _emit(substitute_power(sys, args.subst).to_json_dict(), args,
          f"substituted {sys.var} = t^{args.subst}")
    return 0


def _cmd_export_s(args):
    sys = _load_system(args.system)
    exprs = _parse_constructions(args, default="sym(2,id)")
    cfg = _parse_bounds(args)
    z0 = _parse_rational(args.z0) if args.z0 else pick_ordinary_point(sys)
    invariants = []
    warnings = []
    for e in exprs:
        B = apply_algebra(e, sys.matrix)
        basis = rational_solutions(LinearDiffSystem(B, sys.var), cfg)
        warnings.extend(basis.warnings)
        for phi in basis.vectors:
            try:
                v = tuple(f.eval(z0) for f in phi)
            except ZeroDivisionError:
                raise InputError(
                    f"z0 = {format_gauss(z0)} is a pole of an invariant") from None
            invariants.append(InvariantSolution(e, tuple(phi), v, z0))
    if not invariants:
        raise MathFailure("no invariants found; nothing to export")
    export = build_system_S(invariants, sys.size, sys.var)
    text = export.to_text()
    sidecar = export.sidecar_dict()
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
        with open(args.out + ".meta.json", "w") as f:
            json.dump(sidecar, f, indent=2, sort_keys=True)
            f.write("\n")
        print(f"exported {len(export.equations)} equation(s) to {args.out}")
    else:
        print(text, end="")
        print(json.dumps(sidecar, indent=2, sort_keys=True))
    for w in warnings:
        print(f"warning: {w}", file=_sys.stderr)
    return 0


def _cmd_verify_reduction(args):
    sys = _load_system(args.system)
    exprs = _parse_constructions(args, default="sym(2,id)")
    cfg = _parse_bounds(args)
    P = _load_matrix(args.p, sys.var)
    det = P.det()
    if det.is_zero():
        raise InputError(
            f"singular candidate matrix (det = {format_ratfunc(det, sys.var)})")
    report = verify_reduction(sys, P, exprs, cfg)
    _emit(report.to_json_dict(), args,
          f"verification {'passed' if report.ok else 'failed'}")
    if args.expect_reduced and not report.ok:
        raise MathFailure("expected a valid reduction, verification failed")
    return 0


def _cmd_example(args):
    if args.name not in EXAMPLE_NAMES:
        raise InputError(f"unknown example {args.name!r}; "
                         f"choose from {', '.join(EXAMPLE_NAMES)}")
    report = run_example(args.name)
    golden = load_golden(args.name)
    _emit(report, args, f"example {args.name}: "
          f"{'matches golden' if report == golden else 'DIFFERS from golden'}")
    if report != golden:
        got = json.dumps(report, indent=2, sort_keys=True).splitlines()
        want = json.dumps(golden, indent=2, sort_keys=True).splitlines()
        import difflib
        for line in difflib.unified_diff(want, got, "golden", "computed",
                                         lineterm=""):
            print(line, file=_sys.stderr)
        raise MathFailure(f"example {args.name} diverged from the golden report")
    return 0


# ---------------------------------------------------------------------------


def _build_parser():
    p = argparse.ArgumentParser(
        prog="redform",
        description="Reduced forms of linear differential systems over Q(i)(x)")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, system=True):
        if system:
            sp.add_argument("system", help="system JSON file")
        sp.add_argument("--out", help="write the JSON report here")

    def constructions(sp):
        sp.add_argument("--construction", action="append",
                        help="construction DSL, e.g. sym(2,id); repeatable")
        sp.add_argument("--bounds", help="solver bounds: window,slack,cap")

    sp = sub.add_parser("wei-norman", help="decompose A = sum f_i M_i")
    common(sp)
    sp.set_defaults(fn=_cmd_wei_norman)

    sp = sub.add_parser("construct",
                        help="apply a construction to the system matrix")
    common(sp)
    sp.add_argument("--construction", action="append", required=True)
    sp.set_defaults(fn=_cmd_construct)

    sp = sub.add_parser("ratsols", help="rational solutions of a constructed system")
    common(sp)
    constructions(sp)
    sp.set_defaults(fn=_cmd_ratsols)

    sp = sub.add_parser("check-reduced",
                        help="constant-invariant reduced-form certificate")
    common(sp)
    constructions(sp)
    sp.add_argument("--expect-reduced", action="store_true")
    sp.set_defaults(fn=_cmd_check_reduced)

    sp = sub.add_parser("gauge", help="apply a gauge transformation P[A]")
    common(sp)
    sp.add_argument("--p", required=True, help="gauge matrix JSON file")
    sp.set_defaults(fn=_cmd_gauge)

    sp = sub.add_parser("series",
                        help="truncated fundamental matrix at an ordinary point")
    common(sp)
    sp.add_argument("--z0", help="expansion point (rational)")
    sp.add_argument("--order", type=int)
    sp.set_defaults(fn=_cmd_series)

    sp = sub.add_parser("subst", help="substitute x = t^k")
    common(sp)
    sp.add_argument("--subst", type=int, required=True, metavar="K")
    sp.set_defaults(fn=_cmd_subst)

    sp = sub.add_parser("export-s",
                        help="export the polynomial system for a reduction matrix")
    common(sp)
    constructions(sp)
    sp.add_argument("--z0", help="evaluation point (rational)")
    sp.set_defaults(fn=_cmd_export_s)

    sp = sub.add_parser("verify-reduction",
                        help="check a candidate reduction matrix")
    common(sp)
    constructions(sp)
    sp.add_argument("--p", required=True, help="candidate matrix JSON file")
    sp.add_argument("--expect-reduced", action="store_true")
    sp.set_defaults(fn=_cmd_verify_reduction)

    sp = sub.add_parser("example", help="run a built-in worked example")
    sp.add_argument("name", choices=list(EXAMPLE_NAMES))
    sp.add_argument("--out", help="write the JSON report here")
    sp.set_defaults(fn=_cmd_example)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except MathFailure as e:
        print(f"failure: {e}", file=_sys.stderr)
        return 1
    except InputError as e:
        print(f"error: {e}", file=_sys.stderr)
        return 2
    except (ParseError, ConstructionError) as e:
        print(f"error: {e}", file=_sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
