"""Command-line interface: ``farey <group> <command> [options]``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
``FAREY_BUDGET`` overrides the default search and enumeration budgets.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import complex as cxm
from . import frieze as fz
from . import lifting as lf
from . import paths as pt
from .errors import FareyError, InvalidDescriptor
from .ring import ZMod, galois_field, parse_ring
from .selftest import run_checks

def _budget(args, default: int) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    return int(os.environ.get(lf.BUDGET_ENV, default))


def _emit(args, text: str = "", data=None) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") or not text else text + "\n")


def _window(text: str) -> tuple:
    """``i0:i1,j0:j1`` (inclusive)."""
    try:
        rows, cols = text.split(",")
        i0, i1 = (int(x) for x in rows.split(":"))
        j0, j1 = (int(x) for x in cols.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("window must look like i0:i1,j0:j1")
    if i0 > i1 or j0 > j1:
        raise argparse.ArgumentTypeError("window ranges must be nonempty")
    return i0, i1, j0, j1


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _int_list(text: str) -> list:
    return [x.strip() for x in text.split(",") if x.strip()]


def _twisted(ring, text: str, units: str) -> pt.TwistedPath:
    return pt.make_twisted(pt.parse_path(ring, text, units))


def _modulus(ring) -> int:
    if not isinstance(ring, ZMod):
        raise InvalidDescriptor("lifting needs a ring of the form Z/N")
    return ring.n


# complex ---------------------------------------------------------------------------------------


def cmd_complex_build(args) -> int:
    cx = cxm.build_complex(args.ring, args.units)
    data = cxm.complex_to_dict(cx)
    text = (f"vertices {len(cx)} edges {len(data['edges'])} faces {len(cx.faces)}\n"
            + " ".join(data["vertices"]))
    _emit(args, text, data)
    return 0


def cmd_complex_diameter(args) -> int:
    d = cxm.diameter(cxm.build_complex(args.ring, args.units))
    _emit(args, str(d), {"diameter": d})
    return 0


def cmd_complex_surface(args) -> int:
    cx = cxm.build_complex(args.ring, args.units)
    rep = cxm.is_surface_complex(cx)
    data = {"surface": rep.is_surface, "axiom": rep.axiom,
            "witness": list(rep.witness), "detail": rep.detail}
    text = "true" if rep.is_surface else f"false\naxiom {rep.axiom} fails: {rep.detail}"
    _emit(args, text, data)
    return 0


def cmd_complex_export(args) -> int:
    cx = cxm.build_complex(args.ring, args.units)
    fmt = "json" if args.format in ("json", "text") else args.format
    sys.stdout.write(cxm.export_complex(cx, fmt))
    return 0


def cmd_complex_genus(args) -> int:
    g, c = cxm.genus_and_cusps(args.n)
    _emit(args, f"genus {g} cusps {c}", {"n": args.n, "genus": g, "cusps": c})
    return 0


# path ---------------------------------------------------------------------------------------


def cmd_path_itinerary(args) -> int:
    path = pt.parse_path(args.ring, args.path, args.units)
    lifted = path if path.is_lifted else pt.lift_path(path)
    fmt = args.ring.format
    entries = [fmt(e) for e in pt.itinerary(lifted)]
    _emit(args, " ".join(entries), {"itinerary": entries, "lift": lifted.labels()})
    return 0


def cmd_path_from_itinerary(args) -> int:
    R = args.ring
    start = tuple(cxm.parse_pairs(R, args.start)) if args.start else pt.standard_edge(R)
    if len(start) != 2:
        raise InvalidDescriptor("--start needs exactly two fractions")
    entries = [R.parse(e) for e in _int_list(args.itinerary)]
    path = pt.path_from_itinerary(R, start, entries)
    _emit(args, ",".join(path.labels()), path.to_dict())
    return 0


def cmd_path_lift(args) -> int:
    R = args.ring
    path = pt.parse_path(R, args.path, args.units)
    start = cxm.parse_pair(R, args.start) if args.start else None
    lifted = pt.lift_path(path, start)
    try:
        twist = pt.twist_of(lifted)
    except FareyError:
        twist = None
    text = ",".join(lifted.labels())
    if twist is not None:
        text += f"\ntwist {R.format(twist)}"
    _emit(args, text, lifted.to_dict(twist))
    return 0


# frieze ---------------------------------------------------------------------------------------


def _frieze_source(args) -> fz.Frieze:
    if args.path:
        return fz.frieze_from_path(_twisted(args.ring, args.path, args.units))
    if args.quiddity:
        return fz.realize_quiddity([args.ring.parse(e) for e in _int_list(args.quiddity)], args.ring)
    if args.file:
        return fz.frieze_from_dict(json.loads(_read(args.file)))
    raise InvalidDescriptor("give one of --path, --quiddity or --file")


def _show_frieze(args, f: fz.Frieze) -> None:
    if args.format == "csv":
        sys.stdout.write(f.to_csv())
    else:
        _emit(args, f.render(args.x_min, args.x_max), {**f.to_dict(), **fz.frieze_report(f)})


def cmd_frieze_from_path(args) -> int:
    _show_frieze(args, _frieze_source(args))
    return 0


def cmd_frieze_extend(args) -> int:
    f = _frieze_source(args)
    w = fz.extend_frieze(f, *args.window)
    _show_window(args, w)
    return 0


def cmd_frieze_count(args) -> int:
    F = galois_field(args.q) if args.q else args.ring
    n, kind, budget = args.n, args.kind, _budget(args, fz.DEFAULT_BUDGET)
    if args.method == "both":
        a = fz.count_friezes(F, n, kind, "formula")
        b = fz.count_friezes(F, n, kind, "brute_force", budget)
        verdict = "agree" if a == b else "disagree"
        _emit(args, f"{a} {b} {verdict}", {"formula": a, "brute_force": b, "agree": a == b})
        return 0 if a == b else 1
    c = fz.count_friezes(F, n, kind, args.method.replace("-", "_"), budget)
    _emit(args, str(c), {"count": c, "method": args.method})
    return 0


def cmd_frieze_check(args) -> int:
    f = _frieze_source(args)
    rep = fz.frieze_report(f)
    text = "\n".join(f"{k} {json.dumps(v) if not isinstance(v, str) else v}" for k, v in rep.items())
    _emit(args, text, rep)
    return 0


# tiling ---------------------------------------------------------------------------------------


def _show_window(args, w: fz.TilingWindow) -> None:
    if args.format == "csv":
        sys.stdout.write(w.to_csv())
    else:
        _emit(args, w.render(), w.to_dict())


def _window_source(args) -> fz.TilingWindow:
    if getattr(args, "csv", None):
        return fz.window_from_csv(args.ring, _read(args.csv))
    if args.gamma and args.delta and args.window:
        return fz.tiling_from_paths(_twisted(args.ring, args.gamma, args.units),
                                    _twisted(args.ring, args.delta, args.units), *args.window)
    raise InvalidDescriptor("give --csv, or --gamma, --delta and --window")


def cmd_tiling_from_paths(args) -> int:
    _show_window(args, _window_source(args))
    return 0


def cmd_tiling_tame(args) -> int:
    w = _window_source(args)
    tame, sl2 = w.is_tame(), w.is_sl2()
    _emit(args, f"sl2 {str(sl2).lower()}\ntame {str(tame).lower()}", {"sl2": sl2, "tame": tame})
    return 0


def cmd_tiling_recurrences(args) -> int:
    w = _window_source(args)
    r, s = fz.tiling_recurrences(w)
    fmt = args.ring.format
    rows = {str(i): fmt(x) for i, x in sorted(r.items())}
    cols = {str(j): fmt(x) for j, x in sorted(s.items())}
    text = ("rows " + " ".join(f"{k}:{v}" for k, v in rows.items())
            + "\ncols " + " ".join(f"{k}:{v}" for k, v in cols.items()))
    _emit(args, text, {"rows": rows, "cols": cols})
    return 0


# lift ---------------------------------------------------------------------------------------


def cmd_lift_matrix(args) -> int:
    R = args.ring
    a, b, c, d = (R.parse(x) for x in _int_list(args.matrix))
    _modulus(R)
    A = lf.lift_matrix(cxm.SL2Matrix(R, a, b, c, d))
    entries = list(A.entries())
    _emit(args, " ".join(str(x) for x in entries), {"matrix": entries})
    return 0


def cmd_lift_path(args) -> int:
    R = args.ring
    _modulus(R)
    path = pt.parse_path(R, args.path, "one")
    lifted = lf.lift_path_positive(path)
    _emit(args, ",".join(lifted.labels()), lifted.to_dict())
    return 0


def cmd_lift_tiling(args) -> int:
    R = args.ring
    _modulus(R)
    w = lf.lift_tiling_positive(_twisted(R, args.gamma, args.units),
                                _twisted(R, args.delta, args.units), *args.window)
    _show_window(args, w)
    return 0


def cmd_lift_frieze(args) -> int:
    _modulus(args.ring)
    f = _frieze_source(args)
    if not f.is_semiregular:
        f = fz.normalize_to_semiregular(f)
    result = lf.lift_frieze(f, _budget(args, lf.DEFAULT_SEARCH_BUDGET))
    if isinstance(result, lf.NotLiftable):
        _emit(args, result.report(), result.to_dict())
    elif args.format == "csv":
        sys.stdout.write(result.to_csv())
    else:
        _emit(args, "liftable\n" + result.render(args.x_min, args.x_max),
              {"liftable": True, "lift": result.to_dict()})
    return 0


def cmd_lift_contractible(args) -> int:
    path = pt.parse_path(args.ring, args.path, "pm1")
    res = lf.is_strongly_contractible(path, budget=_budget(args, lf.DEFAULT_SEARCH_BUDGET))
    data = {"contractible": res.contractible, "explored": res.explored,
            "trace": res.trace.to_dict(lambda v: cxm.format_pair(args.ring, v)) if res.trace else None}
    lines = [str(res.contractible).lower()]
    if res.trace:
        lines += [f"{m.kind} at {m.position} removes {m.removed}" for m in res.trace.moves]
    _emit(args, "\n".join(lines), data)
    return 0


# selftest ---------------------------------------------------------------------------------------


def cmd_selftest(args) -> int:
    results = run_checks(set(args.only) if args.only else None)
    if args.format == "json":
        _emit(args, data=[{"criterion": r.number, "title": r.title, "passed": r.passed,
                           "detail": r.detail} for r in results])
    else:
        for r in results:
            print(r.line())
    return 0 if all(r.passed for r in results) else 1


# parser ---------------------------------------------------------------------------------------


def _ring_arg(text: str):
    try:
        return parse_ring(text)
    except FareyError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="farey", description=__doc__.splitlines()[0])
    groups = top.add_subparsers(dest="group", required=True)

    def add(group, name, fn, *, ring=True, units=True, formats=("text", "json"), help=None):
        p = group.add_parser(name, help=help)
        if ring:
            p.add_argument("--ring", type=_ring_arg, required=ring is True,
                           help="z5, gf4, gf4:1+x+x^2, z3[x]/1+x^2, z2xz3, zz or JSON")
        if units:
            p.add_argument("--units", default="pm1", help="one, pm1, all or a comma list")
        p.add_argument("--format", choices=formats, default="text")
        p.set_defaults(fn=fn)
        return p

    def frieze_inputs(p):
        p.add_argument("--path", help="comma-separated fractions, e.g. 2/0,2/3,1/2")
        p.add_argument("--quiddity", help="comma-separated third-row period")
        p.add_argument("--file", help="frieze JSON as written by --format json ('-' for stdin)")
        p.add_argument("--x-min", type=int, default=None)
        p.add_argument("--x-max", type=int, default=None)

    def tiling_inputs(p, csv=True):
        p.add_argument("--gamma", help="row path")
        p.add_argument("--delta", help="column path")
        p.add_argument("--window", type=_window, help="i0:i1,j0:j1 (inclusive)")
        if csv:
            p.add_argument("--csv", help="window as CSV ('-' for stdin)")

    g = groups.add_parser("complex", help="Farey complexes").add_subparsers(dest="cmd", required=True)
    add(g, "build", cmd_complex_build)
    add(g, "diameter", cmd_complex_diameter)
    add(g, "surface", cmd_complex_surface)
    add(g, "export", cmd_complex_export, formats=("json", "dot", "off", "text"))
    p = add(g, "genus", cmd_complex_genus, ring=False, units=False)
    p.add_argument("--n", type=int, required=True)

    g = groups.add_parser("path", help="paths and itineraries").add_subparsers(dest="cmd", required=True)
    p = add(g, "itinerary", cmd_path_itinerary)
    p.add_argument("--path", required=True)
    p = add(g, "from-itinerary", cmd_path_from_itinerary, units=False)
    p.add_argument("--itinerary", required=True)
    p.add_argument("--start", help="first edge as two fractions (default 1/0,0/1)")
    p = add(g, "lift", cmd_path_lift)
    p.add_argument("--path", required=True)
    p.add_argument("--start", help="lift of the first vertex")

    g = groups.add_parser("frieze", help="friezes").add_subparsers(dest="cmd", required=True)
    frieze_inputs(add(g, "from-path", cmd_frieze_from_path, formats=("text", "json", "csv")))
    frieze_inputs(add(g, "from-quiddity", cmd_frieze_from_path, units=False,
                      formats=("text", "json", "csv")))
    p = add(g, "extend", cmd_frieze_extend, formats=("text", "json", "csv"))
    frieze_inputs(p)
    p.add_argument("--window", type=_window, required=True)
    p = add(g, "count", cmd_frieze_count, ring="optional", units=False)
    p.add_argument("--q", type=int, help="field order (overrides --ring)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=fz.KINDS, default="all")
    p.add_argument("--method", choices=("formula", "brute-force", "brute_force", "both"),
                   default="formula")
    p.add_argument("--budget", type=int)
    frieze_inputs(add(g, "check", cmd_frieze_check))

    g = groups.add_parser("tiling", help="SL2-tilings").add_subparsers(dest="cmd", required=True)
    tiling_inputs(add(g, "from-paths", cmd_tiling_from_paths, formats=("text", "json", "csv")), csv=False)
    tiling_inputs(add(g, "tame", cmd_tiling_tame))
    tiling_inputs(add(g, "recurrences", cmd_tiling_recurrences))

    g = groups.add_parser("lift", help="lifting from Z/N to Z").add_subparsers(dest="cmd", required=True)
    p = add(g, "matrix", cmd_lift_matrix, units=False)
    p.add_argument("--matrix", required=True, help="a,b,c,d")
    p = add(g, "path", cmd_lift_path, units=False)
    p.add_argument("--path", required=True)
    p = add(g, "tiling", cmd_lift_tiling, formats=("text", "json", "csv"))
    tiling_inputs(p, csv=False)
    p = add(g, "frieze", cmd_lift_frieze, units=True, formats=("text", "json", "csv"))
    frieze_inputs(p)
    p.add_argument("--budget", type=int)
    p = add(g, "contractible", cmd_lift_contractible, units=False)
    p.add_argument("--path", required=True)
    p.add_argument("--budget", type=int)

    p = groups.add_parser("selftest", help="run the built-in acceptance checks")
    p.add_argument("--only", type=int, nargs="*")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_selftest)
    return top


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    needs_paths = args.group in ("tiling", "lift") and args.cmd in ("from-paths", "tame", "recurrences", "tiling")
    if needs_paths and not getattr(args, "csv", None) and not (args.gamma and args.delta and args.window):
        parser.error("give --gamma, --delta and --window" + (" (or --csv)" if hasattr(args, "csv") else ""))
    if args.group == "frieze" and args.cmd == "count" and not (args.q or args.ring):
        parser.error("give --q or --ring")
    try:
        return args.fn(args)
    except FareyError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
