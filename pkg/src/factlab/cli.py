"""Command-line front end.

Subcommands: sing, defect, separator, bese, classify, criteria, gen.
Global flags: --field, --seed, --threads, --scan-cap, --output.  The
environment variable FACTLAB_THREADS supplies the default thread count
(the flag wins).  All reports are exact-integer/rational JSON; identical
command lines produce byte-identical output.

Exit codes:
  0  success
  2  input error (syntax, bad parameters, degree/field mismatch)
  3  scan too large for the cap
  4  degenerate draw after retries
  5  verification failure (locus mismatch, missing separator)
  1  unexpected internal error
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import criteria as crit
from . import families as fam
from .errors import (
    BadParams,
    DegenerateDraw,
    FactlabError,
    LocusMismatch,
    NotHomogeneous,
    NotInSet,
    PolySyntaxError,
    TooLarge,
    UnknownVariable,
    XiTooSmall,
)
from .fields import FieldSpec, parse_field_spec
from .lincond import SeparatorFailure, bese_check, defect, separator
from .poly import HomoPoly, parse_poly
from .projgeom import dump_point_set, load_point_set, point_set
from .sing_locus import NodalInstance, singular_points, verify_nodal

_PARSE_ERRORS = (
    PolySyntaxError,
    NotHomogeneous,
    UnknownVariable,
    BadParams,
    XiTooSmall,
    NotInSet,
    ValueError,
)


def load_poly_file(path: str) -> List[HomoPoly]:
    """Polynomial file: header 'F <nvars> <fieldspec>', then one polynomial
    per non-comment line in the algebra grammar."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("F "):
        raise PolySyntaxError("polynomial file must start with 'F <nvars> <fieldspec>'")
    parts = lines[0].split()
    if len(parts) != 3:
        raise PolySyntaxError(f"bad header {lines[0]!r}")
    nvars = int(parts[1])
    field = parse_field_spec(parts[2])
    polys = [parse_poly(ln, nvars, field) for ln in lines[1:]]
    if not polys:
        raise PolySyntaxError("no polynomial in file")
    return polys


def dump_poly_file(polys: List[HomoPoly]) -> str:
    head = f"F {polys[0].nvars} {polys[0].field.spec_string()}"
    return "\n".join([head] + [f.to_text() for f in polys]) + "\n"


def _emit(text: str, output: Optional[str]) -> None:
    if output and output != "-":
        with open(output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _point_json(pt):
    return [pt.field.format_scalar(c) for c in pt.coords]


# --- subcommand implementations --------------------------------------------


def cmd_sing(args) -> int:
    polys = load_poly_file(args.poly_file)
    if len(polys) == 1:
        sing = singular_points(polys[0], scan_cap=args.scan_cap, threads=args.threads)
    else:
        from .sing_locus import ci_singular_points

        sing = ci_singular_points(
            polys[0], polys[1], scan_cap=args.scan_cap, threads=args.threads
        )
    inst = verify_nodal(NodalInstance(polys, polys[0].nvars - 1, sing))
    report = {
        "count": len(sing),
        "nodes": [_point_json(pt) for pt in sing],
        "node_flags": inst.node_flags,
        "clean": inst.clean,
        "warning": inst.isolated_warning,
        "evidence": "mod-p evidence",
    }
    _emit(json.dumps(report, indent=2), args.output)
    if args.points_out:
        with open(args.points_out, "w") as fh:
            fh.write(dump_point_set(sing))
    return 0


def cmd_defect(args) -> int:
    with open(args.points_file) as fh:
        sigma = load_point_set(fh.read())
    _emit(defect(sigma, args.xi).to_json(), args.output)
    return 0


def cmd_separator(args) -> int:
    with open(args.points_file) as fh:
        sigma = load_point_set(fh.read())
    P = sigma.points[args.point]
    result = separator(sigma, P, args.xi)
    if isinstance(result, SeparatorFailure):
        report = {
            "separated": False,
            "point": _point_json(P),
            "combination": [
                [_point_json(q), sigma.field.format_scalar(c)]
                for q, c in result.combination
                if c
            ],
        }
        _emit(json.dumps(report, indent=2), args.output)
        return 5
    report = {
        "separated": True,
        "point": _point_json(P),
        "form": result.form.to_text(),
    }
    _emit(json.dumps(report, indent=2), args.output)
    return 0


def cmd_bese(args) -> int:
    with open(args.points_file) as fh:
        sigma = load_point_set(fh.read())
    report = bese_check(
        sigma, args.xi, scan=not args.no_scan, scan_cap=args.scan_cap, threads=args.threads
    )
    _emit(report.to_json(), args.output)
    return 0


def cmd_classify(args) -> int:
    polys = load_poly_file(args.poly_file)
    verdict = crit.hong_park_classify(
        polys[0], args.r, scan_cap=args.scan_cap, threads=args.threads
    )
    _emit(verdict.to_json(), args.output)
    return 0


def cmd_criteria(args) -> int:
    t = args.theorem
    if t == "main":
        v = crit.theorem_main_certify(args.n, getattr(args, "lambda"), args.size, args.xi)
    elif t == "prop_3r4":
        v = crit.prop_3r4_certify(args.r, args.eps, args.size)
    elif t == "double_solid":
        v = crit.app_double_solid(args.r, args.nsing)
    elif t == "hypersurface":
        v = crit.app_hypersurface(args.d, args.nsing)
    elif t == "ci1":
        v = crit.app_ci1(args.m, args.k, args.nsing)
    elif t == "ci2":
        v = crit.app_ci2(args.m, args.k, args.nsing)
    elif t == "double_hypersurface":
        v = crit.app_double_hypersurface(args.d, args.r, args.nsing)
    else:
        raise BadParams(f"unknown theorem {t!r}")
    _emit(v.to_json(), args.output)
    return 0


def cmd_gen(args) -> int:
    field = parse_field_spec(args.field)
    spec = fam.FamilySpec(
        family=args.family,
        field=field,
        seed=args.seed,
        r=args.r,
        d=args.d,
        m=args.m,
        k=args.k,
        max_retries=args.max_retries,
    )
    inst = fam.generate(spec, scan_cap=args.scan_cap, threads=args.threads)
    prefix = args.prefix
    poly_path = f"{prefix}.poly"
    points_path = f"{prefix}.points"
    with open(poly_path, "w") as fh:
        fh.write(dump_poly_file(inst.defining))
    with open(points_path, "w") as fh:
        fh.write(dump_point_set(inst.sing))
    report = {
        "family": args.family,
        "seed": args.seed,
        "field": field.spec_string(),
        "count": len(inst.sing),
        "clean": inst.clean,
        "poly_file": poly_path,
        "points_file": points_path,
        "evidence": "mod-p evidence",
    }
    _emit(json.dumps(report, indent=2), args.output)
    return 0


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="factlab", description=__doc__.split("\n\n")[0])
    env_threads = int(os.environ.get("FACTLAB_THREADS", "1"))
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--field", default="Fp:101")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=env_threads)
        sp.add_argument("--scan-cap", type=int, default=10**7, dest="scan_cap")
        sp.add_argument("--output", default=None)

    sp = sub.add_parser("sing", help="singular locus of a hypersurface or CI")
    sp.add_argument("poly_file")
    sp.add_argument("--points-out", default=None, dest="points_out")
    common(sp)
    sp.set_defaults(func=cmd_sing)

    sp = sub.add_parser("defect", help="independence defect of a point set")
    sp.add_argument("points_file")
    sp.add_argument("--xi", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_defect)

    sp = sub.add_parser("separator", help="separator certificate for one point")
    sp.add_argument("points_file")
    sp.add_argument("--xi", type=int, required=True)
    sp.add_argument("--point", type=int, required=True, help="index into the file")
    common(sp)
    sp.set_defaults(func=cmd_separator)

    sp = sub.add_parser("bese", help="base-point hypotheses + exhaustive scan")
    sp.add_argument("points_file")
    sp.add_argument("--xi", type=int, required=True)
    sp.add_argument("--no-scan", action="store_true", dest="no_scan")
    common(sp)
    sp.set_defaults(func=cmd_bese)

    sp = sub.add_parser("classify", help="factoriality classification of a nodal surface")
    sp.add_argument("poly_file")
    sp.add_argument("--r", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("criteria", help="pure-arithmetic criterion engines")
    sp.add_argument(
        "--theorem",
        required=True,
        choices=[
            "main",
            "prop_3r4",
            "double_solid",
            "hypersurface",
            "ci1",
            "ci2",
            "double_hypersurface",
        ],
    )
    sp.add_argument("--n", type=int)
    sp.add_argument("--lambda", type=int, dest="lambda")
    sp.add_argument("--size", type=int)
    sp.add_argument("--xi", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--eps", type=int, default=0)
    sp.add_argument("--d", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--nsing", type=int)
    common(sp)
    sp.set_defaults(func=cmd_criteria)

    sp = sub.add_parser("gen", help="seeded extremal family generators")
    sp.add_argument(
        "--family",
        required=True,
        choices=["double_solid_eq15", "hypersurface_xgyf", "ci_plane"],
    )
    sp.add_argument("--r", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--prefix", default="family")
    sp.add_argument("--max-retries", type=int, default=5, dest="max_retries")
    common(sp)
    sp.set_defaults(func=cmd_gen)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DegenerateDraw as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except LocusMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FactlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
