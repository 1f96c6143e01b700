"""Command-line front end: run the check suite, list the catalog, or
realize a single class numerically."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .checks import (
    available_checks,
    check_statement,
    reports_to_json,
    run_suite,
    WORKERS_ENV_VAR,
)
from .curves import jacobian_class, sym_power_class
from .moduli import m2_chi, m3_chi
from .polys import IntPoly, IntPoly2
from .realize import CountingData, HODGE, POINCARE, count_target, realize
from .series import GenusContext

# checks whose adic pipeline touches the rank-3 moduli class, which is
# supported up to L^{8g-8}; a window override must keep that in view
_NEEDS_RANK3_CEILING = {
    "rank3", "inversion-consistency", "realize-hodge-consistency",
    "behrend-dhillon",
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="curve-motives",
        description="Exact identity checks for motivic classes attached to a "
                    "smooth projective curve of genus g >= 2.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser(
        "verify", help="run identity checks and report pass/fail/flagged")
    verify.add_argument("--genus", nargs="+", type=int, default=[2, 3],
                        help="genus values to check (default: 2 3)")
    verify.add_argument("--checks", nargs="+", metavar="ID",
                        help="subset of check identifiers (default: all)")
    verify.add_argument("--window", nargs=2, type=int,
                        metavar=("E_MIN", "E_MAX"),
                        help="L-exponent window for the adic completion; the "
                             "dimensional completion mirrors the depth")
    verify.add_argument("--json", metavar="PATH",
                        help="also write a machine-readable report here")
    verify.add_argument("--workers", type=int, default=None,
                        help="parallel worker processes (default: $%s or 1)"
                             % WORKERS_ENV_VAR)

    sub.add_parser("list-checks", help="print the check catalog")

    rz = sub.add_parser("realize", help="realize one class numerically")
    rz.add_argument("--target", required=True,
                    choices=["poincare", "hodge", "count"])
    rz.add_argument("--class", dest="cls", required=True, metavar="CLASS",
                    help="m2 | m3 | jac | ck:<k>")
    rz.add_argument("--genus", type=int, default=2)
    rz.add_argument("--counts", metavar="PATH",
                    help='point-count JSON {"q": .., "counts": [N1, .., Ng]} '
                         "(required for --target count)")
    return parser


def _validate_verify(parser, args):
    genus = sorted(set(args.genus))
    if any(g < 2 for g in genus):
        parser.error("genus must be >= 2")
    check_ids = args.checks
    if check_ids is not None:
        unknown = [c for c in check_ids if c not in available_checks()]
        if unknown:
            parser.error("unknown checks: %s (see list-checks)" % ", ".join(unknown))
    window = tuple(args.window) if args.window else None
    if window is not None:
        lo, hi = window
        if not lo <= 0 <= hi:
            parser.error("window must contain 0, got [%d, %d]" % (lo, hi))
        gmax = max(genus)
        selected = check_ids if check_ids is not None else available_checks()
        if set(selected) & _NEEDS_RANK3_CEILING and hi < 8 * gmax - 8:
            parser.error("window ceiling %d cannot hold the rank-3 class "
                         "at genus %d (needs >= %d)" % (hi, gmax, 8 * gmax - 8))
        if "zeta-rationality" in selected and hi < 4 * gmax:
            parser.error("window ceiling %d cannot hold the zeta series "
                         "at genus %d (needs >= %d)" % (hi, gmax, 4 * gmax))
    return genus, check_ids, window


def _cmd_verify(parser, args):
    genus, check_ids, window = _validate_verify(parser, args)
    reports = run_suite(genus, check_ids, window=window, workers=args.workers)
    if not reports:
        parser.error("selected checks do not apply to any requested genus")
    for r in reports:
        win = "window=[%d,%d] " % tuple(r.window) if r.window else ""
        print("%-7s %s g=%d %s(%.2fs)"
              % (r.verdict.upper(), r.check, r.genus, win, r.wall_time))
        for note in r.notes:
            print("        note: %s" % note)
        if r.verdict == "fail" and r.witness is not None:
            print("        witness: %s" % json.dumps(r.witness, sort_keys=True))
    summary = {"pass": 0, "fail": 0, "flagged": 0}
    for r in reports:
        summary[r.verdict] += 1
    print("%d passed, %d flagged, %d failed"
          % (summary["pass"], summary["flagged"], summary["fail"]))
    if args.json:
        obj = reports_to_json(reports, genus, check_ids, window)
        with open(args.json, "w") as fh:
            json.dump(obj, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if summary["fail"] == 0 else 1


def _cmd_list_checks():
    for cid in available_checks():
        print(cid)
        print("    %s" % check_statement(cid))
    return 0


def _realization_json(value):
    if isinstance(value, IntPoly):
        return {"variable": "t",
                "coefficients": [[e, c] for e, c in sorted(value.terms.items())]}
    if isinstance(value, IntPoly2):
        return {"variables": ["u", "v"],
                "coefficients": [[i, j, c]
                                 for (i, j), c in sorted(value.terms.items())]}
    return {"value": value}


def _cmd_realize(parser, args):
    if args.genus < 2:
        parser.error("genus must be >= 2")
    ctx = GenusContext.adic(args.genus)
    name = args.cls
    if name == "m2":
        cls = m2_chi(ctx)
    elif name == "m3":
        cls = m3_chi(ctx)
    elif name == "jac":
        cls = jacobian_class(ctx)
    elif name.startswith("ck:"):
        try:
            k = int(name[3:])
        except ValueError:
            parser.error("bad symmetric-power index in %r" % name)
        if k < 0 or k > ctx.window.hi:
            parser.error("symmetric-power index must lie in [0, %d]"
                         % ctx.window.hi)
        cls = sym_power_class(ctx, k)
    else:
        parser.error("unknown class %r (use m2, m3, jac, or ck:<k>)" % name)
    if args.target == "poincare":
        target = POINCARE
    elif args.target == "hodge":
        target = HODGE
    else:
        if not args.counts:
            parser.error("--target count requires --counts")
        with open(args.counts) as fh:
            data = CountingData.from_json(json.load(fh))
        if data.g != args.genus:
            parser.error("point-count data is for genus %d, not %d"
                         % (data.g, args.genus))
        target = count_target(data)
    out = {
        "schema": 1,
        "class": name,
        "genus": args.genus,
        "target": args.target,
        "realization": _realization_json(realize(cls, target)),
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return _cmd_verify(parser, args)
    if args.command == "list-checks":
        return _cmd_list_checks()
    return _cmd_realize(parser, args)


if __name__ == "__main__":
    sys.exit(main())
