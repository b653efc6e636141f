"""Command-line entry point: ``detgen <command> [expr] [options]``.

Exit codes: 0 clean, 1 theorem violation, 2 parse or usage error,
3 resource cap hit with incomplete results.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import groups
from .autos import automorphism_group
from .catalog import CatalogSpec, catalog_exprs, default_catalog
from .config import CapExceeded, default_caps, use_caps
from .expr import ExprError, build
from .report import emit_report, group_report, suite_report
from .search import determining_number, generating_number
from .suite import theorem_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
COMMANDS = ("alpha", "gamma", "aut", "deg", "info", "verify", "catalog")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-order", type=int, default=None, help="catalog order bound")
    common.add_argument("--aut-cap", type=int, default=None, help="largest Aut(G) enumerated in full")
    common.add_argument("--node-budget", type=int, default=None, help="subset tests per search")
    common.add_argument("--workers", type=int, default=1, help="processes for catalog runs")
    common.add_argument("--seedless", action="store_true", help="reserved; every search is deterministic")
    common.add_argument("--timing", action="store_true", help="report wall-clock millis (else 0)")

    p = argparse.ArgumentParser(prog="detgen", description="Determining and generating numbers of finite groups.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("alpha", "gamma", "aut", "deg", "info"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("expr", help='group expression, e.g. "Z(2)^2 x Z(9)"')
    sp = sub.add_parser("verify", parents=[common], help="run the theorem suite")
    sp.add_argument("exprs", nargs="*", help="groups to check instead of the default catalog")
    sub.add_parser("catalog", parents=[common], help="list the default catalog")
    return p


def _caps(args):
    caps = default_caps()
    changes = {}
    if args.aut_cap is not None:
        changes["aut_cap"] = args.aut_cap
    if args.node_budget is not None:
        changes["node_budget"] = args.node_budget
    if args.max_order is not None:
        changes["max_order"] = args.max_order
    return caps.replace(**changes)


def _group_command(args, caps) -> tuple[dict, int]:
    g = build(args.expr, cap=caps.order_cap)
    cmd = args.command
    if cmd == "info":
        extra = {
            "abelian": groups.is_abelian(g), "cyclic": groups.is_cyclic(g),
            "nilpotent": groups.is_nilpotent(g).is_nilpotent, "p_group": groups.is_p_group(g),
            "exponent": groups.exponent(g), "center_order": len(groups.center(g)),
            "chi": groups.chi(g), "class_sizes": sorted(int(c) for c in set(groups.class_sizes(g))),
        }
        if g.order <= caps.subgroup_cap:
            extra["simple"] = groups.is_simple(g)
        return group_report(g, **extra), EXIT_OK
    if cmd == "aut":
        return group_report(g, aut=automorphism_group(g, caps.aut_cap)), EXIT_OK
    alpha = gamma = None
    capped = {}
    try:
        if cmd in ("alpha", "deg"):
            alpha = determining_number(g, caps=caps)
        if cmd in ("gamma", "deg"):
            gamma = generating_number(g, caps=caps)
    except CapExceeded as exc:
        capped["alpha" if alpha is None and cmd != "gamma" else "gamma"] = [exc.lower, exc.upper]
    extra = {}
    if cmd == "deg" and not capped:
        extra["deg"] = alpha.alpha == gamma.gamma
    rep = group_report(g, alpha=alpha, gamma=gamma, capped=capped, **extra)
    return rep, EXIT_CAP if capped else EXIT_OK


def _suite_command(args, caps) -> tuple[dict, int]:
    if args.exprs:
        cat = [build(e, cap=caps.order_cap) for e in args.exprs]
        report = theorem_suite(cat, caps, workers=args.workers, name="groups(" + "; ".join(args.exprs) + ")",
                               global_checks=False)
    else:
        spec = CatalogSpec(max_order=caps.max_order)
        report = theorem_suite(default_catalog(spec), caps, workers=args.workers,
                               name=f"catalog(max_order={spec.max_order})")
    rep = suite_report(report, order=None)
    if report.count("fail"):
        return rep, EXIT_VIOLATION
    return rep, EXIT_CAP if report.count("skip") else EXIT_OK


def _catalog_command(args, caps) -> tuple[dict, int]:
    from .catalog import expr_order
    spec = CatalogSpec(max_order=caps.max_order)
    listing = [{"descriptor": e, "order": expr_order(e)} for e in catalog_exprs(spec)]
    rep = {"descriptor": f"catalog(max_order={spec.max_order})", "order": None, "capped_flags": {},
           "witnesses": {}, "nodes": 0, "millis": 0, "groups": listing}
    return rep, EXIT_OK


def run_command(argv: list[str]) -> tuple[bytes, int]:
    """Parse ``argv`` and run it; returns (output bytes, exit code)."""
    args = _parser().parse_args(argv)
    caps = _caps(args)
    start = time.perf_counter()
    with use_caps(caps):
        if args.command == "verify":
            rep, code = _suite_command(args, caps)
        elif args.command == "catalog":
            rep, code = _catalog_command(args, caps)
        else:
            rep, code = _group_command(args, caps)
    rep["millis"] = int((time.perf_counter() - start) * 1000) if args.timing else 0
    return emit_report(rep, args.format), code


def main(argv: list[str] | None = None) -> int:
    try:
        out, code = run_command(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0) and EXIT_USAGE
    except ExprError as exc:
        print(f"detgen: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"detgen: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except groups.GroupError as exc:
        print(f"detgen: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.buffer.write(out)
    sys.stdout.flush()
    return code
