#!/usr/bin/env python3
"""
polytope-invariants command line.

Every subcommand prints one JSON document on stdout (sorted keys, indent 2)
or, with --table, a flat human-readable view of the same document. Errors are
printed as {"error": code, "detail": {...}} and mapped to exit codes:
0 ok, 2 invalid input / failed validation, 3 unsupported, 4 discrepancy,
1 internal error.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from logging.handlers import RotatingFileHandler
from typing import Any, Callable, Dict, List, Optional, Sequence

from polytope_invariants.bns import (
    bns_arcs,
    bns_member,
    kernel_finitely_generated,
    splitting_complexity,
    thickness_of,
    thurston_polytope,
)
from polytope_invariants.chain3m import check_duality, summary, thurston_from_chain
from polytope_invariants.documents import (
    chain_from_dict,
    dumps,
    groth_from_dict,
    groth_to_dict,
    load_document,
    marked_from_dict,
    marked_to_dict,
    polytope_to_dict,
    presentation_to_dict,
    read_source,
)
from polytope_invariants.errors import InputError, PolytopeInvariantError, UnsupportedError
from polytope_invariants.grothendieck import (
    duality_holds,
    fibration_scale,
    g_equal,
    g_mirror,
    g_scale,
    g_thickness,
    polytope_representative,
    push,
    symmetrize_double,
)
from polytope_invariants.lattice import Direction
from polytope_invariants.marked import (
    interval_invariant,
    interval_routes,
    marked_invariant,
    route_report,
    walk_hull,
    walk_polytope,
)
from polytope_invariants.render import render_svg
from polytope_invariants.version import __version__ as APP_VERSION
from polytope_invariants.words import Presentation, validate, walk_trace

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
LOG_MAX_BYTES = 5 * 1024 * 1024
LOG_BACKUPS = 5

logger = logging.getLogger("polytope_invariants")


class _StderrHandler(logging.StreamHandler):
    """Writes to whatever sys.stderr is at emit time."""

    def emit(self, record):
        self.stream = sys.stderr
        super().emit(record)


def setup_logging(verbose: int = 0, log_file: Optional[str] = None) -> logging.Logger:
    level = logging.WARNING if verbose <= 0 else (logging.INFO if verbose == 1 else logging.DEBUG)
    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    console = next((h for h in logger.handlers if isinstance(h, _StderrHandler)), None)
    if console is None:
        console = _StderrHandler()
        console.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
        logger.addHandler(console)
    console.setLevel(level)

    if log_file:
        path = os.path.abspath(log_file)
        if not any(isinstance(h, RotatingFileHandler) and h.baseFilename == path for h in logger.handlers):
            # Rotate logs: max 5MB, keep 5 backups
            handler = RotatingFileHandler(log_file, maxBytes=LOG_MAX_BYTES, backupCount=LOG_BACKUPS)
            handler.setFormatter(logging.Formatter(LOG_FORMAT))
            handler.setLevel(logging.DEBUG)
            logger.addHandler(handler)
    return logger


@dataclass(frozen=True)
class RunOptions:
    table: bool = False
    svg_path: Optional[str] = None
    assert_3manifold: bool = False
    strict: bool = False
    route: str = "x"
    phi: Optional[Direction] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunOptions":
        phi = getattr(args, "phi", None)
        return cls(
            table=getattr(args, "table", False),
            svg_path=getattr(args, "svg", None),
            assert_3manifold=getattr(args, "assert_3manifold", False),
            strict=getattr(args, "strict", False),
            route=getattr(args, "route", "x"),
            phi=Direction.from_rational(phi) if phi else None,
        )

    def require_phi(self) -> Direction:
        if self.phi is None:
            raise InputError("this command needs --phi", code="missing_phi")
        return self.phi


# ============================================================================
# Output
# ============================================================================

def _flatten(payload: Any, prefix: str = "") -> List[str]:
    if isinstance(payload, dict) and payload:
        rows: List[str] = []
        for key in sorted(payload):
            rows.extend(_flatten(payload[key], f"{prefix}.{key}" if prefix else str(key)))
        return rows
    value = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return [f"{prefix or 'value'}: {value}"]


def format_table(payload: Dict[str, Any]) -> str:
    rows = _flatten(payload)
    width = max(len(r.split(": ", 1)[0]) for r in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in (r.split(": ", 1) for r in rows))


def emit(payload: Dict[str, Any], opts: RunOptions) -> None:
    print(format_table(payload) if opts.table else dumps(payload))


# ============================================================================
# Commands
# ============================================================================

def _presentation(args: argparse.Namespace) -> Presentation:
    text = read_source("-") if args.presentation == "-" else args.presentation
    return validate(text.strip())


def _phi_list(d: Direction) -> List[int]:
    return list(d.covector)


def cmd_validate(args, opts: RunOptions) -> Dict[str, Any]:
    return presentation_to_dict(_presentation(args))


def cmd_polytope(args, opts: RunOptions) -> Dict[str, Any]:
    p = _presentation(args)
    if p.b1 == 2:
        S = walk_polytope(p)
        if opts.svg_path:
            render_svg(S, opts.svg_path)
        return {"b1": 2, "polytope": polytope_to_dict(S), "walk_hull": polytope_to_dict(walk_hull(p))}
    routes = interval_routes(p)
    E = interval_invariant(p)
    R = polytope_representative(E)
    if opts.svg_path and R is not None:
        render_svg(R, opts.svg_path)
    return {
        "b1": 1,
        "element": groth_to_dict(E),
        "is_polytope": R is not None,
        "representative": polytope_to_dict(R) if R is not None else None,
        "routes": sorted(routes),
    }


def cmd_marked(args, opts: RunOptions) -> Dict[str, Any]:
    p = _presentation(args)
    if opts.strict:
        M = route_report(p)[opts.route]
    else:
        M = marked_invariant(p, opts.route)
    if opts.svg_path:
        render_svg(M, opts.svg_path)
    return {"marked_polytope": marked_to_dict(M), "route": opts.route, "checked_both_routes": opts.strict}


def cmd_bns(args, opts: RunOptions) -> Dict[str, Any]:
    return bns_arcs(_presentation(args), opts.route).to_dict()


def cmd_bns_member(args, opts: RunOptions) -> Dict[str, Any]:
    p = _presentation(args)
    phi = opts.require_phi()
    out = {"phi": _phi_list(phi), "member": bns_member(p, phi, opts.route)}
    if args.kernel:
        out["kernel_finitely_generated"] = kernel_finitely_generated(p, phi, opts.route)
    return out


def cmd_thickness(args, opts: RunOptions) -> Dict[str, Any]:
    p = _presentation(args)
    phi = opts.require_phi()
    value = thickness_of(p, phi)
    out = {"phi": _phi_list(phi), "thickness": value}
    if opts.assert_3manifold:
        out["thurston_norm"] = value
    return out


def cmd_thurston(args, opts: RunOptions) -> Dict[str, Any]:
    if not opts.assert_3manifold:
        raise UnsupportedError(
            "the Thurston polytope is only defined for 3-manifold groups; pass --assert-3manifold",
            code="not_asserted",
        )
    p = _presentation(args)
    E = thurston_polytope(p)
    R = polytope_representative(E)
    out = {"element": groth_to_dict(E), "is_polytope": R is not None,
           "representative": polytope_to_dict(R) if R is not None else None}
    if opts.phi is not None:
        out["thurston_norm"] = g_thickness(E, opts.phi) // 2
    return out


def cmd_split_complexity(args, opts: RunOptions) -> Dict[str, Any]:
    p = _presentation(args)
    phi = opts.require_phi()
    return {"phi": _phi_list(phi), "splitting_complexity": splitting_complexity(p, phi)}


def _describe(E) -> Dict[str, Any]:
    R = polytope_representative(E) if E.dim <= 2 else None
    negR = polytope_representative(-E) if E.dim <= 2 else None
    return {
        "element": groth_to_dict(E),
        "is_polytope": R is not None,
        "representative": polytope_to_dict(R) if R is not None else None,
        "is_negative_polytope": negR is not None,
        "negative_representative": polytope_to_dict(negR) if negR is not None else None,
    }


def cmd_groth(args, opts: RunOptions) -> Dict[str, Any]:
    E = groth_from_dict(load_document(args.document))
    F = groth_from_dict(load_document(args.other)) if args.other else None
    op = args.op
    if op in ("add", "sub", "equal") and F is None:
        raise InputError(f"--op {op} needs a second document", code="missing_operand")
    if op == "equal":
        return {"equal": g_equal(E, F)}
    if op == "duality":
        out = {"duality": duality_holds(E, args.n), "n": args.n}
        result = E
    else:
        if op == "describe":
            result = E
        elif op == "add":
            result = E + F
        elif op == "sub":
            result = E - F
        elif op == "neg":
            result = -E
        elif op == "mirror":
            result = g_mirror(E)
        elif op == "symmetrize":
            result = symmetrize_double(E)
        elif op == "scale":
            result = g_scale(E, args.k)
        elif op == "push":
            result = push(E, load_document(args.matrix))
        else:
            result = fibration_scale(E, load_document(args.matrix), args.chi)
        out = _describe(result)
    if opts.phi is not None:
        # thickness of the element just computed, in its own dimension
        out["thickness"] = g_thickness(result, opts.phi)
    return out


def cmd_chain3m(args, opts: RunOptions) -> Dict[str, Any]:
    d = chain_from_dict(load_document(args.document))
    result = thurston_from_chain(d, strict=opts.strict)
    out = summary(result)
    out["element"] = groth_to_dict(result.element)
    out["representative"] = polytope_to_dict(result.representative) if result.representative else None
    out["b1"] = d.b1
    if opts.assert_3manifold:
        out["duality"] = check_duality(result.element)
    return out


def cmd_render(args, opts: RunOptions) -> Dict[str, Any]:
    if not opts.svg_path:
        raise InputError("render needs --svg PATH", code="missing_svg")
    if args.what == "document":
        obj, walk = marked_from_dict(load_document(args.target)), None
    else:
        p = validate(read_source("-").strip() if args.target == "-" else args.target)
        walk = walk_trace(p.relator) if args.what == "walk" else None
        if args.what == "marked":
            obj = marked_invariant(p, opts.route)
        elif args.what == "hull":
            obj = walk_hull(p)
        else:
            obj = walk_polytope(p)
    text = render_svg(obj, opts.svg_path, walk=walk)
    return {"svg": opts.svg_path, "bytes": len(text.encode("utf-8")), "what": args.what}


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunOptions], Dict[str, Any]]] = {
    "validate": cmd_validate,
    "polytope": cmd_polytope,
    "marked": cmd_marked,
    "bns": cmd_bns,
    "bns-member": cmd_bns_member,
    "thickness": cmd_thickness,
    "thurston": cmd_thurston,
    "split-complexity": cmd_split_complexity,
    "groth": cmd_groth,
    "chain3m": cmd_chain3m,
    "render": cmd_render,
}


# ============================================================================
# Parser
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polytope-invariants",
        description="Polytope invariants of two-generator one-relator groups",
    )
    parser.add_argument("--version", action="version", version=f"polytope-invariants {APP_VERSION}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More log output on stderr (-vv for debug)")
    parser.add_argument("--log-file", type=str, default=None, help="Also log to a rotating file")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--json", action="store_true", help="JSON output (default)")
    output.add_argument("--table", action="store_true", help="Human-readable table instead of JSON")

    phi = argparse.ArgumentParser(add_help=False)
    phi.add_argument("--phi", nargs="+", metavar="Q", help="Rational covector, e.g. --phi 1 0 or --phi 1/2 3")

    route = argparse.ArgumentParser(add_help=False)
    route.add_argument("--route", choices=["x", "y"], default="x", help="Fox route for markings")

    svg = argparse.ArgumentParser(add_help=False)
    svg.add_argument("--svg", type=str, default=None, metavar="PATH", help="Write an SVG picture")

    manifold = argparse.ArgumentParser(add_help=False)
    manifold.add_argument("--assert-3manifold", action="store_true",
                          help="Assert the group is an admissible 3-manifold group (labels Thurston norm)")

    strict = argparse.ArgumentParser(add_help=False)
    strict.add_argument("--strict", action="store_true", help="Run every available cross-check")

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def pres(name, help_text, parents):
        p = sub.add_parser(name, help=help_text, parents=[output] + parents)
        p.add_argument("presentation", help='"<x,y|WORD>" or WORD; - reads stdin')
        return p

    pres("validate", "Check a presentation", [])
    pres("polytope", "Polytope invariant (walk polytope or interval)", [svg])
    pres("marked", "Marked polytope of a nice presentation", [route, svg, strict])
    pres("bns", "BNS invariant as open arcs", [route])
    member = pres("bns-member", "Is phi in the BNS invariant?", [phi, route])
    member.add_argument("--kernel", action="store_true", help="Also decide finite generation of ker(phi)")
    pres("thickness", "Thickness of the invariant along phi", [phi, manifold])
    pres("thurston", "Thurston polytope (twice the invariant)", [phi, manifold])
    pres("split-complexity", "Splitting complexity of (G, phi)", [phi])

    groth = sub.add_parser("groth", help="Grothendieck group arithmetic", parents=[output, phi])
    groth.add_argument("document", help="Element document {pos, neg} or polytope {points}")
    groth.add_argument("other", nargs="?", default=None, help="Second element for add/sub/equal")
    groth.add_argument("--op", default="describe",
                       choices=["describe", "add", "sub", "neg", "mirror", "symmetrize", "scale", "equal",
                                "push", "fibration-scale", "duality"])
    groth.add_argument("--k", type=int, default=1, help="Scale factor for --op scale")
    groth.add_argument("--matrix", type=str, default="[[1]]", help="Integral matrix for push / fibration-scale")
    groth.add_argument("--chi", type=int, default=-1, help="Euler characteristic for fibration-scale")
    groth.add_argument("--n", type=int, default=3, help="Dimension for the duality check")

    chain = sub.add_parser("chain3m", help="Thurston polytope from chain-complex data",
                           parents=[output, manifold, strict])
    chain.add_argument("document", help='{"a": [..], "b": [[..],[..]], "c": [..], "b1": n}')

    render = sub.add_parser("render", help="Draw a polytope as SVG", parents=[output, route, svg])
    render.add_argument("target", help="Presentation, or a marked polytope document with --what document")
    render.add_argument("--what", choices=["marked", "walk", "hull", "polytope", "document"], default="marked")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    setup_logging(args.verbose, args.log_file)
    logger.debug("command %s", args.command)
    try:
        opts = RunOptions.from_args(args)
        payload = COMMANDS[args.command](args, opts)
    except PolytopeInvariantError as e:
        log = logger.warning if e.exit_code == 4 else logger.info
        log("%s: %s", e.code, e.message)
        print(dumps(e.to_dict()))
        return e.exit_code
    except Exception as e:
        logger.exception("internal error in %s", args.command)
        print(dumps({"error": "internal", "detail": {"message": str(e), "type": type(e).__name__}}))
        return 1
    emit(payload, opts)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
