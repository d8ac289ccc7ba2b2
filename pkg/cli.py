"""
W(m,n) Module Engine - Command Line

Exit codes: 0 success (all checks pass), 1 a check failed, 2 usage error.

Examples:
    python cli.py bracket "t1*D1" "t1^-1*D1"
    python cli.py apply "x1*P1" "x1*t1^2"
    python cli.py act --m 1 --n 1 --rep natural --lam 1/2 "t1*D1" "x1" --j 1
    python cli.py mult --m 2 --n 1 --lam 1/2,1/3 --radius 1
    python cli.py twist --m 1 --theta "1,1;0,1" --weight "1,0"
    python cli.py cover --minimalN --m 1 --n 0 --rep trivial --lam 1/2
    python cli.py verma --m0 --n 1 --lambda0 1 --depth 4 --raise-depth 6
    python cli.py verify jacobi --m 1 --n 1 --samples 100 --seed 7
    python cli.py verify --suite jets --seed 3
    python cli.py verify --list
"""

import argparse
import csv
import json
import logging
import sys
from typing import List, Optional

from app.core.settings import DEFAULT_SAMPLES, DEFAULT_SEED
from app.core.suite_data import list_suites
from app.models.schemas import ModuleSpec, SuiteConfig, TwistRequest, VermaRequest
from app.services.cover import (
    CoverElement,
    in_window,
    minimal_ell,
    minimal_N_search,
    spanning_bound,
    window_reduce,
)
from app.services.expr import (
    field_to_json,
    format_cover,
    format_field,
    format_poly,
    format_value,
    format_vector,
    parse,
    parse_field,
    parse_poly,
    parse_value,
    parse_vector,
    to_json,
    to_text,
    vector_to_json,
)
from app.services.suites import run_suite
from app.services.superalg import format_scalar
from app.services.tensormod import act, multiplicity, multiplicity_table, tensor_module
from app.services.verma import radical_at
from app.services.vfields import (
    Algebra,
    AlgebraKind,
    apply,
    bracket,
    support_transform,
    twist_field,
)

logger = logging.getLogger("wmn")


# =============================================================================
# ARGUMENTS
# =============================================================================

def _rationals(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _matrix(text: str) -> List[List[int]]:
    try:
        return [[int(x) for x in row.split(",")] for row in text.split(";")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not an integer matrix like '1,1;0,1'")


def _add_algebra_args(parser: argparse.ArgumentParser, m: int = 1, n: int = 1) -> None:
    parser.add_argument("--kind", default="wmn", help="wmn, wmn_d0 or wm1n (default: wmn)")
    parser.add_argument("--m", type=int, default=m, help=f"Even variables (default: {m})")
    parser.add_argument("--n", type=int, default=n, help=f"Odd variables (default: {n})")


def _add_module_args(parser: argparse.ArgumentParser, rep: str = "natural") -> None:
    _add_algebra_args(parser)
    parser.add_argument("--rep", default=rep, help="trivial, natural, natural⊗natural, berezinian:c")
    parser.add_argument("--lam", type=_rationals, default=[], help="λ, comma separated (default: 1/2 each)")
    parser.add_argument("--lam0", "--lambda0", dest="lam0", default=None, help="λ0 for kind wmn_d0")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable JSON output")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    parser = argparse.ArgumentParser(description="Exact computations in W(m,n) and its tensor modules.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("parse", parents=[common], help="Parse an expression and print its normal form")
    p.add_argument("text")
    _add_algebra_args(p)

    p = sub.add_parser("bracket", parents=[common], help="Bracket of two vector fields")
    p.add_argument("left")
    p.add_argument("right")
    _add_algebra_args(p)

    p = sub.add_parser("apply", parents=[common], help="Apply a vector field to a function")
    p.add_argument("field")
    p.add_argument("function")
    _add_algebra_args(p)

    p = sub.add_parser("act", parents=[common], help="Act on f ⊗ v_j in a tensor module")
    p.add_argument("field")
    p.add_argument("vector", help="Function f")
    p.add_argument("--j", type=int, default=0, help="Basis index of V (default: 0)")
    _add_module_args(p)

    p = sub.add_parser("mult", parents=[common], help="Weight multiplicities (CSV table or one weight)")
    _add_module_args(p)
    p.add_argument("--weight", type=_rationals, default=None, help="Single weight μ, comma separated")
    p.add_argument("--radius", type=int, default=1, help="Offset radius of the table (default: 1)")

    p = sub.add_parser("twist", parents=[common], help="Twist a field of W(m+1,n) or transform support weights")
    p.add_argument("--theta", type=_matrix, required=True, help="Rows separated by ';', e.g. '1,1;0,1'")
    p.add_argument("--m", type=int, default=1, help="θ is (m+1)×(m+1) (default: 1)")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--field", default=None, help="Field of W(m+1,n), variables t0..tm")
    p.add_argument("--weight", type=_rationals, action="append", default=None, help="Support point (repeatable)")

    p = sub.add_parser("cover", parents=[common], help="Annihilation order N and window reduction on the cover")
    _add_module_args(p, rep="trivial")
    p.add_argument("--minimalN", action="store_true", help="Report only the annihilation order N (with --reduce output)")
    p.add_argument("--minimal-ell", action="store_true", help="Also report the minimal Ω order ℓ")
    p.add_argument("--bound", type=int, default=4, help="Largest N tried (default: 4)")
    p.add_argument("--radius", type=int, default=1, help="Sweep radius (default: 1)")
    p.add_argument("--reduce", nargs=2, metavar=("FIELD", "FUNCTION"), help="Reduce ψ(FIELD, FUNCTION ⊗ v_j)")
    p.add_argument("--j", type=int, default=0)

    p = sub.add_parser("verma", parents=[common], help="Dimension table of L(T) over W(m+1,n)")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--m0", dest="m", action="store_const", const=0, help="Exact mode m = 0")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--rep", default="trivial")
    p.add_argument("--lam", type=_rationals, default=[])
    p.add_argument("--lam0", "--lambda0", dest="lam0", default="1")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--raise-depth", type=int, default=None)
    p.add_argument("--window", type=int, default=1)

    p = sub.add_parser("verify", parents=[common], help="Run a verification suite")
    p.add_argument("suite", nargs="?", default=None)
    p.add_argument("--suite", dest="suite_option", default=None, help="Suite name (same as the positional)")
    p.add_argument("--list", action="store_true", help="List suites with their equation groups")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--kind", default=None)
    p.add_argument("--rep", default=None)
    p.add_argument("--lam", type=_rationals, default=[])
    p.add_argument("--lam0", "--lambda0", dest="lam0", default=None)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"Default from WMN_SEED ({DEFAULT_SEED})")
    p.add_argument("--window", type=int, default=1)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--raise-depth", type=int, default=None)
    p.add_argument("--corrupt-sign", action="store_true", help=argparse.SUPPRESS)
    return parser


# =============================================================================
# COMMANDS
# =============================================================================

def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print(text)


def _algebra(args) -> Algebra:
    return Algebra(AlgebraKind(args.kind.lower().replace("-", "_")), args.m, args.n)


def _module(args):
    spec = ModuleSpec(kind=args.kind, m=args.m, n=args.n, rep=args.rep, lam=args.lam, lam0=args.lam0)
    return tensor_module(spec.kind, spec.m, spec.n, spec.rep, spec.lam, spec.lam0)


def cmd_parse(args) -> int:
    tree = parse(args.text)
    value = parse_value(args.text, _algebra(args))
    payload = {"canonical": to_text(tree), "value": format_value(value), "json": to_json(value)}
    _emit(args, payload, f"{payload['canonical']}\n= {payload['value']}")
    return 0


def cmd_bracket(args) -> int:
    algebra = _algebra(args)
    result = bracket(parse_field(args.left, algebra), parse_field(args.right, algebra))
    _emit(args, {"value": format_field(result), "json": field_to_json(result)}, format_field(result))
    return 0


def cmd_apply(args) -> int:
    algebra = _algebra(args)
    result = apply(parse_field(args.field, algebra), parse_poly(args.function, algebra))
    _emit(args, {"value": format_poly(result), "json": to_json(result)}, format_poly(result))
    return 0


def cmd_act(args) -> int:
    spec = _module(args)
    result = act(spec, parse_field(args.field, spec.algebra), parse_vector(args.vector, spec, args.j))
    _emit(args, {"value": format_vector(result), "json": vector_to_json(result)}, format_vector(result))
    return 0


def cmd_mult(args) -> int:
    spec = _module(args)
    if args.weight is not None:
        dim = multiplicity(spec, args.weight)
        _emit(args, {"weight": args.weight, "multiplicity": dim}, str(dim))
        return 0
    rows = multiplicity_table(spec, args.radius)
    if args.json:
        _emit(args, {"table": [{"offset": list(r), "dim": d} for r, d in rows]}, "")
        return 0
    writer = csv.writer(sys.stdout)
    writer.writerow([f"r{label}" for label in spec.context.even_labels] + ["dim"])
    for r, d in rows:
        writer.writerow(list(r) + [d])
    return 0


def cmd_twist(args) -> int:
    req = TwistRequest(
        theta=args.theta,
        m=args.m,
        n=args.n,
        field=args.field,
        weights=[list(w) for w in args.weight] if args.weight else None,
    )
    payload, lines = {}, []
    if req.field is not None:
        algebra = Algebra(AlgebraKind.WM1N, req.m, req.n)
        image = format_field(twist_field(req.theta, parse_field(req.field, algebra)))
        payload["field"] = image
        lines.append(image)
    if req.weights is not None:
        points = sorted(support_transform(req.theta, req.weights))
        payload["weights"] = [[format_scalar(x) for x in point] for point in points]
        lines += ["(" + ", ".join(p) + ")" for p in payload["weights"]]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_cover(args) -> int:
    spec = _module(args)
    payload = {}
    N = minimal_N_search(spec, args.bound, args.radius)
    payload["N"] = N
    if not args.minimalN:
        payload["spanning_bound"] = spanning_bound(spec, N)
    if args.minimal_ell:
        payload["ell"] = minimal_ell(spec)
    if args.reduce:
        field_text, function = args.reduce
        c = CoverElement.psi(spec, parse_field(field_text, spec.algebra), parse_vector(function, spec, args.j))
        reduced = window_reduce(c, N)
        payload["reduced"] = format_cover(reduced)
        payload["in_window"] = in_window(reduced, N)
    text = "\n".join(f"{key}: {value}" for key, value in payload.items())
    _emit(args, payload, text)
    return 0


def cmd_verma(args) -> int:
    req = VermaRequest(
        m=args.m, n=args.n, rep=args.rep, lam=args.lam, lam0=args.lam0,
        depth=args.depth, raise_depth=args.raise_depth, window=args.window,
    )
    top = tensor_module("wmn_d0", req.m, req.n, req.rep, req.lam, req.lam0)
    report = radical_at(top, req.depth, req.raise_depth, req.window)
    if report.stabilized is False:
        logger.warning(f"radical not stabilized at raise depth {report.raise_depth}")
    if args.json:
        _emit(args, report.to_dict(), "")
        return 0
    writer = csv.writer(sys.stdout)
    writer.writerow(["degree", "dim_M", "dim_rad", "dim_L", "approximate", "generation_hypothesis"])
    for d in range(report.depth + 1):
        writer.writerow([
            -d,
            report.module_dims[d],
            report.radical_dims[d],
            report.quotient_dims[d],
            report.approximate,
            report.generation_hypothesis,
        ])
    return 0


def cmd_verify(args) -> int:
    if args.list:
        suites = list_suites()
        lines = [f"{s['name']:<24} {s['group']}\n{'':<24} {s['anchor']}" for s in suites]
        _emit(args, {"suites": suites}, "\n".join(lines))
        return 0
    if args.suite and args.suite_option and args.suite != args.suite_option:
        raise ValueError(f"Suite given twice: '{args.suite}' and '{args.suite_option}'")
    suite = args.suite or args.suite_option
    if suite is None:
        raise ValueError("Give a suite name or --list")
    cfg = SuiteConfig(
        suite=suite, m=args.m, n=args.n, kind=args.kind, rep=args.rep, lam=args.lam, lam0=args.lam0,
        samples=args.samples, seed=args.seed, window=args.window, depth=args.depth,
        raise_depth=args.raise_depth, corrupt_sign=args.corrupt_sign,
    )
    report = run_suite(cfg)
    payload = report.to_dict()
    if args.json:
        _emit(args, payload, "")
    else:
        for check in payload["checks"]:
            status = "ok  " if check["failed"] == 0 else "FAIL"
            print(f"{status} {check['name']}: {check['passed']} passed, {check['failed']} failed")
            for label in check["failures"]:
                print(f"       {label}")
        print(f"{report.suite}: {'PASS' if report.passed else 'FAIL'}")
    return report.exit_code


COMMANDS = {
    "parse": cmd_parse,
    "bracket": cmd_bracket,
    "apply": cmd_apply,
    "act": cmd_act,
    "mult": cmd_mult,
    "twist": cmd_twist,
    "cover": cmd_cover,
    "verma": cmd_verma,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.cmd](args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
