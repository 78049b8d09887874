"""
Command line front end.

Subcommands::

    kernel  --alpha A --beta B --z r,theta [--deriv k,l]
    extend  --alpha A --beta B --boundary f.json --grid r0:r1:nr,ntheta [--out field.csv]
    means   --alpha A --beta B --boundary f.json --p P --radii r1,r2,... [--out means.csv]
    coeffs  --alpha A --beta B --boundary f.json [--max-m M] [--out coeffs.json]
    bounds  --theorem T --alpha A --beta B --p P --r R [--k K --l L] [--fnorm X] [--ckl C]
    verify  --suite S [--seed N] [--random-params K] [--report report.json] [--report-table rows.csv]

Complex values are written ``re,im`` (a bare real number is accepted);
``p`` may be ``inf``. Tables go to standard output as CSV unless
``--out`` is given; an ``.xlsx`` suffix selects an Excel workbook.

Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 failed
verification checks.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import SUITES
from .boundary import load_boundary
from .bounds import BoundSpec, Theorem
from .dirichlet import EvalGrid, extend_grid, integral_mean_report
from .errors import AlphaBetaError, ParameterError
from .export import rows_to_frame, write_frame
from .kernel import DiskPoint, ParamPair, kernel_value, u_higher_deriv, u_modulus_bound, u_value
from .series import coeffs_from_boundary
from .verify import SuiteConfig, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2
EXIT_VERIFY_FAILED = 3

THEOREM_CHOICES = {
    "31": Theorem.T31,
    "31cap": Theorem.T31CAP,
    "32": Theorem.T32Z,
    "32z": Theorem.T32Z,
    "32zbar": Theorem.T32ZBAR,
    "33": Theorem.T33,
    "44": Theorem.T44II,
    "44i": Theorem.T44I,
    "44ii": Theorem.T44II,
    "45": Theorem.T45,
}


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as invalid input."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ParameterError(message)


def parse_complex(text: str) -> complex:
    """``"re,im"`` or ``"re"`` to a complex number."""
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ParameterError(f"cannot read {text!r} as a complex number 're,im'")


def parse_pair(text: str, what: str) -> Tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ParameterError(f"{what} {text!r} must have the form a,b")
    return parts[0], parts[1]


def parse_point(text: str) -> DiskPoint:
    r, theta = parse_pair(text, "point")
    try:
        return DiskPoint(float(r), float(theta))
    except ValueError as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"point {text!r} must be 'r,theta'") from None


def parse_orders(text: str) -> Tuple[int, int]:
    k, l = parse_pair(text, "derivative order")
    try:
        return int(k), int(l)
    except ValueError:
        raise ParameterError(f"derivative order {text!r} must be 'k,l'") from None


def parse_p(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise ParameterError(f"p = {text!r} is not a number") from None
    if math.isnan(p) or p < 1.0:
        raise ParameterError(f"p = {text} must satisfy p >= 1 or p = inf")
    return p


def parse_radii(text: str) -> List[float]:
    try:
        return [float(r) for r in text.split(",") if r.strip()]
    except ValueError:
        raise ParameterError(f"radii {text!r} must be a comma separated list") from None


def _params(args: argparse.Namespace) -> ParamPair:
    return ParamPair(parse_complex(args.alpha), parse_complex(args.beta))


def _cjson(value: complex) -> List[float]:
    value = complex(value)
    return [value.real, value.imag]


def _print_json(data: Dict[str, Any]) -> None:
    json.dump(data, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_kernel(args: argparse.Namespace) -> int:
    params = _params(args)
    point = parse_point(args.z)
    k, l = parse_orders(args.deriv)
    _print_json({
        "params": params.as_json(),
        "z": [point.r, point.theta],
        "value": _cjson(kernel_value(params, point)),
        "u": _cjson(u_value(params, point)),
        "deriv": [k, l],
        "derivative": _cjson(u_higher_deriv(params, point, k, l)),
        "modulus_bound": u_modulus_bound(params, point),
    })
    return EXIT_OK


def cmd_extend(args: argparse.Namespace) -> int:
    params = _params(args)
    f = load_boundary(args.boundary)
    grid = EvalGrid.from_string(args.grid)
    write_frame(extend_grid(params, f, grid), args.out, sheet_name="field")
    return EXIT_OK


def cmd_means(args: argparse.Namespace) -> int:
    params = _params(args)
    f = load_boundary(args.boundary)
    p = parse_p(args.p)
    f_norm = f.lp_norm(p)
    rows = []
    for r in parse_radii(args.radii):
        report = integral_mean_report(params, f, r, p, f_norm)
        rows.append({"r": r, "Mp": report.value, "bound": report.bound, "margin": report.margin})
    write_frame(rows_to_frame(rows), args.out, sheet_name="means")
    return EXIT_OK


def cmd_coeffs(args: argparse.Namespace) -> int:
    params = _params(args)
    f = load_boundary(args.boundary)
    coeffs = coeffs_from_boundary(params, f, args.max_m)
    data = {"params": params.as_json(), **coeffs.to_json()}
    if args.out:
        Path(args.out).write_text(json.dumps(data, indent=2))
    else:
        _print_json(data)
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    spec = BoundSpec(
        THEOREM_CHOICES[args.theorem],
        _params(args),
        parse_p(args.p),
        args.r,
        args.k,
        args.l,
    )
    result = spec.evaluate(args.fnorm, args.ckl)
    if math.isinf(result["components"]["p"]):
        result["components"]["p"] = "inf"
    _print_json(result)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = SuiteConfig(seed=args.seed, n_boundary=args.n_boundary, degree=args.degree,
                      n_random_params=args.random_params)
    report = run_suite(args.suite, cfg)
    if args.report:
        report.write_json(args.report)
    if args.report_table:
        write_frame(rows_to_frame(report.rows()), args.report_table, sheet_name="checks")
    summary = report.summary
    print(json.dumps({"suite": args.suite, **summary}))
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", required=True, help="alpha as re,im")
    parser.add_argument("--beta", required=True, help="beta as re,im")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="abharmonic",
        description="(alpha, beta)-harmonic functions on the unit disk",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="kernel value, derivative and modulus bound")
    _add_params(p)
    p.add_argument("--z", required=True, help="point as r,theta")
    p.add_argument("--deriv", default="1,0", help="derivative orders k,l (k + l <= 4)")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("extend", help="solve the Dirichlet problem on a polar grid")
    _add_params(p)
    p.add_argument("--boundary", required=True, help="boundary JSON file")
    p.add_argument("--grid", required=True, help="r0:r1:nr,ntheta")
    p.add_argument("--out", help="CSV or .xlsx output (default: stdout)")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("means", help="integral means and their bound")
    _add_params(p)
    p.add_argument("--boundary", required=True, help="boundary JSON file")
    p.add_argument("--p", required=True, help="exponent, 'inf' allowed")
    p.add_argument("--radii", required=True, help="r1,r2,...")
    p.add_argument("--out", help="CSV or .xlsx output (default: stdout)")
    p.set_defaults(func=cmd_means)

    p = sub.add_parser("coeffs", help="hypergeometric series coefficients")
    _add_params(p)
    p.add_argument("--boundary", required=True, help="boundary JSON file")
    p.add_argument("--max-m", type=int, default=None, help="truncation M")
    p.add_argument("--out", help="coefficient JSON output (default: stdout)")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("bounds", help="evaluate a closed-form bound")
    p.add_argument("--theorem", required=True, choices=sorted(THEOREM_CHOICES))
    _add_params(p)
    p.add_argument("--p", default="2", help="exponent, 'inf' allowed")
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--fnorm", type=float, default=1.0)
    p.add_argument("--ckl", type=float, default=None, help="derivative constant (default: grid estimate)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="all", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--n-boundary", type=int, default=50)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--random-params", type=int, default=0,
                   help="extra random (alpha, beta) pairs, half complex")
    p.add_argument("--report", help="report JSON output")
    p.add_argument("--report-table", help="CSV or .xlsx table of the checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line interface and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    handler: Callable[[argparse.Namespace], int] = args.func
    try:
        return handler(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (AlphaBetaError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
