"""Command-line interface.

Exit codes: 0 success, 2 usage or precondition error, 3 recovery contract
violation (including a failed factorization check).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .contfrac import ContinuedFraction, cf_eval, cf_expand
from .decimal_approx import DecimalApprox, InvalidLiteral
from .planner import InvalidBound, plan_for_denominator_bound
from .polyexact import (
    ApproxPolynomial,
    ExactPolynomial,
    InvalidPolynomial,
    PolynomialSyntaxError,
    leading_term,
    monic_transform,
    recover_polynomial,
    verify_factorization,
)
from .recovery import RecoveryContractError, recover
from .sweep import run_sweep

EXIT_OK, EXIT_USAGE, EXIT_CONTRACT = 0, 2, 3

_FRACTION = {"type": "string", "pattern": r"^-?\d+/\d+$"}

PLAN_SCHEMA = {
    "type": "object",
    "required": ["n_bound", "k_threshold", "delta", "epsilon_stop", "decimal_digits"],
    "properties": {
        "n_bound": {"type": "integer", "minimum": 2},
        "k_threshold": {"type": "integer", "minimum": 1},
        "delta": _FRACTION,
        "epsilon_stop": _FRACTION,
        "decimal_digits": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

RECOVERY_SCHEMA = {
    "type": "object",
    "required": ["value", "quotients", "terminating_quotient", "collapsed_trailing_one"],
    "properties": {
        "value": _FRACTION,
        "quotients": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
        "terminating_quotient": {"type": ["integer", "null"]},
        "collapsed_trailing_one": {"type": "boolean"},
        "n_bound": {"type": "integer"},
    },
}

SWEEP_SCHEMA = {
    "type": "object",
    "required": ["metadata", "rows"],
    "properties": {
        "metadata": {
            "type": "object",
            "required": ["seed", "timestamp", "version"],
        },
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n_bound", "scale", "trials", "successes"],
                "properties": {
                    "n_bound": {"type": "integer"},
                    "scale": _FRACTION,
                    "trials": {"type": "integer", "minimum": 1},
                    "successes": {"type": "integer", "minimum": 0},
                },
            },
        },
    },
}


class UsageError(Exception):
    pass


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_plan(args) -> int:
    plan = plan_for_denominator_bound(args.n_bound)
    _emit(args, plan.as_dict(), plan.to_text())
    return EXIT_OK


def cmd_recover(args) -> int:
    if args.json:
        args.format = "json"
    plan = plan_for_denominator_bound(args.n_bound)
    approx = DecimalApprox.parse(args.approx)
    result = recover(approx, plan)
    payload = dict(result.as_dict(), n_bound=plan.n_bound)
    text = "\n".join([
        _fmt(result.value),
        f"quotients: {list(result.quotients_used.quotients)}",
        f"terminating_quotient: {result.terminating_quotient}",
        f"collapsed_trailing_one: {str(result.collapsed_trailing_one).lower()}",
    ])
    _emit(args, payload, text)
    return EXIT_OK


def _parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        try:
            value = Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"not a rational: {text!r}") from exc
        return value
    return DecimalApprox.parse(text).to_fraction()


def cmd_expand(args) -> int:
    x = _parse_rational(args.value)
    cf = cf_expand(x)
    _emit(args, {"value": _fmt(x), "quotients": list(cf.quotients)}, str(cf))
    return EXIT_OK


def cmd_eval(args) -> int:
    raw = " ".join(args.quotients).replace("[", " ").replace("]", " ").replace(";", ",")
    try:
        qs = tuple(int(t) for t in raw.replace(",", " ").split())
    except ValueError as exc:
        raise UsageError(f"quotients must be integers: {raw!r}") from exc
    cf = ContinuedFraction(qs)
    value = cf_eval(cf)
    _emit(args, {"quotients": list(cf.quotients), "value": _fmt(value)}, _fmt(value))
    return EXIT_OK


def read_poly_input(text: str) -> tuple[int | None, Fraction | None, list[str]]:
    """Split a poly-recover input into (bound, accuracy, polynomial lines).

    Lines ``N = 65`` and ``accuracy = 1/557440`` set the bound and the
    stated accuracy; ``#`` starts a comment; every other line is a polynomial.
    """
    bound, accuracy, polys = None, None, []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower()
        if sep and key in ("n", "bound", "n_bound"):
            bound = int(value)
        elif sep and key == "accuracy":
            accuracy = _parse_rational(value)
        else:
            polys.append(line)
    return bound, accuracy, polys


def cmd_poly_recover(args) -> int:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input) as fh:
            text = fh.read()
    bound, accuracy, lines = read_poly_input(text)
    if not lines:
        raise UsageError("no approximate polynomials in input")
    original = None
    if args.verify:
        with open(args.verify) as fh:
            original = ExactPolynomial.parse(fh.read().replace("\n", " "))
    if args.n_bound is not None:
        bound = args.n_bound
    if bound is None:
        if original is None:
            raise UsageError("no denominator bound: give -N, an 'N = ...' line, or --verify")
        _, bound = monic_transform(original, args.leading_var or original.variables[0])
    plan = plan_for_denominator_bound(bound)
    accuracy = accuracy if accuracy is not None else plan.delta
    factors = [recover_polynomial(ApproxPolynomial.parse(line, accuracy), plan.n_bound) for line in lines]

    payload = {"n_bound": plan.n_bound, "factors": [str(f) for f in factors]}
    out = [f"g{i} = {f}" for i, f in enumerate(factors, start=1)]
    status = EXIT_OK
    if original is not None:
        var = args.leading_var or original.variables[0]
        _, lc = leading_term(original, var)
        for f in factors:
            _, flc = leading_term(f, var)
            lc /= flc
        ok = verify_factorization(original, factors, lc)
        payload.update(scalar=_fmt(lc), verified=ok)
        out.append(f"scalar = {_fmt(lc)}")
        out.append("VERIFIED" if ok else "VERIFICATION FAILED")
        status = EXIT_OK if ok else EXIT_CONTRACT
    _emit(args, payload, "\n".join(out))
    return status


def _scales(text: str) -> list[Fraction]:
    try:
        scales = [Fraction(s.strip()) for s in text.split(",") if s.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad scale list {text!r}") from exc
    if not scales or any(s <= 0 for s in scales):
        raise UsageError("scales must be positive rationals")
    return scales


def cmd_sweep(args) -> int:
    if args.n_max < 2 or args.trials < 1:
        raise UsageError("sweep needs --n-max >= 2 and --trials >= 1")
    report = run_sweep(args.n_max, _scales(args.scales), args.trials, args.seed)
    body = report.to_json() if args.format == "json" else report.to_csv()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(body if body.endswith("\n") else body + "\n")
        failed = len(report.failures)
        print(f"wrote {len(report.rows)} rows to {args.output} ({failed} rows with failures)")
    else:
        sys.stdout.write(body if body.endswith("\n") else body + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="ratrecover",
        description="Recover exact rationals from decimal approximations.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", parents=[common], help="accuracy plan for a denominator bound")
    p.add_argument("-N", "--n-bound", type=int, required=True)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("recover", parents=[common], help="recover a rational from a decimal literal")
    p.add_argument("approx", help="decimal literal, e.g. 0.8106507864")
    p.add_argument("-N", "--n-bound", type=int, required=True)
    p.add_argument("--json", action="store_true", help="same as --format json")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("expand", parents=[common], help="continued fraction of a rational")
    p.add_argument("value", help="p/q, integer or decimal literal")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("eval", parents=[common], help="value of a continued fraction")
    p.add_argument("quotients", nargs="+", help="e.g. 0,1,4,3,1,1,4")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("poly-recover", parents=[common], help="recover exact polynomial factors")
    p.add_argument("input", nargs="?", default="-", help="input file ('-' for stdin)")
    p.add_argument("-N", "--n-bound", type=int)
    p.add_argument("--verify", metavar="ORIGINAL", help="file holding the polynomial to factor")
    p.add_argument("--leading-var", help="variable ranked first for leading terms")
    p.set_defaults(func=cmd_poly_recover)

    p = sub.add_parser("sweep", parents=[common], help="empirical bound-sharpness sweep")
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--scales", default="1/7,1/2,999999/1000000,50")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RecoveryContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except InvalidBound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, InvalidLiteral, PolynomialSyntaxError, InvalidPolynomial, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
