"""Command-line front end.

Exit status: 0 on success, 1 if a verification check failed, 2 on a
usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import finite_field_characters as ff
from . import verification_harness as vh
from .elliptic_real import (
    WeierstrassCurve,
    real_period_2f1,
    real_period_lambda,
    to_lambda_weierstrass,
)
from .special_functions import (
    DomainError,
    EvalOptions,
    HypergeometricSpec,
    agm,
    as_fraction,
    gamma_real,
    pfq,
    rational_binomial,
)

CSV_HEADER = ["suite", "name", "params", "lhs", "rhs", "residual", "passed"]


def _float(x: float) -> float | str:
    if not math.isfinite(x):
        return str(x)
    return float(f"{x:.15g}")


def to_jsonable(obj: Any) -> Any:
    """Plain JSON data with fractions as "num/den" and floats at 15 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, int):
        return int(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, complex):
        return [_float(obj.real), _float(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return to_jsonable(obj.item())
    return str(obj)


def result_to_dict(r: vh.CheckResult) -> dict:
    return to_jsonable({
        "name": r.name,
        "parameters": r.parameters,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "residual": r.residual,
        "passed": r.passed,
        "skipped": r.skipped,
        "tolerance": r.tolerance,
        "elapsed": r.elapsed,
        "details": r.details,
    })


def report_to_dict(report: vh.SuiteReport) -> dict:
    return {
        "suite": report.suite,
        "seed": report.seed,
        "counts": {"passed": report.passed, "failed": report.failed, "skipped": report.skipped},
        "results": [result_to_dict(r) for r in report.results],
    }


def dumps_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def reports_to_json(reports: Sequence[vh.SuiteReport]) -> str:
    return dumps_json({"suites": [report_to_dict(r) for r in reports],
                       "ok": all(r.ok for r in reports)})


def reports_to_csv(reports: Sequence[vh.SuiteReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for report in reports:
        for r in report.results:
            d = result_to_dict(r)
            writer.writerow([
                report.suite, r.name,
                json.dumps(d["parameters"], sort_keys=True, separators=(",", ":")),
                "" if d["lhs"] is None else d["lhs"],
                "" if d["rhs"] is None else d["rhs"],
                d["residual"],
                "skipped" if r.skipped else str(r.passed).lower(),
            ])
    return buf.getvalue()


def reports_to_text(reports: Sequence[vh.SuiteReport], verbose: bool = False) -> str:
    lines = []
    for report in reports:
        lines.append(f"{report.suite}: {report.passed} passed, {report.failed} failed, "
                     f"{report.skipped} skipped")
        for r in report.results:
            if r.skipped or (r.passed and not verbose):
                continue
            status = "ok  " if r.passed else "FAIL"
            params = ", ".join(f"{k}={to_jsonable(v)}" for k, v in r.parameters.items())
            lines.append(f"  {status} {r.name}({params}) lhs={to_jsonable(r.lhs)} "
                         f"rhs={to_jsonable(r.rhs)} residual={r.residual:.3e}")
    return "\n".join(lines) + "\n"


def _real(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}")


def _rational_list(text: str) -> list[Fraction]:
    return [as_fraction(t) for t in text.split(",") if t.strip()]


def _emit(args, value: Any, text: str | None = None) -> None:
    if args.format == "json":
        sys.stdout.write(dumps_json({"value": to_jsonable(value)}))
    elif args.format == "csv":
        sys.stdout.write(f"value\n{to_jsonable(value)}\n")
    else:
        print(text if text is not None else value)


def _fmt_complex(v: complex) -> str:
    return f"{v.real:.15g}{v.imag:+.15g}i"


def cmd_hyp(args) -> int:
    spec = HypergeometricSpec(_rational_list(args.upper), _rational_list(args.lower), args.z)
    res = pfq(spec, EvalOptions(relative_tolerance=args.tol))
    if not res.converged:
        print(f"warning: not converged after {res.terms_used} terms", file=sys.stderr)
    _emit(args, res.value, f"{res.value:.15g}")
    return 0


def cmd_agm(args) -> int:
    v = agm(args.a, args.b, args.tol)
    _emit(args, v, f"{v:.15g}")
    return 0


def cmd_gamma(args) -> int:
    v = gamma_real(as_fraction(args.x))
    _emit(args, v, f"{v:.15g}")
    return 0


def cmd_binom(args) -> int:
    v = rational_binomial(as_fraction(args.n), as_fraction(args.k))
    _emit(args, v, f"{v:.15g}")
    return 0


def cmd_period(args) -> int:
    lam = as_fraction(args.lam)
    res = real_period_lambda(lam) if args.method == "agm" else real_period_2f1(lam)
    _emit(args, res.omega, f"{res.omega:.15g}")
    return 0


def cmd_trace(args) -> int:
    p = args.prime
    ctx = ff.make_prime_context(p)
    if args.curve is not None:
        curve = WeierstrassCurve.from_coefficients(_rational_list(args.curve))
        a_p = ff.curve_trace(curve, p)
    else:
        lam = as_fraction(args.lam)
        if not ff.good_reduction(to_lambda_weierstrass(lam), p):
            raise DomainError(f"E_{lam} has bad reduction at {p}")
        a_p = ff.trace_frobenius(ctx, ff.lambda_cubic(lam, p))
    _emit(args, a_p)
    return 0


def cmd_gauss(args) -> int:
    ctx = ff.make_prime_context(args.prime)
    v = ff.gauss_sum(ctx.character(args.char))
    _emit(args, v, _fmt_complex(v))
    return 0


def cmd_jacobi(args) -> int:
    ctx = ff.make_prime_context(args.prime)
    v = ff.jacobi_sum(ctx.character(args.char1), ctx.character(args.char2))
    _emit(args, v, _fmt_complex(v))
    return 0


def cmd_ghyp(args) -> int:
    p = args.prime
    ctx = ff.make_prime_context(p)
    x = ctx.reduce(as_fraction(args.x))
    if args.phi_eps:
        snapped = ff.snap_to_rational(ff.ff_3f2(ctx, x), p * p, 1e-6 * p)
        _emit(args, snapped.value, str(snapped))
        return 0
    if args.upper is None or args.lower is None:
        raise DomainError("give --phi-eps or both --upper and --lower character exponents")
    A = [ctx.character(int(k)) for k in args.upper.split(",")]
    B = [ctx.character(int(k)) for k in args.lower.split(",")]
    v = ff.gaussian_hyp(A, B, x)
    _emit(args, v, _fmt_complex(v))
    return 0


def cmd_jacobsthal(args) -> int:
    _emit(args, ff.jacobsthal_phi_cubic(ff.make_prime_context(args.prime)))
    return 0


def cmd_represent(args) -> int:
    if not ff.is_prime(args.prime):
        raise DomainError(f"{args.prime} is not prime")
    a, b = ff.represent_a2_3b2(args.prime)
    _emit(args, {"a": a, "b": b}, f"{a} {b}")
    return 0


def cmd_verify(args) -> int:
    config = vh.HarnessConfig(primes_max=args.primes_max, seed=args.seed)
    names = vh.SUITES if args.suite == "all" else (args.suite,)
    reports = [vh.run_suite(name, config) for name in names]
    if args.format == "json":
        out = reports_to_json(reports)
    elif args.format == "csv":
        out = reports_to_csv(reports)
    else:
        out = reports_to_text(reports, args.verbose)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0 if all(r.ok for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")

    parser = argparse.ArgumentParser(
        prog="ellhyp",
        description="Hypergeometric series, real periods and finite-field character sums. "
                    "Rational arguments are written p/q; real-valued ones also accept decimals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hyp", parents=[common], help="evaluate pFq")
    p.add_argument("--upper", required=True, help="comma-separated rationals a1,a2,...")
    p.add_argument("--lower", default="", help="comma-separated rationals b1,...")
    p.add_argument("--z", type=_real, required=True, help="p/q or decimal")
    p.add_argument("--tol", type=float, default=1e-12, help="relative stopping tolerance")
    p.set_defaults(func=cmd_hyp)

    p = sub.add_parser("agm", parents=[common], help="arithmetic-geometric mean")
    p.add_argument("a", type=_real)
    p.add_argument("b", type=_real)
    p.add_argument("--tol", type=float, default=1e-15)
    p.set_defaults(func=cmd_agm)

    p = sub.add_parser("gamma", parents=[common], help="real gamma function")
    p.add_argument("x", help="rational p/q or decimal")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("binom", parents=[common], help="Gamma(n+1)/(Gamma(k+1)Gamma(n-k+1))")
    p.add_argument("n")
    p.add_argument("k")
    p.set_defaults(func=cmd_binom)

    p = sub.add_parser("period", parents=[common], help="real period of y^2=(x-1)(x^2+lambda)")
    p.add_argument("--lambda", dest="lam", required=True, help="lambda > 0, p/q or decimal")
    p.add_argument("--method", choices=("agm", "2f1"), default="agm")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("trace", parents=[common], help="trace of Frobenius a_p")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lambda", dest="lam", help="rational lambda for E_lambda")
    g.add_argument("--curve", help="a1,a2,a3,a4,a6 as rationals")
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("gauss", parents=[common], help="Gauss sum of the character with exponent K")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--char", type=int, required=True)
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("jacobi", parents=[common], help="Jacobi sum J(chi_K1, chi_K2)")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--char1", type=int, required=True)
    p.add_argument("--char2", type=int, required=True)
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("ghyp", parents=[common], help="Gaussian hypergeometric series over F_p")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--x", required=True, help="element of F_p (integer or p-integral p/q)")
    p.add_argument("--phi-eps", action="store_true",
                   help="3F2(x)_p with phi upper and epsilon lower parameters; prints num/den")
    p.add_argument("--upper", help="character exponents A0,...,An")
    p.add_argument("--lower", help="character exponents B1,...,Bn")
    p.set_defaults(func=cmd_ghyp)

    p = sub.add_parser("jacobsthal", parents=[common], help="sum of phi(x^3+1) over F_p")
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(func=cmd_jacobsthal)

    p = sub.add_parser("represent", parents=[common], help="p = a^2 + 3b^2 with a = -1 mod 3")
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=vh.SUITES + ("all",))
    p.add_argument("--primes-max", type=int, default=499)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true", help="list passing checks too")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
