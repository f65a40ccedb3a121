"""Parameterized checks of the period / trace-of-Frobenius identities.

Each suite returns a :class:`SuiteReport`. Real-analytic identities are
compared by relative residual; finite-field identities are snapped to
exact rationals and compared for equality, so any numerical corruption
of a character sum shows up as a hard failure rather than a small error.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from . import finite_field_characters as ff
from .elliptic_real import X3_PLUS_1, MAX_SERIES_LAMBDA, quadratic_twist, real_period_lambda
from .special_functions import (
    DomainError,
    Number,
    as_fraction,
    gamma_real,
    hyp,
    hyp2f1,
    rational_binomial,
)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

LAMBDA_GRID = tuple(Fraction(x) for x in ("1/10", "1/4", "1/3", "1/2", "1", "2", "3", "5", "9"))
ONO_LAMBDAS = tuple(Fraction(x) for x in ("1/3", "1/2", "2", "3"))
TWIST_PARAMETERS = (-6, -2, 5)
TRANSFORM_GRID = tuple(i / 20 for i in range(19))  # 0, 0.05, ..., 0.9
# the Pfaff image z/(z-1) must stay inside the disc where its series is summed
PFAFF_MAX_IMAGE = 0.9

SERIES_RTOL = 1e-15


@dataclass
class CheckResult:
    name: str
    parameters: dict[str, Any]
    lhs: Any
    rhs: Any
    residual: float
    passed: bool
    elapsed: float = 0.0
    tolerance: float | None = None  # None for exact rational comparisons
    skipped: bool = False
    details: dict[str, Any] = field(default_factory=dict)


@dataclass
class SuiteReport:
    suite: str
    results: list[CheckResult] = field(default_factory=list)
    seed: int | None = None

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.passed and not r.skipped)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if not r.passed and not r.skipped)

    @property
    def skipped(self) -> int:
        return sum(1 for r in self.results if r.skipped)

    @property
    def counts(self) -> tuple[int, int]:
        return self.passed, self.failed

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _relative(lhs: float, rhs: float) -> float:
    scale = max(abs(lhs), abs(rhs))
    return abs(lhs - rhs) / scale if scale > 0 else 0.0


def _real_check(name, params, compute: Callable[[], tuple[float, float]], tol: float) -> CheckResult:
    start = time.perf_counter()
    lhs, rhs = compute()
    residual = _relative(lhs, rhs)
    return CheckResult(name, params, lhs, rhs, residual, residual <= tol,
                       time.perf_counter() - start, tol)


def _exact_check(name, params, lhs: Fraction, rhs: Fraction, start: float, details=None) -> CheckResult:
    return CheckResult(name, params, lhs, rhs, abs(float(lhs - rhs)), lhs == rhs,
                       time.perf_counter() - start, None, details=details or {})


def _skip(name, params, reason: str) -> CheckResult:
    return CheckResult(name, params, None, None, 0.0, True, skipped=True, details={"reason": reason})


def _snap_failure(name, params, start, raw, exc) -> CheckResult:
    return CheckResult(name, params, None, None, math.inf, False, time.perf_counter() - start,
                       details={"raw": raw, "snap_error": str(exc)})


def _complex_repr(v: complex) -> list[float]:
    return [v.real, v.imag]


def verify_theorem_period(lambdas: Iterable[Number] = LAMBDA_GRID, tol: float = 1e-8) -> SuiteReport:
    """3F2(1/2,1/2,1/2; 1,1; lambda/(1+lambda)) = sqrt(1+lambda) Omega^2 / pi^2."""
    lambdas = [as_fraction(l) for l in lambdas]
    for lam in lambdas:
        if not 0 < lam <= MAX_SERIES_LAMBDA:
            raise DomainError(f"lambda = {lam} outside (0, {MAX_SERIES_LAMBDA}]")
    report = SuiteReport("period")
    for lam in lambdas:
        def compute(lam=lam):
            lhs = hyp([HALF] * 3, [1, 1], float(lam / (1 + lam)), SERIES_RTOL)
            omega = real_period_lambda(lam).omega
            return lhs, math.sqrt(1 + float(lam)) * omega ** 2 / math.pi ** 2
        report.results.append(_real_check("theorem_period", {"lambda": lam}, compute, tol))
    return report


def verify_corollary(tol: float = 1e-9) -> SuiteReport:
    report = SuiteReport("corollary")
    omega = lambda: real_period_lambda(Fraction(1, 3)).omega
    report.results.append(_real_check(
        "corollary_binomial", {"lambda": Fraction(1, 3)},
        lambda: (2 * math.sqrt(2) / (3 * math.pi) * omega(), rational_binomial(Fraction(1, 3), HALF)),
        tol))
    report.results.append(_real_check(
        "corollary_gamma", {"lambda": Fraction(1, 3)},
        lambda: (math.sqrt(2) * omega(),
                 gamma_real(Fraction(1, 3)) * gamma_real(HALF) / gamma_real(Fraction(5, 6))),
        tol))
    return report


def _snap_tol(p: int) -> float:
    return 1e-6 * p


def verify_ono(lam: Number, primes: Iterable[int]) -> SuiteReport:
    """Ono's 3F2 evaluation and its image under 3F2(1/t) = phi(-t) 3F2(t)."""
    lam = as_fraction(lam)
    report = SuiteReport(f"ono[{lam}]")
    for p in primes:
        params = {"lambda": lam, "p": p}
        if p == 2 or not ff.ono_condition(lam, p):
            report.results.append(_skip("ono", params, "ord_p(lambda(lambda+1)) != 0 or p = 2"))
            continue
        ctx = ff.make_prime_context(p)
        start = time.perf_counter()
        a_p = ff.lambda_trace(lam, p)
        core = Fraction(a_p * a_p - p, p * p)
        table = ff.gaussian_hyp_table(*ff.phi_eps_params(ctx))
        variants = (
            ("ono", (1 + lam) / lam, ctx.legendre(ctx.reduce(-lam))),
            ("ono_transformed", lam / (1 + lam), ctx.legendre(ctx.reduce(1 + lam))),
        )
        for name, arg, sign in variants:
            x = ctx.reduce(arg)
            p_params = {**params, "x": x, "a_p": a_p}
            try:
                snapped = ff.snap_to_rational(table[x], p * p, _snap_tol(p))
            except ff.SnapError as exc:
                report.results.append(_snap_failure(name, p_params, start, _complex_repr(table[x]), exc))
                continue
            report.results.append(_exact_check(
                name, p_params, snapped.value, sign * core, start,
                {"raw": _complex_repr(table[x]), "snap_residual": snapped.residual}))
    return report


def verify_greene_inversion(p: int, tol: float | None = None) -> SuiteReport:
    """3F2(1/t)_p = phi_p(-t) 3F2(t)_p for every t in F_p^*."""
    ctx = ff.make_prime_context(p)
    tol = _snap_tol(p) if tol is None else tol
    table = ff.gaussian_hyp_table(*ff.phi_eps_params(ctx))
    report = SuiteReport(f"greene[{p}]")
    for t in range(1, p):
        start = time.perf_counter()
        inv = pow(t, -1, p)
        params = {"p": p, "t": t}
        try:
            lhs = ff.snap_to_rational(table[inv], p * p, tol)
            base = ff.snap_to_rational(table[t], p * p, tol)
        except ff.SnapError as exc:
            raw = {"lhs": _complex_repr(table[inv]), "base": _complex_repr(table[t])}
            report.results.append(_snap_failure("greene_inversion", params, start, raw, exc))
            continue
        sign = ctx.legendre(-t)
        report.results.append(_exact_check(
            "greene_inversion", params, lhs.value, sign * base.value, start,
            {"raw_lhs": _complex_repr(table[inv]), "raw_base": _complex_repr(table[t]),
             "snap_residuals": [lhs.residual, base.residual]}))
    return report


def verify_theorem_binomial(primes: Iterable[int]) -> SuiteReport:
    """Both parts of the E_{1/3} trace / cubic-character identity."""
    report = SuiteReport("binomial")
    lam = Fraction(1, 3)
    for p in primes:
        if p <= 3:
            raise DomainError("the identity is stated for p > 3")
        ctx = ff.make_prime_context(p)
        start = time.perf_counter()
        chi3, phi = ctx.cubic(), ctx.quadratic
        branch = "cubic" if p % 3 == 1 else "degenerate"
        a_p = ff.lambda_trace(lam, p)
        params = {"p": p, "a_p": a_p, "chi3_branch": branch}
        tol = _snap_tol(p)

        raw1 = 2 * ff.ff_binomial(chi3, phi).real
        lhs1 = Fraction(-ctx.legendre(-2) * a_p, p)
        try:
            rhs1 = ff.snap_to_rational(raw1, p, tol)
            report.results.append(_exact_check(
                "binomial_part1", params, lhs1, rhs1.value, start,
                {"raw": raw1, "snap_residual": rhs1.residual}))
        except ff.SnapError as exc:
            report.results.append(_snap_failure("binomial_part1", params, start, raw1, exc))

        start = time.perf_counter()
        ratio = ff.gauss_sum(chi3) * ff.gauss_sum(phi) / ff.gauss_sum(chi3 * phi)
        raw2 = 2 * ratio.real
        lhs2 = Fraction(-ctx.legendre(2) * a_p)
        try:
            rhs2 = ff.snap_to_rational(raw2, 1, tol)
            report.results.append(_exact_check(
                "binomial_part2", params, lhs2, rhs2.value, start,
                {"raw": raw2, "snap_residual": rhs2.residual}))
        except ff.SnapError as exc:
            report.results.append(_snap_failure("binomial_part2", params, start, raw2, exc))
    return report


def verify_jacobsthal(primes: Iterable[int]) -> SuiteReport:
    """sum phi(x^3 + 1) is 2a for p = a^2 + 3b^2, a = -1 (mod 3), else 0."""
    report = SuiteReport("jacobsthal")
    for p in primes:
        start = time.perf_counter()
        value = ff.jacobsthal_phi_cubic(ff.make_prime_context(p))
        params: dict[str, Any] = {"p": p}
        if p % 3 == 1:
            a, b = ff.represent_a2_3b2(p)
            params.update(a=a, b=b)
            expected = 2 * a
        else:
            expected = 0
        report.results.append(_exact_check("jacobsthal", params, Fraction(value), Fraction(expected), start))
    return report


def _transform_checks(rng: random.Random, zs: Sequence[float], n_random: int):
    """Yield (name, params, compute) for each transformation instance."""

    def quadratic(a, b, z):
        c = a + b + HALF
        w = 0.5 - 0.5 * math.sqrt(1 - z)
        return (lambda: (hyp2f1(a, b, c, z, SERIES_RTOL), hyp2f1(2 * a, 2 * b, c, w, SERIES_RTOL)))

    def clausen(a, b, z):
        # reduces to the 3F2(1/2,1/2,1/2; 1,1) = 2F1(1/4,1/4; 1)^2 case at a = b = 1/4
        return (lambda: (hyp([2 * a, 2 * b, a + b], [2 * a + 2 * b, a + b + HALF], z, SERIES_RTOL),
                         hyp2f1(a, b, a + b + HALF, z, SERIES_RTOL) ** 2))

    def pfaff(a, b, c, z):
        return (lambda: (hyp2f1(a, b, c, z, SERIES_RTOL),
                         (1 - z) ** (-float(a)) * hyp2f1(a, c - b, c, z / (z - 1), SERIES_RTOL)))

    def pfaff_ok(z):
        return abs(z / (z - 1)) <= PFAFF_MAX_IMAGE

    for z in zs:
        yield "transform_quadratic", {"a": QUARTER, "b": QUARTER, "z": z}, quadratic(QUARTER, QUARTER, z)
        yield "transform_square", {"z": z}, clausen(QUARTER, QUARTER, z)
        params = {"a": QUARTER, "b": QUARTER, "c": 1, "z": z}
        yield "transform_pfaff", params, (pfaff(QUARTER, QUARTER, Fraction(1), z) if pfaff_ok(z) else None)

    def rand_param(lo, hi):
        return Fraction(rng.uniform(lo, hi)).limit_denominator(1000)

    for _ in range(n_random):
        a, b = rand_param(0.05, 1.5), rand_param(0.05, 1.5)
        z = rng.uniform(0, 0.9)
        yield "transform_quadratic", {"a": a, "b": b, "z": z}, quadratic(a, b, z)
        a, b = rand_param(0.05, 1.0), rand_param(0.05, 1.0)
        z = rng.uniform(0, 0.9)
        yield "transform_square", {"a": a, "b": b, "z": z}, clausen(a, b, z)
        a, b, c = rand_param(0.05, 1.5), rand_param(0.05, 1.5), rand_param(0.2, 2.0)
        z = rng.uniform(0, PFAFF_MAX_IMAGE / (1 + PFAFF_MAX_IMAGE))
        yield "transform_pfaff", {"a": a, "b": b, "c": c, "z": z}, pfaff(a, b, c, z)


def verify_transformations(zs: Sequence[float] = TRANSFORM_GRID, tol: float = 1e-9,
                           seed: int = 0, n_random: int = 20) -> SuiteReport:
    """The quadratic, Clausen-square and Pfaff transformations of 2F1."""
    for z in zs:
        if not 0 <= z <= 0.9:
            raise DomainError(f"z = {z} outside [0, 0.9]")
    rng = random.Random(seed)
    report = SuiteReport("transformations", seed=seed)
    for name, params, compute in _transform_checks(rng, zs, n_random):
        if compute is None:
            report.results.append(_skip(name, params, f"|z/(z-1)| > {PFAFF_MAX_IMAGE}"))
        else:
            report.results.append(_real_check(name, params, compute, tol))
    return report


def verify_twist_relation(primes: Iterable[int], twists: Sequence[int] = TWIST_PARAMETERS) -> SuiteReport:
    """a_p(E) = phi_p(t) a_p(E_t) for E : y^2 = x^3 + 1."""
    report = SuiteReport("twist")
    base = X3_PLUS_1
    for t in twists:
        twisted = quadratic_twist(base, t)
        for p in primes:
            params = {"t": t, "p": p}
            if math.gcd(p, 6) != 1:
                report.results.append(_skip("twist", params, "gcd(p, 6) != 1"))
                continue
            if not (ff.good_reduction(base, p) and ff.good_reduction(twisted, p)):
                report.results.append(_skip("twist", params, "bad reduction"))
                continue
            start = time.perf_counter()
            ctx = ff.make_prime_context(p)
            a_base = ff.curve_trace(base, p)
            a_twist = ff.curve_trace(twisted, p)
            report.results.append(_exact_check(
                "twist", params, Fraction(a_base), Fraction(ctx.legendre(t) * a_twist), start,
                {"a_p(E)": a_base, "a_p(E_t)": a_twist}))
    return report


@dataclass
class HarnessConfig:
    primes_max: int = 499
    primes_min: int = 5
    lambdas: Sequence[Number] = LAMBDA_GRID
    ono_lambdas: Sequence[Number] = ONO_LAMBDAS
    seed: int = 0
    period_tol: float = 1e-8
    corollary_tol: float = 1e-9
    transform_tol: float = 1e-9

    @property
    def primes(self) -> list[int]:
        return ff.odd_primes(self.primes_min, self.primes_max)


SUITES = ("period", "corollary", "ono", "greene", "binomial", "jacobsthal", "transformations", "twist")


def _merge(name: str, reports: Iterable[SuiteReport]) -> SuiteReport:
    out = SuiteReport(name)
    for r in reports:
        out.results.extend(r.results)
    return out


def run_suite(name: str, config: HarnessConfig | None = None) -> SuiteReport:
    config = config or HarnessConfig()
    primes = config.primes
    if name == "period":
        return verify_theorem_period(config.lambdas, config.period_tol)
    if name == "corollary":
        return verify_corollary(config.corollary_tol)
    if name == "ono":
        return _merge("ono", (verify_ono(l, primes) for l in config.ono_lambdas))
    if name == "greene":
        return _merge("greene", (verify_greene_inversion(p) for p in primes))
    if name == "binomial":
        return verify_theorem_binomial([p for p in primes if p > 3])
    if name == "jacobsthal":
        return verify_jacobsthal([p for p in primes if p > 3])
    if name == "transformations":
        return verify_transformations(tol=config.transform_tol, seed=config.seed)
    if name == "twist":
        return verify_twist_relation(primes)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


def run_all(config: HarnessConfig | None = None) -> list[SuiteReport]:
    config = config or HarnessConfig()
    return [run_suite(name, config) for name in SUITES]
