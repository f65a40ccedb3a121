"""Real-analytic kernel: generalized hypergeometric series, the Euler
integral for 2F1, the gamma function, rational binomials and the AGM.

Parameters of a series are kept as exact :class:`fractions.Fraction`
values and only converted to floats inside the term recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

from scipy import integrate

Number = Union[int, float, str, Fraction]


class DomainError(ValueError):
    """An argument lies outside the domain where the function is defined."""


class DivergenceError(DomainError):
    """The requested series does not converge at the given argument."""


def as_fraction(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def _is_nonpositive_integer(x: Fraction | float) -> bool:
    if isinstance(x, Fraction):
        return x.denominator == 1 and x <= 0
    return x <= 0 and float(x).is_integer()


@dataclass(frozen=True)
class HypergeometricSpec:
    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    argument: float

    def __init__(self, upper: Sequence[Number], lower: Sequence[Number], argument: float):
        object.__setattr__(self, "upper", tuple(as_fraction(a) for a in upper))
        object.__setattr__(self, "lower", tuple(as_fraction(b) for b in lower))
        object.__setattr__(self, "argument", float(argument))
        for b in self.lower:
            if _is_nonpositive_integer(b):
                raise DomainError(f"lower parameter {b} is zero or a negative integer")

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def __str__(self) -> str:
        up = ",".join(str(a) for a in self.upper)
        lo = ",".join(str(b) for b in self.lower)
        return f"{self.p}F{self.q}({up}; {lo}; {self.argument!r})"


@dataclass(frozen=True)
class EvalOptions:
    relative_tolerance: float = 1e-12
    max_terms: int = 200_000

    def __post_init__(self):
        if not self.relative_tolerance > 0:
            raise ValueError("relative_tolerance must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


@dataclass(frozen=True)
class EvalResult:
    value: float
    terms_used: int
    converged: bool
    last_term_magnitude: float

    def __float__(self) -> float:
        return self.value


def _check_convergent(spec: HypergeometricSpec) -> None:
    z = spec.argument
    if not math.isfinite(z):
        raise DomainError("argument must be finite")
    # A nonpositive integer upper parameter makes the series a polynomial.
    if any(_is_nonpositive_integer(a) for a in spec.upper):
        return
    if spec.p > spec.q + 1 and z != 0:
        raise DivergenceError(f"{spec.p}F{spec.q} diverges for z != 0")
    if spec.p == spec.q + 1:
        if abs(z) > 1:
            raise DivergenceError(f"{spec.p}F{spec.q} diverges for |z| > 1")
        if abs(z) == 1 and not sum(spec.lower) - sum(spec.upper) > 0:
            raise DivergenceError("series diverges on |z| = 1 unless sum(lower) - sum(upper) > 0")


def pfq_terms(spec: HypergeometricSpec) -> Iterator[float]:
    """Yield the series terms t_0, t_1, ... from the term-ratio recurrence.

    The ratio prod(a + n) / (prod(b + n) (n + 1)) is formed exactly and
    rounded once, which keeps the drift of t_n to a few ulps per step.
    """
    z = spec.argument
    term = 1.0
    n = 0
    while True:
        yield term
        num = 1
        for a in spec.upper:
            num *= a + n
        den = Fraction(n + 1)
        for b in spec.lower:
            den *= b + n
        term *= float(num / den) * z
        n += 1


def pfq_term(spec: HypergeometricSpec, n: int) -> float:
    """The n-th term computed from scratch with exact Pochhammer products."""
    coeff = Fraction(1)
    for a in spec.upper:
        coeff *= pochhammer(a, n)
    for b in spec.lower:
        coeff /= pochhammer(b, n)
    coeff /= math.factorial(n)
    return float(coeff) * spec.argument ** n


def pochhammer(a: Number, n: int) -> Fraction:
    a = as_fraction(a)
    out = Fraction(1)
    for j in range(n):
        out *= a + j
    return out


def pfq(spec: HypergeometricSpec, opts: EvalOptions | None = None) -> EvalResult:
    """Sum a generalized hypergeometric series.

    Summation stops once two consecutive terms are both no larger than
    ``relative_tolerance * |partial sum|``. A single small term is not
    trusted because parameter cancellations can make one term tiny while
    the next is not. If ``max_terms`` is reached the partial sum is
    returned with ``converged=False``.
    """
    opts = opts or EvalOptions()
    _check_convergent(spec)
    tol = opts.relative_tolerance
    total = 0.0
    small_run = 0
    used = 0
    last = math.inf
    for term in pfq_terms(spec):
        total += term
        used += 1
        last = abs(term)
        if last <= tol * abs(total):
            small_run += 1
            if small_run >= 2:
                return EvalResult(total, used, True, last)
        else:
            small_run = 0
        if used >= opts.max_terms:
            break
    return EvalResult(total, used, False, last)


def hyp(upper: Sequence[Number], lower: Sequence[Number], z: float, rtol: float = 1e-12) -> float:
    """Convenience wrapper returning the value of pFq, raising if unconverged."""
    res = pfq(HypergeometricSpec(upper, lower, z), EvalOptions(relative_tolerance=rtol))
    if not res.converged:
        raise DivergenceError(f"series did not converge in {res.terms_used} terms")
    return res.value


def hyp2f1(a: Number, b: Number, c: Number, z: float, rtol: float = 1e-12) -> float:
    return hyp([a, b], [c], z, rtol)


def _sinc_ratio(u: float) -> float:
    # sin(u)/u, smooth through u = 0
    if abs(u) < 1e-8:
        return 1.0 - u * u / 6.0
    return math.sin(u) / u


def gauss_2f1_integral(a: float, b: float, c: float, z: float) -> float:
    """Evaluate 2F1(a, b; c; z) through its Euler integral over [0, pi/2].

    Valid for c > b > 0 and z < 1. The endpoint factors t**(2b-1) and
    (pi/2 - t)**(2c-2b-1) are handed to QUADPACK's algebraic-weight rule,
    so exponents in (-1, 0) are integrated without loss of accuracy.
    """
    a, b, c, z = float(a), float(b), float(c), float(z)
    if not b > 0 or not c > b:
        raise DomainError("integral representation requires c > b > 0")
    if not z < 1:
        raise DomainError("integral representation requires z < 1")
    alpha = 2 * b - 1
    beta = 2 * c - 2 * b - 1
    half_pi = math.pi / 2

    def smooth(t: float) -> float:
        s = math.sin(t)
        return (
            _sinc_ratio(t) ** alpha
            * _sinc_ratio(half_pi - t) ** beta
            * (1.0 - z * s * s) ** (-a)
        )

    value, _err = integrate.quad(
        smooth, 0.0, half_pi, weight="alg", wvar=(alpha, beta),
        epsabs=1e-13, epsrel=1e-13, limit=200,
    )
    return 2.0 * gamma_real(c) / (gamma_real(b) * gamma_real(c - b)) * value


# Lanczos approximation, g = 7, nine terms. Regenerate with
# scripts/gen_lanczos.py (Godfrey's matrix construction in mpmath).
LANCZOS_G = 7.0
LANCZOS_COEFFS = (
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7,
)
_SQRT_2PI = math.sqrt(2 * math.pi)


def _sinpi(x: float) -> float:
    # x - round(x) is exact, so accuracy holds next to the poles too
    n = round(x)
    s = math.sin(math.pi * (x - n))
    return -s if n % 2 else s


def gamma_real(x: Number) -> float:
    """Gamma function of a real argument.

    Lanczos on x >= 1/2, reflection below. Relative error stays under
    1e-12 on (0, 172).
    """
    if isinstance(x, (Fraction, str)):
        fx = as_fraction(x)
        if _is_nonpositive_integer(fx):
            raise DomainError(f"gamma has a pole at {fx}")
        x = float(fx)
    x = float(x)
    if _is_nonpositive_integer(x):
        raise DomainError(f"gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (_sinpi(x) * gamma_real(1.0 - x))
    xm = x - 1.0
    acc = LANCZOS_COEFFS[0]
    for i, coeff in enumerate(LANCZOS_COEFFS[1:], start=1):
        acc += coeff / (xm + i)
    t = xm + LANCZOS_G + 0.5
    # split the power so x up to ~171.6 does not overflow
    half = t ** ((xm + 0.5) / 2.0)
    return _SQRT_2PI * acc * (half * math.exp(-t)) * half


def rational_binomial(n: Number, k: Number) -> float:
    """Gamma(n+1) / (Gamma(k+1) Gamma(n-k+1)) for rational n, k."""
    n, k = as_fraction(n), as_fraction(k)
    for arg in (n + 1, k + 1, n - k + 1):
        if _is_nonpositive_integer(arg):
            raise DomainError(f"gamma pole at {arg} in binomial({n}, {k})")
    return gamma_real(n + 1) / (gamma_real(k + 1) * gamma_real(n - k + 1))


def agm(alpha: float, beta: float, tol: float = 1e-15) -> float:
    """Arithmetic-geometric mean of two positive reals."""
    if not (alpha > 0 and beta > 0):
        raise DomainError("agm requires positive arguments")
    if not tol > 0:
        raise DomainError("tol must be positive")
    a, b = float(alpha), float(beta)
    for _ in range(100):
        if abs(a - b) <= tol * a:
            break
        a, b = (a + b) / 2.0, math.sqrt(a * b)
    return (a + b) / 2.0
