"""Elliptic curves over Q and R: Weierstrass invariants, quadratic twists
and the real period of E_lambda : y^2 = (x - 1)(x^2 + lambda)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .special_functions import DomainError, Number, agm, as_fraction, hyp2f1

# E_lambda is solved for lambda/(1+lambda) <= 0.9 by direct summation.
MAX_SERIES_LAMBDA = Fraction(9)


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with rational a_i."""

    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a6: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    @classmethod
    def from_coefficients(cls, coeffs) -> "WeierstrassCurve":
        coeffs = list(coeffs)
        if len(coeffs) != 5:
            raise ValueError("expected five coefficients a1, a2, a3, a4, a6")
        return cls(*coeffs)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self) -> Fraction:
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self) -> Fraction:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> Fraction:
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self) -> Fraction:
        a1, a2, a3, a4, a6 = self.coefficients
        return a1 ** 2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 ** 2 - a4 ** 2

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6

    @property
    def is_short(self) -> bool:
        """True when the curve has the form y^2 = x^3 + a x^2 + b x + c."""
        return self.a1 == 0 and self.a3 == 0

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.coefficients) + "]"


def discriminant(curve: WeierstrassCurve) -> Fraction:
    return curve.discriminant


def _check_lambda(lam: Fraction) -> None:
    if lam == 0 or lam == -1:
        raise DomainError("lambda must avoid 0 and -1")


def to_lambda_weierstrass(lam: Number) -> WeierstrassCurve:
    """Expand E_lambda to y^2 = x^3 - x^2 + lambda x - lambda."""
    lam = as_fraction(lam)
    _check_lambda(lam)
    return WeierstrassCurve(0, -1, 0, lam, -lam)


def _is_squarefree(t: int) -> bool:
    t = abs(t)
    d = 2
    while d * d <= t:
        if t % (d * d) == 0:
            return False
        d += 1
    return True


def quadratic_twist(curve: WeierstrassCurve, t: int) -> WeierstrassCurve:
    """The t-twist y^2 = x^3 + a t x^2 + b t^2 x + c t^3."""
    if not curve.is_short:
        raise DomainError("twist needs a curve with a1 = a3 = 0")
    if int(t) != t or t == 0 or not _is_squarefree(int(t)):
        raise DomainError(f"twist parameter {t} is not a nonzero square-free integer")
    t = int(t)
    return WeierstrassCurve(0, curve.a2 * t, 0, curve.a4 * t ** 2, curve.a6 * t ** 3)


# E_{1/3} and the model y^2 = x^3 - 6^3 reached by (x, y) -> (x/9 + 1/3, y/27).
E_ONE_THIRD = to_lambda_weierstrass(Fraction(1, 3))
E_ONE_THIRD_SHORT = WeierstrassCurve(0, 0, 0, 0, -216)
X3_PLUS_1 = WeierstrassCurve(0, 0, 0, 0, 1)


def cubic_real_roots(lam: Number) -> int:
    """Number of real roots of (x - 1)(x^2 + lambda), read off the sign of
    the discriminant of E_lambda (negative: one root, positive: three)."""
    delta = to_lambda_weierstrass(lam).discriminant
    if delta == 0:
        raise DomainError("singular cubic")
    return 1 if delta < 0 else 3


@dataclass(frozen=True)
class PeriodResult:
    omega: float
    method: str  # "agm" or "hypergeometric"

    def __float__(self) -> float:
        return self.omega


def _positive_lambda(lam) -> float:
    lam = float(lam)
    if not lam > 0:
        raise DomainError("the real-period formula needs lambda > 0")
    return lam


def real_period_lambda(lam: Number, tol: float = 1e-15) -> PeriodResult:
    """Real period of E_lambda from Cohen's AGM formula.

    Omega = 2 pi / AGM(2 sqrt(b), sqrt(2b + a)) with a = 2, b = sqrt(1 + lambda).
    The rescaling y -> y/2 onto y^2 = 4(x - 1)(x^2 + lambda) is already
    absorbed, so the result is the period of E_lambda itself.
    """
    lam = _positive_lambda(lam)
    a = 2.0
    b = math.sqrt(1.0 + lam)
    return PeriodResult(2.0 * math.pi / agm(2.0 * math.sqrt(b), math.sqrt(2.0 * b + a), tol), "agm")


def real_period_2f1(lam: Number, rtol: float = 1e-14) -> PeriodResult:
    """Real period of E_lambda as (1 + lambda)^(-1/4) pi 2F1(1/4, 1/4; 1; lambda/(1 + lambda))."""
    lam = _positive_lambda(lam)
    if lam > MAX_SERIES_LAMBDA:
        raise DomainError(f"lambda > {MAX_SERIES_LAMBDA} is beyond the direct-summation range")
    z = lam / (1.0 + lam)
    value = (1.0 + lam) ** -0.25 * math.pi * hyp2f1(Fraction(1, 4), Fraction(1, 4), 1, z, rtol)
    return PeriodResult(value, "hypergeometric")
