"""Multiplicative characters of F_p and the character sums built on them.

A character is stored as an exponent k modulo p - 1 against a fixed
primitive root g, so chi(g**j) = exp(2 pi i k j / (p - 1)). Every
character vanishes at 0. The one exception is the degenerate "cubic
character" returned by :meth:`PrimeContext.cubic` when p = 2 (mod 3): it
is identically 1 on F_p, including at 0.

Character sums are computed in double precision and, where the exact
value is known to be rational, snapped back with :func:`snap_to_rational`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .elliptic_real import WeierstrassCurve
from .special_functions import DomainError, Number, as_fraction

# rows of the (k, x) exponent grid processed at once in vectorized Jacobi sums
_BLOCK = 256


class ContextMismatch(ValueError):
    pass


class SnapError(ValueError):
    """A character sum is too far from the rational it should equal."""


class SingularReduction(DomainError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError(f"no primitive root found mod {p}")


def odd_primes(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 3), hi + 1) if is_prime(n)]


class PrimeContext:
    """An odd prime with its smallest primitive root and discrete-log table.

    Build through :func:`make_prime_context`, which caches one context per p.
    """

    def __init__(self, p: int):
        if not (isinstance(p, (int, np.integer)) and p > 2 and is_prime(int(p))):
            raise DomainError(f"{p} is not an odd prime")
        p = int(p)
        self.p = p
        self.order = p - 1
        self.generator = primitive_root(p)
        powers = np.empty(p - 1, dtype=np.int64)
        acc = 1
        for j in range(p - 1):
            powers[j] = acc
            acc = acc * self.generator % p
        self.powers = powers
        dlog = np.full(p, -1, dtype=np.int64)
        dlog[powers] = np.arange(p - 1)
        self.dlog = dlog
        # quadratic character as exact integers, phi(0) = 0
        quad = np.zeros(p, dtype=np.int64)
        quad[1:] = np.where(dlog[1:] % 2 == 0, 1, -1)
        self.quad = quad
        j = np.arange(p - 1)
        self.roots = np.exp(2j * np.pi * j / (p - 1))
        # exact values at the real roots of unity
        self.roots[0] = 1.0
        self.roots[(p - 1) // 2] = -1.0
        if (p - 1) % 4 == 0:
            self.roots[(p - 1) // 4] = 1j
            self.roots[3 * (p - 1) // 4] = -1j
        self.additive = np.exp(2j * np.pi * np.arange(p) / p)
        # x in F_p minus {0, 1}: the support of every Jacobi sum
        xs = np.arange(2, p)
        self._jac_u = dlog[xs]
        self._jac_v = dlog[(1 - xs) % p]
        for arr in (self.powers, self.dlog, self.quad, self.roots, self.additive):
            arr.flags.writeable = False

    def __repr__(self) -> str:
        return f"PrimeContext(p={self.p}, generator={self.generator})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeContext) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeContext", self.p))

    def reduce(self, x: Number) -> int:
        """Image of an integer or p-integral rational in F_p."""
        return mod_p(x, self.p)

    def character(self, k: int) -> "Character":
        return Character(self, k % self.order)

    @property
    def trivial(self) -> "Character":
        return Character(self, 0)

    @property
    def quadratic(self) -> "Character":
        return Character(self, self.order // 2)

    def cubic(self) -> "Character":
        """The order-3 character with exponent (p-1)/3, or, for p = 2 (mod 3),
        the function identically 1 on F_p."""
        if self.order % 3 == 0:
            return Character(self, self.order // 3)
        return Character(self, 0, at_zero=1)

    def characters(self) -> Iterator["Character"]:
        for k in range(self.order):
            yield Character(self, k)

    def legendre(self, x: int) -> int:
        return int(self.quad[int(x) % self.p])


@lru_cache(maxsize=None)
def make_prime_context(p: int) -> PrimeContext:
    return PrimeContext(p)


def mod_p(x: Number, p: int) -> int:
    x = as_fraction(x)
    if x.denominator % p == 0:
        raise DomainError(f"{x} is not p-integral for p = {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


@dataclass(frozen=True)
class Character:
    context: PrimeContext
    exponent: int
    at_zero: int = 0

    def __post_init__(self):
        object.__setattr__(self, "exponent", int(self.exponent) % self.context.order)
        if self.at_zero not in (0, 1) or (self.at_zero and self.exponent):
            raise ValueError("only the trivial character may take the value 1 at 0")

    @property
    def p(self) -> int:
        return self.context.p

    @property
    def order(self) -> int:
        return self.context.order // math.gcd(self.exponent, self.context.order)

    @property
    def is_trivial(self) -> bool:
        return self.exponent == 0

    def __call__(self, x: int) -> complex:
        x = int(x) % self.p
        if x == 0:
            return complex(self.at_zero)
        ctx = self.context
        return complex(ctx.roots[self.exponent * int(ctx.dlog[x]) % ctx.order])

    def values(self) -> np.ndarray:
        """chi(x) for x = 0, 1, ..., p - 1."""
        ctx = self.context
        out = np.empty(self.p, dtype=complex)
        out[0] = self.at_zero
        out[1:] = ctx.roots[self.exponent * ctx.dlog[1:] % ctx.order]
        return out

    def __mul__(self, other: "Character") -> "Character":
        _same_context(self, other)
        k = (self.exponent + other.exponent) % self.context.order
        at_zero = self.at_zero * other.at_zero
        return Character(self.context, k, at_zero if k == 0 else 0)

    def conjugate(self) -> "Character":
        return Character(self.context, -self.exponent, self.at_zero)

    def __repr__(self) -> str:
        tag = ", at_zero=1" if self.at_zero else ""
        return f"Character(p={self.p}, k={self.exponent}{tag})"


def _same_context(*chars: Character) -> PrimeContext:
    ctx = chars[0].context
    for ch in chars[1:]:
        if ch.context != ctx:
            raise ContextMismatch(f"characters mod {ctx.p} and mod {ch.context.p} mixed")
    return ctx


def char_eval(ch: Character, x: int) -> complex:
    return ch(x)


def gauss_sum(ch: Character) -> complex:
    return complex(np.sum(ch.values() * ch.context.additive))


def jacobi_sum(chi: Character, lam: Character) -> complex:
    """J(chi, lam) = sum over x in F_p of chi(x) lam(1 - x)."""
    ctx = _same_context(chi, lam)
    x = np.arange(ctx.p)
    return complex(np.sum(chi.values() * lam.values()[(1 - x) % ctx.p]))


def ff_binomial(A: Character, B: Character) -> complex:
    """Greene's binomial coefficient B(-1)/p * J(A, conj(B))."""
    ctx = _same_context(A, B)
    return B(-1) / ctx.p * jacobi_sum(A, B.conjugate())


def _binomials_over_all_chi(ctx: PrimeContext, a: int, b: int) -> np.ndarray:
    """binom(A chi_k, B chi_k) for k = 0..p-2 where A, B have exponents a, b."""
    n = ctx.order
    out = np.empty(n, dtype=complex)
    u, v = ctx._jac_u, ctx._jac_v
    for start in range(0, n, _BLOCK):
        k = np.arange(start, min(start + _BLOCK, n))[:, None]
        expo = ((a + k) * u - (b + k) * v) % n
        jac = ctx.roots[expo].sum(axis=1)
        sign = np.where((b + k[:, 0]) % 2 == 0, 1.0, -1.0)  # (B chi_k)(-1)
        out[start:start + len(jac)] = sign * jac / ctx.p
    return out


@lru_cache(maxsize=256)
def _coefficients_cached(p: int, upper: tuple[int, ...], lower: tuple[int, ...]) -> np.ndarray:
    ctx = make_prime_context(p)
    coeffs = np.ones(ctx.order, dtype=complex)
    for a, b in zip(upper, (0,) + lower):
        coeffs *= _binomials_over_all_chi(ctx, a, b)
    coeffs.flags.writeable = False
    return coeffs


def gaussian_hyp_coefficients(A: Sequence[Character], B: Sequence[Character]) -> np.ndarray:
    """The character-indexed summands of Greene's series without chi(x):
    c_k = binom(A_0 chi_k, chi_k) prod_i binom(A_i chi_k, B_i chi_k)."""
    if len(A) != len(B) + 1:
        raise ValueError(f"need n+1 upper and n lower characters, got {len(A)} and {len(B)}")
    ctx = _same_context(*A, *B)
    if any(ch.at_zero for ch in (*A, *B)):
        raise ValueError("Gaussian hypergeometric parameters must vanish at 0")
    return _coefficients_cached(ctx.p, tuple(ch.exponent for ch in A), tuple(ch.exponent for ch in B))


def gaussian_hyp(A: Sequence[Character], B: Sequence[Character], x: int) -> complex:
    """Greene's Gaussian hypergeometric series n+1Fn(A; B | x) over F_p.

    Costs O(p^2) for the first call with a given parameter set; the
    character coefficients are cached, after which each x is O(p).
    """
    coeffs = gaussian_hyp_coefficients(A, B)
    ctx = A[0].context
    x = int(x) % ctx.p
    if x == 0:
        return 0j
    k = np.arange(ctx.order)
    chi_x = ctx.roots[k * ctx.dlog[x] % ctx.order]
    return complex(ctx.p / ctx.order * np.sum(coeffs * chi_x))


def gaussian_hyp_table(A: Sequence[Character], B: Sequence[Character]) -> np.ndarray:
    """Greene's series at every x in F_p, indexed by x (entry 0 is 0)."""
    coeffs = gaussian_hyp_coefficients(A, B)
    ctx = A[0].context
    # sum_k c_k exp(2 pi i k j / n) = n * ifft(c)[j]
    by_dlog = ctx.p * np.fft.ifft(coeffs)
    out = np.zeros(ctx.p, dtype=complex)
    out[1:] = by_dlog[ctx.dlog[1:]]
    return out


def phi_eps_params(ctx: PrimeContext, n: int = 2) -> tuple[list[Character], list[Character]]:
    """All upper parameters phi_p, all lower parameters epsilon_p."""
    return [ctx.quadratic] * (n + 1), [ctx.trivial] * n


def ff_3f2(ctx: PrimeContext, x: int) -> complex:
    """3F2(x)_p with every upper parameter phi_p and every lower one epsilon_p."""
    return gaussian_hyp(*phi_eps_params(ctx), x)


@dataclass(frozen=True)
class SnappedRational:
    value: Fraction
    residual: float

    def __str__(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"


def snap_to_rational(v: complex, denominator: int = 1, tol: float = 1e-6) -> SnappedRational:
    """Round a numerically computed sum to the nearest n/denominator.

    Raises :class:`SnapError` if the imaginary part or the rounding
    residual exceeds ``tol``, or if the residual exceeds a quarter of the
    grid spacing (in which case the nearest grid point is not trustworthy).
    """
    v = complex(v)
    if abs(v.imag) > tol:
        raise SnapError(f"imaginary part {v.imag:.3e} exceeds tolerance {tol:.1e}")
    num = round(v.real * denominator)
    value = Fraction(num, denominator)
    residual = abs(v.real - num / denominator)
    if residual > tol or residual > 0.25 / denominator:
        raise SnapError(f"{v.real!r} is {residual:.3e} away from {value}")
    return SnappedRational(value, residual)


def _cubic_discriminant(c3: int, c2: int, c1: int, c0: int) -> int:
    a, b, c, d = c3, c2, c1, c0
    return b * b * c * c - 4 * a * c ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def _cubic_values(ctx: PrimeContext, f: Sequence[int]) -> np.ndarray:
    if len(f) != 4:
        raise ValueError("cubic must be given as four coefficients, highest degree first")
    p = ctx.p
    c3, c2, c1, c0 = (int(c) % p for c in f)
    if c3 == 0:
        raise SingularReduction(f"leading coefficient vanishes mod {p}")
    if _cubic_discriminant(c3, c2, c1, c0) % p == 0:
        raise SingularReduction(f"cubic has a repeated root mod {p}")
    x = np.arange(p, dtype=np.int64)
    return (((c3 * x + c2) % p * x + c1) % p * x + c0) % p


def trace_frobenius(ctx: PrimeContext, f: Sequence[int]) -> int:
    """a_p of y^2 = f(x) as minus the quadratic-character sum of f over F_p."""
    return -int(ctx.quad[_cubic_values(ctx, f)].sum())


def count_points(ctx: PrimeContext, f: Sequence[int]) -> int:
    """Number of projective points on y^2 = f(x) over F_p by direct count."""
    fx = _cubic_values(ctx, f)
    y = np.arange(ctx.p, dtype=np.int64)
    squares = np.bincount(y * y % ctx.p, minlength=ctx.p)
    return int(squares[fx].sum()) + 1


def lambda_cubic(lam: Number, p: int) -> tuple[int, int, int, int]:
    """(x - 1)(x^2 + lambda) = x^3 - x^2 + lambda x - lambda reduced mod p."""
    l = mod_p(lam, p)
    return (1, p - 1, l, (-l) % p)


def curve_cubic(curve: WeierstrassCurve, p: int) -> tuple[int, int, int, int]:
    """Cubic f with the curve isomorphic to y^2 = f(x) over F_p, p odd.

    Completing the square gives f = x^3 + (b2/4) x^2 + (b4/2) x + b6/4.
    """
    if p == 2:
        raise DomainError("completing the square needs p odd")
    return (1, mod_p(curve.b2 / 4, p), mod_p(curve.b4 / 2, p), mod_p(curve.b6 / 4, p))


def curve_trace(curve: WeierstrassCurve, p: int) -> int:
    if not good_reduction(curve, p):
        raise SingularReduction(f"{curve} has bad reduction at {p}")
    return trace_frobenius(make_prime_context(p), curve_cubic(curve, p))


def lambda_trace(lam: Number, p: int) -> int:
    """a_p(E_lambda)."""
    return trace_frobenius(make_prime_context(p), lambda_cubic(lam, p))


def jacobsthal_phi_cubic(ctx: PrimeContext) -> int:
    """sum over x in F_p of phi_p(x^3 + 1)."""
    if ctx.p <= 3:
        raise DomainError("needs p > 3")
    x = np.arange(ctx.p, dtype=np.int64)
    return int(ctx.quad[(x * x % ctx.p * x + 1) % ctx.p].sum())


def represent_a2_3b2(p: int) -> tuple[int, int]:
    """(a, b) with p = a^2 + 3 b^2, b >= 0 and a = -1 (mod 3)."""
    if p % 3 != 1:
        raise DomainError(f"{p} is not 1 mod 3")
    found = []
    for b in range(math.isqrt(p // 3) + 1):
        rest = p - 3 * b * b
        a = math.isqrt(rest)
        if a * a == rest:
            found.append((a if a % 3 == 2 else -a, b))
    if len(found) != 1:
        raise AssertionError(f"expected a unique representation of {p}, found {found}")
    return found[0]


def good_reduction(curve: WeierstrassCurve, p: int) -> bool:
    delta = curve.discriminant
    if delta == 0:
        raise DomainError("singular curve")
    if any(a.denominator % p == 0 for a in curve.coefficients):
        raise DomainError(f"coefficients of {curve} are not {p}-integral")
    return delta.numerator % p != 0


def ono_condition(lam: Number, p: int) -> bool:
    """ord_p(lambda (lambda + 1)) = 0 for lambda = r/s in lowest terms."""
    lam = as_fraction(lam)
    if lam == 0 or lam == -1:
        raise DomainError("lambda must avoid 0 and -1")
    r, s = lam.numerator, lam.denominator
    return r % p != 0 and s % p != 0 and (r + s) % p != 0
