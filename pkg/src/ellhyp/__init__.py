"""Classical and finite-field hypergeometric series for the curves
y^2 = (x - 1)(x^2 + lambda): real periods via the AGM and 2F1, traces of
Frobenius via Gaussian hypergeometric series, Gauss and Jacobi sums."""

from .elliptic_real import (
    PeriodResult,
    WeierstrassCurve,
    quadratic_twist,
    real_period_2f1,
    real_period_lambda,
    to_lambda_weierstrass,
)
from .finite_field_characters import (
    Character,
    PrimeContext,
    count_points,
    ff_binomial,
    gauss_sum,
    gaussian_hyp,
    jacobi_sum,
    make_prime_context,
    trace_frobenius,
)
from .special_functions import (
    DivergenceError,
    DomainError,
    EvalOptions,
    EvalResult,
    HypergeometricSpec,
    agm,
    gamma_real,
    gauss_2f1_integral,
    pfq,
    rational_binomial,
)

__version__ = "0.1.0"
