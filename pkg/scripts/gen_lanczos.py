"""Regenerate the Lanczos coefficients embedded in ellhyp.special_functions.

Computes Lanczos' series coefficients p_k(g) in high precision with mpmath,
then rewrites A_g(z) = p_0/2 + sum_k p_k z(z-1)..(z-k+1)/((z+1)..(z+k))
in partial-fraction form c_0 + sum_j c_j/(z+j), which is what the gamma
routine evaluates.

    python scripts/gen_lanczos.py [g] [n]
"""

import sys

import mpmath as mp


def chebyshev_coeff(n, m):
    # coefficient of x**m in T_n(x)
    if n == 0:
        return 1 if m == 0 else 0
    if (n - m) % 2 or m > n:
        return 0
    k = (n - m) // 2
    return (-1) ** k * mp.mpf(n) / (n - k) * mp.binomial(n - k, k) * 2 ** (n - 2 * k - 1)


def lanczos_series(g, n):
    g = mp.mpf(g)
    out = []
    for k in range(n):
        acc = mp.mpf(0)
        for l in range(k + 1):
            acc += (
                chebyshev_coeff(2 * k, 2 * l)
                * mp.gamma(l + mp.mpf(1) / 2)
                * (l + g + mp.mpf(1) / 2) ** (-(l + mp.mpf(1) / 2))
                * mp.e ** (l + g + mp.mpf(1) / 2)
            )
        out.append(mp.sqrt(2) / mp.pi * acc)
    return out


def partial_fractions(p):
    n = len(p)
    c = [mp.mpf(0)] * n
    c[0] = p[0] / 2 + sum(p[1:])
    for k in range(1, n):
        for j in range(1, k + 1):
            # residue at z = -j of z(z-1)..(z-k+1) / ((z+1)..(z+k))
            num = (-1) ** k * mp.factorial(j + k - 1) / mp.factorial(j - 1)
            den = (-1) ** (j - 1) * mp.factorial(j - 1) * mp.factorial(k - j)
            c[j] += p[k] * num / den
    return c


def main(argv):
    g = int(argv[1]) if len(argv) > 1 else 7
    n = int(argv[2]) if len(argv) > 2 else 9
    mp.mp.dps = 60
    for coeff in partial_fractions(lanczos_series(g, n)):
        print(mp.nstr(coeff, 33) + ",")


if __name__ == "__main__":
    main(sys.argv)
