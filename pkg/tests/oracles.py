"""Extended-precision reference evaluations used as independent test oracles.

Everything here is brute force on purpose: plain partial sums, direct
products and adaptive quadrature in mpmath, sharing no code with the
implementations under test.
"""

from mpmath import mp, mpf

DPS = 50


def mp_gamma(x):
    with mp.workdps(DPS):
        return mp.gamma(x)


def mp_k_gamma(g, k):
    with mp.workdps(DPS):
        g, k = mpf(g), mpf(k)
        return k ** (g / k - 1) * mp.gamma(g / k)


def mp_ml2_partial(alpha, beta, x, terms):
    """Partial sum of sum_n x**n / Gamma(alpha n + beta) over n < terms."""
    with mp.workdps(DPS):
        alpha, beta, x = mpf(alpha), mpf(beta), mpf(x)
        total = mpf(0)
        for n in range(terms):
            a = alpha * n + beta
            if a <= 0 and a == mp.floor(a):
                continue
            total += x**n / mp.gamma(a)
        return total


def mp_ml2(alpha, beta, x, terms=400):
    return mp_ml2_partial(alpha, beta, x, terms)


def mp_kml(k, alpha, beta, gamma, q, z, terms=300):
    """Brute-force sum of the generalized k-Mittag-Leffler series."""
    with mp.workdps(DPS):
        k, alpha, beta = mpf(k), mpf(alpha), mpf(beta)
        gamma, q, z = mpf(gamma), mpf(q), mpf(z)
        c0 = gamma / k
        total = mpf(0)
        for n in range(terms):
            num = k ** (n * q) * mp.gamma(c0 + n * q) / mp.gamma(c0)
            a = (alpha * n + beta) / k
            den = k ** (a - 1) * mp.gamma(a) * mp.factorial(n)
            total += num * z**n / den
        return total


def mp_rl_power(mu, nu, t):
    """Fractional integral of s**mu: Gamma(mu+1)/Gamma(mu+nu+1) * t**(mu+nu)."""
    with mp.workdps(DPS):
        mu, nu, t = mpf(mu), mpf(nu), mpf(t)
        return mp.gamma(mu + 1) / mp.gamma(mu + nu + 1) * t ** (mu + nu)


def mp_product_trapezoid_reference(values, h, nu, i):
    """Quadrature reference for the product-trapezoidal integral at node i:
    integral of (t_i - s)**(nu-1) times the piecewise-linear interpolant of
    ``values``, evaluated element by element with adaptive quadrature."""
    with mp.workdps(30):
        h, nu = mpf(h), mpf(nu)
        t_i = i * h
        total = mpf(0)
        for j in range(i):
            lo, hi = j * h, (j + 1) * h
            fj, fj1 = mpf(values[j]), mpf(values[j + 1])

            def integrand(s, lo=lo, hi=hi, fj=fj, fj1=fj1):
                lin = (fj * (hi - s) + fj1 * (s - lo)) / h
                return (t_i - s) ** (nu - 1) * lin

            total += mp.quad(integrand, [lo, hi])
        return total / mp.gamma(nu)


def mp_stated_solution(theorem, coeff, d, a, nu, n0, t, terms=60,
                       inner_terms=200):
    """Direct evaluation of the unweighted solution series with an explicit
    coefficient function ``coeff(n)`` returning an mpf.

    theorem 1: n0 * sum coeff(n) t**n        E_{nu, n+1}(-(d t)**nu)
    theorem 2/3: n0 * sum coeff(n) w**n      E_{nu, nu n+1}(-(a t)**nu),
    with w = (d t)**nu.
    """
    with mp.workdps(DPS):
        d, a, nu, n0, t = mpf(d), mpf(a), mpf(nu), mpf(n0), mpf(t)
        total = mpf(0)
        for n in range(terms):
            if theorem == 1:
                x = t**n
                inner = mp_ml2_partial(nu, n + 1, -((d * t) ** nu), inner_terms)
            else:
                x = ((d * t) ** nu) ** n
                inner = mp_ml2_partial(nu, nu * n + 1, -((a * t) ** nu),
                                       inner_terms)
            total += coeff(n) * x * inner
        return n0 * total
