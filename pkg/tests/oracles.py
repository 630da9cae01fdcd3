"""Reference values computed independently of the package internals.

Everything here uses the global ``mpmath.mp`` context (set locally through
``workdps``) and none of the package's recurrences.
"""

from __future__ import annotations

import functools
import math

import mpmath


def complex_log(lam):
    """Principal log, with the negative axis mapped to argument +pi."""
    lam = mpmath.mpc(lam)
    if lam.imag == 0 and lam.real < 0:
        return mpmath.mpc(mpmath.log(-lam.real), mpmath.pi)
    return mpmath.log(lam)


def contour_scaled(lam, x, n, dps=60, points=None):
    """``B_n(x; lambda)/n!`` as a Cauchy integral of the generating function.

    The trapezoid rule on a circle inside the nearest pole converges
    geometrically, so this needs no recurrence at all.
    """
    with mpmath.workdps(dps):
        lam = mpmath.mpc(lam)
        x = mpmath.mpc(x)
        L = complex_log(lam)
        if lam == 1:
            nearest = 2 * mpmath.pi
        else:
            nearest = min(abs(2j * mpmath.pi * k - L) for k in range(-2, 3))
        r = nearest / 2
        M = points or max(64, 2 * n + int(dps * 3.33) + 16)
        total = mpmath.mpc(0)
        for j in range(M):
            t = r * mpmath.expjpi(mpmath.mpf(2 * j) / M)
            g = t * mpmath.exp(x * t) / (lam * mpmath.exp(t) - 1)
            total += g / t**n
        return +(total / M)


def bernoulli_scaled(n, x, dps=60):
    """Classical ``B_n(x)/n!`` through mpmath's own Bernoulli polynomials."""
    with mpmath.workdps(dps):
        return mpmath.bernpoly(n, x) / mpmath.factorial(n)


def euler_classical(n, x, dps=60):
    with mpmath.workdps(dps):
        return mpmath.eulerpoly(n, x)


def euler_by_recurrence(lam, x, N, dps=60):
    """``E_0..E_N`` from ``lambda sum_k C(n,k) E_k + E_n = 2 x^n``."""
    with mpmath.workdps(dps):
        lam = mpmath.mpc(lam)
        x = mpmath.mpc(x)
        E = []
        for n in range(N + 1):
            s = mpmath.fsum(mpmath.binomial(n, k) * E[k] for k in range(n))
            E.append((2 * x**n - lam * s) / (lam + 1))
        return E


def poles_brute_force(lam, N, dps=40):
    """Indices of the ``N`` smallest poles, found by sorting a large window."""
    with mpmath.workdps(dps):
        L = complex_log(lam)
        window = range(-(N + 5), N + 6)
        ks = [k for k in window if not (mpmath.mpc(lam) == 1 and k == 0)]
        mods = {k: abs(2j * mpmath.pi * k - L) for k in ks}

        def cmp(a, b):
            d = mods[a] - mods[b]
            if abs(d) < mpmath.mpf(10) ** (-(dps - 5)):
                return 0
            return -1 if d < 0 else 1

        ordered = sorted(ks, key=functools.cmp_to_key(cmp))
        return ordered[:N], mods


def fourier_quadrature(lam, n, k, dps=30):
    """``int_0^1 lambda^x b_n(x) e^{-2 pi i k x} dx`` with mpmath's tanh-sinh rule."""
    with mpmath.workdps(dps):
        L = complex_log(lam)
        coeffs = [contour_scaled(lam, 0, j, dps=dps + 10) for j in range(n + 1)]

        def b(x):
            return mpmath.fsum(coeffs[n - j] * x**j / mpmath.factorial(j) for j in range(n + 1))

        return mpmath.quad(lambda x: mpmath.exp(x * L - 2j * mpmath.pi * k * x) * b(x), [0, 1])


def series_sum(f, start, stop):
    with mpmath.workdps(40):
        return mpmath.fsum(f(k) for k in range(start, stop))


def ulps(bits):
    return math.ldexp(1.0, -bits)
