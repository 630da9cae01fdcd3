"""Pure-Python complex-double kernels (fallback for ``_ckernels``).

Every function here has a twin with the same signature in ``_ckernels.pyx``.
"""

import cmath

import numpy as np


def inverse_factorials(n):
    out = np.empty(n + 1)
    acc = 1.0
    out[0] = 1.0
    for k in range(1, n + 1):
        acc /= k
        out[k] = acc
    return out


def numbers_scaled(lam, N):
    """b_n = B_n(0; lam)/n! for n = 0..N by coefficient matching."""
    lam = complex(lam)
    inv = inverse_factorials(N + 2)
    b = [0j] * (N + 1)
    if lam == 1:
        for n in range(N + 1):
            acc = inv[0] if n == 0 else 0j
            for k in range(n):
                acc -= b[k] * inv[n + 1 - k]
            b[n] = acc
    else:
        denom = lam - 1.0
        for n in range(1, N + 1):
            acc = 1.0 + 0j if n == 1 else 0j
            s = 0j
            for k in range(n):
                s += b[k] * inv[n - k]
            b[n] = (acc - lam * s) / denom
    return np.array(b, dtype=np.complex128)


def direct_scaled(lam, x, N):
    """b_n(x) for n = 0..N straight from the generating function in powers of t."""
    lam = complex(lam)
    x = complex(x)
    inv = inverse_factorials(N + 2)
    b = [0j] * (N + 1)
    xpow = 1.0 + 0j  # x^n / n! for the current n
    if lam == 1:
        for n in range(N + 1):
            if n > 0:
                xpow = xpow * x / n
            acc = xpow
            for k in range(n):
                acc -= b[k] * inv[n + 1 - k]
            b[n] = acc
    else:
        denom = lam - 1.0
        for n in range(1, N + 1):
            if n > 1:
                xpow = xpow * x / (n - 1)
            s = 0j
            for k in range(n):
                s += b[k] * inv[n - k]
            b[n] = (xpow - lam * s) / denom
    return np.array(b, dtype=np.complex128)


def appell_shift(b, z):
    """c_n = sum_k b_{n-k} z^k / k! for every n < len(b)."""
    N = len(b) - 1
    z = complex(z)
    zp = [1.0 + 0j] * (N + 1)
    for k in range(1, N + 1):
        zp[k] = zp[k - 1] * z / k
    out = [0j] * (N + 1)
    for n in range(N + 1):
        acc = 0j
        for k in range(n + 1):
            acc += complex(b[n - k]) * zp[k]
        out[n] = acc
    return np.array(out, dtype=np.complex128)


def horner_many(coeffs, xs):
    """Evaluate sum_j coeffs[j] x^j at every x in ``xs``."""
    cs = [complex(c) for c in coeffs]
    out = np.empty(len(xs), dtype=np.complex128)
    for i, x in enumerate(xs):
        x = complex(x)
        acc = 0j
        for c in reversed(cs):
            acc = acc * x + c
        out[i] = acc
    return out


def pole_power_sums(poles, z, n_from, n_to):
    """S_n = sum_a e^{a z} / a^n for n in [n_from, n_to]."""
    z = complex(z)
    count = n_to - n_from + 1
    out = [0j] * count
    for a in poles:
        a = complex(a)
        inv_a = 1.0 / a
        term = cmath.exp(a * z) * inv_a ** n_from
        for i in range(count):
            out[i] += term
            term *= inv_a
    return np.array(out, dtype=np.complex128)
