"""Ground-truth values of the scaled polynomials ``b_n(z) = B_n(z; lambda) / n!``.

Two independent routes are provided. :func:`ab_poly_scaled` first builds the
numbers ``b_n(0)`` and shifts them with the Appell binomial formula;
:func:`ab_poly_direct` runs the coefficient recurrence of the generating
function with ``x`` kept inside it. Precision 53 uses the complex-double
kernels, anything higher runs in mpmath.
"""

from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import IllConditionedWarning
from .params import ParamContext, pole_value, to_mpc
from .precision import PrecisionConfig, mpctx


@dataclass(frozen=True)
class ScaledValue:
    n: int
    value: object
    z: object
    context: Optional[ParamContext]

    def __complex__(self) -> complex:
        return complex(self.value)


def _resolve(prec: Optional[PrecisionConfig]) -> PrecisionConfig:
    return prec if prec is not None else PrecisionConfig.from_env()


def effective_bits(ctx: ParamContext, prec: PrecisionConfig) -> int:
    """Working bits after the near-one conditioning policy (double once, warn)."""
    bits = prec.working_bits
    if ctx.is_one:
        return bits
    gap = abs(ctx.lam - 1)
    if gap < prec.conditioning_threshold:
        warnings.warn(
            f"|lambda - 1| = {float(gap):.3g} is below {prec.conditioning_threshold:g}; "
            f"raising working precision to {2 * bits} bits",
            IllConditionedWarning,
            stacklevel=3,
        )
        bits *= 2
    return bits


@functools.lru_cache(maxsize=256)
def _numbers_mp(lam_data, bits: int, N: int) -> tuple:
    mp = mpctx(bits)
    lam = mp.make_mpc(lam_data)
    inv = [mp.one]
    for k in range(1, N + 3):
        inv.append(inv[-1] / k)
    b = [mp.zero] * (N + 1)
    if lam == 1:
        for n in range(N + 1):
            acc = mp.one if n == 0 else mp.zero
            acc -= mp.fsum(b[k] * inv[n + 1 - k] for k in range(n))
            b[n] = acc
    else:
        denom = lam - 1
        for n in range(1, N + 1):
            s = mp.fsum(b[k] * inv[n - k] for k in range(n))
            b[n] = ((1 if n == 1 else 0) - lam * s) / denom
    return tuple(mp.mpc(v) for v in b)


def numbers_raw(ctx: ParamContext, N: int, bits: int) -> list:
    """``[b_0(0), ..., b_N(0)]`` as mpc values of ``mpctx(bits)``."""
    if bits <= 53:
        mp = mpctx(53)
        return [mp.mpc(v) for v in kernels.numbers_scaled(ctx.lam_complex(), N)]
    lam = to_mpc(ctx.lam, bits)
    return list(_numbers_mp(lam._mpc_, bits, N))


def appell_shift_raw(numbers: list, z, bits: int) -> list:
    """Apply ``b_n(z) = sum_k b_{n-k}(0) z^k / k!`` to a list of numbers."""
    N = len(numbers) - 1
    if bits <= 53:
        mp = mpctx(53)
        out = kernels.appell_shift(np.array([complex(v) for v in numbers]), complex(z))
        return [mp.mpc(v) for v in out]
    mp = mpctx(bits)
    z = to_mpc(z, bits)
    zp = [mp.one]
    for k in range(1, N + 1):
        zp.append(zp[-1] * z / k)
    return [mp.fsum(numbers[n - k] * zp[k] for k in range(n + 1)) for n in range(N + 1)]


def poly_raw(ctx: ParamContext, z, N: int, bits: int) -> list:
    """``[b_0(z), ..., b_N(z)]`` via the numbers and the binomial shift."""
    return appell_shift_raw(numbers_raw(ctx, N, bits), z, bits)


def direct_raw(ctx: ParamContext, z, N: int, bits: int) -> list:
    if bits <= 53:
        mp = mpctx(53)
        return [mp.mpc(v) for v in kernels.direct_scaled(ctx.lam_complex(), complex(z), N)]
    mp = mpctx(bits)
    lam = to_mpc(ctx.lam, bits)
    x = to_mpc(z, bits)
    inv = [mp.one]
    for k in range(1, N + 3):
        inv.append(inv[-1] / k)
    b = [mp.zero] * (N + 1)
    xpow = mp.one
    if lam == 1:
        for n in range(N + 1):
            if n > 0:
                xpow = xpow * x / n
            b[n] = xpow - mp.fsum(b[k] * inv[n + 1 - k] for k in range(n))
    else:
        denom = lam - 1
        for n in range(1, N + 1):
            if n > 1:
                xpow = xpow * x / (n - 1)
            s = mp.fsum(b[k] * inv[n - k] for k in range(n))
            b[n] = (xpow - lam * s) / denom
    return b


def ab_numbers_scaled(ctx: ParamContext, N: int, prec: Optional[PrecisionConfig] = None) -> list[ScaledValue]:
    if N < 0:
        raise ValueError("N must be >= 0")
    prec = _resolve(prec)
    bits = effective_bits(ctx, prec)
    zero = mpctx(bits).zero
    return [ScaledValue(n, v, zero, ctx) for n, v in enumerate(numbers_raw(ctx, N, bits))]


def ab_poly_scaled(ctx: ParamContext, z, N: int, prec: Optional[PrecisionConfig] = None) -> list[ScaledValue]:
    if N < 0:
        raise ValueError("N must be >= 0")
    prec = _resolve(prec)
    bits = effective_bits(ctx, prec)
    zz = to_mpc(z, bits)
    return [ScaledValue(n, v, zz, ctx) for n, v in enumerate(poly_raw(ctx, zz, N, bits))]


def ab_poly_direct(ctx: ParamContext, z, n: int, prec: Optional[PrecisionConfig] = None) -> ScaledValue:
    if n < 0:
        raise ValueError("n must be >= 0")
    prec = _resolve(prec)
    bits = effective_bits(ctx, prec)
    zz = to_mpc(z, bits)
    return ScaledValue(n, direct_raw(ctx, zz, n, bits)[n], zz, ctx)


def zero_lambda_poly_scaled(z, N: int, prec: Optional[PrecisionConfig] = None) -> list[ScaledValue]:
    """lambda = 0: ``B_0 = 0`` and ``B_n(x; 0) = -n x^{n-1}``, scaled by ``1/n!``."""
    prec = _resolve(prec)
    mp = mpctx(prec.working_bits)
    zz = to_mpc(z, prec.working_bits)
    out = [ScaledValue(0, mp.mpc(0), zz, None)]
    term = mp.mpc(-1)
    for n in range(1, N + 1):
        if n > 1:
            term = term * zz / (n - 1)
        out.append(ScaledValue(n, term, zz, None))
    return out


def fourier_coefficient_closed_form(ctx: ParamContext, n: int, k: int, bits: Optional[int] = None):
    """Scaled coefficient ``-1/(2 pi i k - log lambda)^n`` (0 for lambda = 1, k = 0)."""
    ctx = ctx.with_bits(bits or ctx.bits)
    if ctx.is_one and k == 0:
        return ctx.mp.mpc(0)
    return -1 / pole_value(ctx, k) ** n


# relative rounding level of a double-precision panel sum
DOUBLE_NOISE = 2.0**-50


def fourier_coefficient_quadrature(
    ctx: ParamContext, n: int, k: int, prec: Optional[PrecisionConfig] = None
):
    """``int_0^1 lambda^x b_n(x) e^{-2 pi i k x} dx`` by adaptive Gauss-Legendre.

    Tolerances of 1e-13 and above run in doubles first. When the result is so
    much smaller than ``int |f|`` that doubles cannot deliver the tolerance
    relative to it, the integral is redone at working precision.
    """
    from .quadrature import integrate_double, integrate_mp

    if n < 1:
        raise ValueError("n must be >= 1")
    prec = _resolve(prec)
    tol = prec.quadrature_tolerance
    if tol >= 1e-13:
        numbers = numbers_raw(ctx, n, max(prec.working_bits, 64))
        coeffs = np.array([complex(numbers[n - j]) for j in range(n + 1)])
        inv = kernels.inverse_factorials(n)
        coeffs = coeffs * inv
        rate = complex(-pole_value(ctx, k))

        def f(xs):
            return kernels.horner_many(coeffs, xs) * np.exp(rate * xs)

        value, scale = integrate_double(f, 0.0, 1.0, tol, with_scale=True)
        if abs(value) * tol >= scale * DOUBLE_NOISE:
            return mpctx(prec.working_bits).mpc(value)
        # the integral cancels too far below int |f| for doubles to carry tol
        # relative to it; redo the sum wide, with the tolerance rescaled
        tol = max(tol * abs(value) / scale, 16 * 2.0 ** -prec.working_bits)

    bits = prec.working_bits
    mp = mpctx(bits)
    hi = ctx.with_bits(bits)
    numbers = numbers_raw(hi, n, bits)
    coeffs = []
    fact = mp.one
    for j in range(n + 1):
        if j:
            fact *= j
        coeffs.append(numbers[n - j] / fact)
    rate = -pole_value(hi, k)

    def g(x):
        acc = mp.zero
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc * mp.exp(rate * x)

    return integrate_mp(g, 0, 1, tol, bits)
