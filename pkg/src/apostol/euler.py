"""Apostol-Euler polynomials through the Bernoulli family at ``-lambda``.

``E_n(x; lambda) = -2/(n+1) B_{n+1}(x; -lambda)``, so in scaled form
``E_n / (2 n!) = -b_{n+1}(x; -lambda)`` and every Bernoulli tool applies to
the mirror parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .approx import partial_sum
from .errors import MinusOneLambda
from .exact import effective_bits, poly_raw
from .normalized import NormalizedValue, beta_values
from .params import (
    LambdaClass,
    ParamContext,
    admissible_kinds,
    make_context,
    pole_value,
    to_mpc,
    truncation_set,
)
from .precision import PrecisionConfig

STANDARD = "standard"
EULER_AT_MINUS_ONE = "euler-at-minus-one"


@dataclass(frozen=True)
class EulerContext:
    """``lambda`` with its mirror ``-lambda``.

    ``eps_sign`` satisfies ``log(-lambda) = log(lambda) + eps * pi i``. For
    lambda = -1 the mirror is 1 and the pole at 0 is dropped.
    """

    base: ParamContext
    mirror: ParamContext
    eps_sign: int
    pole_set_tag: str

    @property
    def bits(self) -> int:
        return self.base.bits


def _eps_sign(cls: LambdaClass) -> int:
    if cls in (LambdaClass.REAL_POSITIVE_NOT_ONE, LambdaClass.ONE, LambdaClass.IM_NEGATIVE):
        return 1
    return -1


def euler_context(lam, bits: Optional[int] = None) -> EulerContext:
    base = make_context(lam, bits)
    mirror = make_context(-base.lam, base.bits)
    tag = EULER_AT_MINUS_ONE if mirror.is_one else STANDARD
    return EulerContext(base, mirror, _eps_sign(base.lambda_class), tag)


def euler_pole(ectx: EulerContext, k: int):
    """``(2k + 1) pi i - log(lambda)``; for lambda = -1 the poles are ``2 pi i k``, ``k != 0``."""
    mp = ectx.base.mp
    if ectx.pole_set_tag == EULER_AT_MINUS_ONE:
        if k == 0:
            raise ValueError("0 is not a pole of the Euler family at lambda = -1")
        return mp.mpc(0, 2 * mp.pi * k)
    return mp.mpc(0, (2 * k + 1) * mp.pi) - ectx.base.log_lambda


def euler_pole_set(ectx: EulerContext, cutoff: int) -> list:
    """Euler poles with index ``|k| <= cutoff`` (``k != 0`` at lambda = -1)."""
    ks = range(-cutoff, cutoff + 1)
    if ectx.pole_set_tag == EULER_AT_MINUS_ONE:
        ks = [k for k in ks if k != 0]
    return [euler_pole(ectx, k) for k in ks]


def mirror_pole_set(ectx: EulerContext, cutoff: int) -> list:
    """Bernoulli poles of the mirror parameter covering the same index window."""
    shift = (1 + ectx.eps_sign) // 2
    ks = range(-cutoff + shift, cutoff + shift + 1)
    if ectx.mirror.is_one:
        ks = [k for k in ks if k != 0]
    return [pole_value(ectx.mirror, k) for k in ks]


def ae_poly_scaled(ectx: EulerContext, z, N: int, prec: Optional[PrecisionConfig] = None) -> list:
    """``[E_0(z)/2, E_1(z)/(2 * 1!), ..., E_N(z)/(2 N!)]``."""
    if N < 0:
        raise ValueError("N must be >= 0")
    prec = prec if prec is not None else PrecisionConfig.from_env()
    bits = effective_bits(ectx.mirror, prec)
    b = poly_raw(ectx.mirror.with_bits(bits), to_mpc(z, bits), N + 1, bits)
    return [-b[n + 1] for n in range(N + 1)]


def ae_fourier_partial(ectx: EulerContext, m: int, z, n: int, kind=None):
    """``sum_{a in F} e^{a z} / a^{n+1}`` over a truncation set of the mirror parameter."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mirror = ectx.mirror
    if kind is None:
        kind = admissible_kinds(mirror.lambda_class)[0]
    F = truncation_set(mirror, kind, m)
    return -partial_sum(mirror, F, z, n + 1)


def duplication_check(ctx: ParamContext, z, n: int, prec: Optional[PrecisionConfig] = None):
    """Relative residual of ``2^n b_n(z/2; lambda^2) = b_n(z; lambda) + b_n(z; -lambda)``.

    ``lambda^2`` is formed as a complex square and gets its own principal log.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    prec = prec if prec is not None else PrecisionConfig.from_env()
    bits = effective_bits(ctx, prec)
    hi = ctx.with_bits(bits)
    mp = hi.mp
    zz = to_mpc(z, bits)
    sq = make_context(hi.lam * hi.lam, bits)
    neg = make_context(-hi.lam, bits)
    left = poly_raw(sq, zz / 2, n, bits)[n] * mp.mpf(2) ** n
    right_a = poly_raw(hi, zz, n, bits)[n]
    right_b = poly_raw(neg, zz, n, bits)[n]
    scale = max(abs(left), abs(right_a), abs(right_b))
    if scale == 0:
        return mp.zero
    return abs(left - right_a - right_b) / scale


def epsilon_n(ectx: EulerContext, z, n: int, prec: Optional[PrecisionConfig] = None) -> NormalizedValue:
    """Normalized Euler value ``(-1)^{n+1} (log(-lambda))^{n+1} (-lambda)^z E_n(z) / (2 n!)``.

    This is ``beta_{n+1}(z; -lambda)`` and tends to 1 for lambda outside
    ``[0, inf)``.
    """
    if ectx.mirror.is_one:
        raise MinusOneLambda("the normalized Euler value is undefined for lambda = -1")
    if n < 1:
        raise ValueError("n must be >= 1")
    prec = prec if prec is not None else PrecisionConfig.from_env()
    bits = effective_bits(ectx.mirror, prec)
    zz = to_mpc(z, bits)
    value = beta_values(ectx.mirror, zz, n + 1, bits)[n + 1]
    return NormalizedValue(n, zz, value, ectx.eps_sign)


def epsilon_values(ectx: EulerContext, z, n_max: int, bits: int) -> list:
    """``[eps_0, ..., eps_{n_max}]`` at ``bits`` (entry 0 kept for indexing)."""
    if ectx.mirror.is_one:
        raise MinusOneLambda("the normalized Euler value is undefined for lambda = -1")
    return beta_values(ectx.mirror, z, n_max + 1, bits)[1:]


def euler_quotient_limit(ectx: EulerContext):
    """``(log lambda + eps pi i)/(log lambda - eps pi i)``."""
    mp = ectx.base.mp
    L = ectx.base.log_lambda
    shift = mp.mpc(0, ectx.eps_sign * mp.pi)
    return (L + shift) / (L - shift)

