"""The normalized sequence ``beta_n(z) = (-1)^{n-1} log(lambda)^n lambda^z b_n(z)``.

Off the closed negative axis ``beta_n -> 1``; the successive quotients of
``beta_n - 1`` converge to ``1/(1 - eps * Lambda)`` with
``Lambda = 2 pi i / log(lambda)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .approx import certificate_bound, tail_constant
from .errors import UnitLambda, WrongClass
from .exact import effective_bits, poly_raw
from .params import LambdaClass, ParamContext, TruncationSet, to_mpc
from .precision import PrecisionConfig

EXTRA_GUARD_BITS = 32


@dataclass(frozen=True)
class NormalizedValue:
    n: int
    z: object
    beta: object
    epsilon_sign: int


def epsilon_sign(ctx: ParamContext) -> int:
    """Sign of ``Im lambda``; ``+1`` on the negative axis (and, by convention, for lambda > 0)."""
    return -1 if ctx.lambda_class is LambdaClass.IM_NEGATIVE else 1


def _require_not_one(ctx: ParamContext) -> None:
    if ctx.is_one:
        raise UnitLambda("the normalized sequence is undefined for lambda = 1")


def normalizer(ctx: ParamContext, z, n: int):
    """``(-1)^{n-1} log(lambda)^n lambda^z`` computed in log-magnitude/phase form."""
    mp = ctx.mp
    z = to_mpc(z, ctx.bits)
    log_lambda = ctx.log_lambda
    return (-1) ** (n - 1) * mp.exp(n * mp.log(log_lambda) + z * log_lambda)


def guard_bits(ctx: ParamContext, z, n_max: int) -> int:
    """Extra bits so that ``beta_n - 1`` keeps full accuracy up to ``n_max``.

    ``beta_n - 1`` shrinks like ``min|1 +- Lambda|^{-n}`` while ``beta_n`` stays
    near 1, so that many bits are lost to cancellation.
    """
    cap = ctx.cap_lambda
    decay = min(abs(1 - cap), abs(1 + cap))
    lost = (n_max + 1) * max(0.0, math.log2(float(decay)))
    z = complex(to_mpc(z, 64))
    lost += 2 * math.pi * abs(z.imag) / math.log(2)
    lost += (2 * float(abs(ctx.log_lambda)) + 2 * math.pi) * abs(z) / math.log(2)
    return int(math.ceil(lost)) + EXTRA_GUARD_BITS


def beta_values(ctx: ParamContext, z, n_max: int, bits: int) -> list:
    """``[beta_0, ..., beta_{n_max}]`` at ``bits`` (entries 0 and 1 included for indexing)."""
    _require_not_one(ctx)
    hi = ctx.with_bits(bits)
    zz = to_mpc(z, bits)
    b = poly_raw(hi, zz, n_max, bits)
    return [normalizer(hi, zz, n) * b[n] for n in range(n_max + 1)]


def beta(ctx: ParamContext, z, n: int, prec: Optional[PrecisionConfig] = None) -> NormalizedValue:
    _require_not_one(ctx)
    if n < 2:
        raise ValueError("n must be >= 2")
    prec = prec if prec is not None else PrecisionConfig.from_env()
    bits = effective_bits(ctx, prec)
    zz = to_mpc(z, bits)
    return NormalizedValue(n, zz, beta_values(ctx, zz, n, bits)[n], epsilon_sign(ctx))


def beta_fourier_term(ctx: ParamContext, k: int, x, n: int):
    """``e^{2 pi i k x} / (1 - k Lambda)^n``."""
    _require_not_one(ctx)
    mp = ctx.mp
    x = to_mpc(x, ctx.bits)
    return mp.exp(2j * mp.pi * k * x) / (1 - k * ctx.cap_lambda) ** n


def beta_partial(ctx: ParamContext, F: TruncationSet, z, n: int):
    """Sum of :func:`beta_fourier_term` over the indices of ``F``."""
    mp = ctx.mp
    return mp.fsum(beta_fourier_term(ctx, k, z, n) for k in F.indices)


def beta_certificate(ctx: ParamContext, F: TruncationSet, z, n: int):
    """Bound on ``|beta_n(z) - beta_partial|``: the scaled certificate times ``|normalizer|``."""
    bound, _ = certificate_bound(ctx, F, z, n, tail_constant(ctx, F))
    return bound * abs(normalizer(ctx, z, n))


@dataclass(frozen=True)
class QuotientEntry:
    n: int
    value: object  # None when near_singular
    near_singular: bool
    beta_minus_one: object


@dataclass(frozen=True)
class QuotientSequence:
    entries: list
    limit: object
    bits: int

    @property
    def first_unflagged_run(self) -> Optional[int]:
        """Smallest ``n`` from which no later entry is flagged."""
        start = None
        for e in self.entries:
            if e.near_singular:
                start = None
            elif start is None:
                start = e.n
        return start


def quotient_limit(ctx: ParamContext):
    return 1 / (1 - epsilon_sign(ctx) * ctx.cap_lambda)


def quotient_sequence(
    ctx: ParamContext, z, n_from: int, n_to: int, prec: Optional[PrecisionConfig] = None
) -> QuotientSequence:
    """``q_n = (beta_{n+1} - 1)/(beta_n - 1)`` for ``n_from <= n <= n_to``.

    Working precision is raised by :func:`guard_bits`. An entry is flagged
    near-singular, and not divided, when ``beta_n - 1`` retains fewer than
    ``working_bits / 2`` significant bits at the raised precision.
    """
    if ctx.lambda_class in (LambdaClass.REAL_POSITIVE_NOT_ONE, LambdaClass.ONE):
        raise WrongClass("quotient limits need lambda outside (0, inf)")
    if n_from < 2 or n_to < n_from:
        raise ValueError("need 2 <= n_from <= n_to")
    prec = prec if prec is not None else PrecisionConfig.from_env()
    base = effective_bits(ctx, prec)
    bits = base + guard_bits(ctx, z, n_to)
    hi = ctx.with_bits(bits)
    mp = hi.mp
    betas = beta_values(hi, z, n_to + 1, bits)
    threshold = mp.ldexp(1, base // 2 - bits)
    entries = []
    for n in range(n_from, n_to + 1):
        d = betas[n] - 1
        if abs(d) < threshold:
            entries.append(QuotientEntry(n, None, True, d))
        else:
            entries.append(QuotientEntry(n, (betas[n + 1] - 1) / d, False, d))
    return QuotientSequence(entries, quotient_limit(hi), bits)


@dataclass(frozen=True)
class ZerothLimitReport:
    values: list  # (n, beta_n)
    limit: object
    geometric_rate: float
    predicted_rate: float
    bits: int


def _envelope_rate(ns, mags) -> float:
    """Least-squares decay rate of the upper envelope ``sup_{m >= n} mags[m]``."""
    env = []
    running = 0.0
    for v in reversed(mags):
        running = max(running, v)
        env.append(running)
    env.reverse()
    pts = [(n, math.log(v)) for n, v in zip(ns, env) if v > 0]
    if len(pts) < 2:
        return float("nan")
    mx = sum(p[0] for p in pts) / len(pts)
    my = sum(p[1] for p in pts) / len(pts)
    sxx = sum((p[0] - mx) ** 2 for p in pts)
    sxy = sum((p[0] - mx) * (p[1] - my) for p in pts)
    return math.exp(sxy / sxx)


def zeroth_limit_report(
    ctx: ParamContext, z, n_max: int, prec: Optional[PrecisionConfig] = None
) -> ZerothLimitReport:
    """Trajectory of ``beta_n`` toward 1 with its fitted geometric rate.

    The rate is fitted on the second half of ``2..n_max`` and compares with
    ``1 / min|1 +- Lambda|``.
    """
    _require_not_one(ctx)
    if ctx.lambda_class is LambdaClass.REAL_NEGATIVE:
        raise WrongClass("beta_n oscillates for lambda < 0; use the oscillation module")
    if n_max < 4:
        raise ValueError("n_max must be >= 4")
    prec = prec if prec is not None else PrecisionConfig.from_env()
    base = effective_bits(ctx, prec)
    bits = base + guard_bits(ctx, z, n_max)
    hi = ctx.with_bits(bits)
    betas = beta_values(hi, z, n_max, bits)
    ns = list(range(max(2, n_max // 2), n_max + 1))
    mags = [float(abs(betas[n] - 1)) for n in ns]
    cap = hi.cap_lambda
    predicted = 1 / float(min(abs(1 - cap), abs(1 + cap)))
    values = [(n, betas[n]) for n in range(2, n_max + 1)]
    return ZerothLimitReport(values, hi.mp.one, _envelope_rate(ns, mags), predicted, bits)
