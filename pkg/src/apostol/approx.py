"""Truncated pole sums and rigorous bounds on their distance to ``b_n(z)``.

For an admissible truncation set ``F`` with gap radius ``mu`` the partial sum
``-sum_{a in F} e^{a z} / a^n`` approximates ``b_n(z)``; the certificate bounds
the difference by propagating the ``z = 0`` tail constant through the
binomial shift and the Lagrange bound on exponential-series tails.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .errors import DomainError
from .exact import effective_bits, poly_raw
from .params import (
    ParamContext,
    TruncationSet,
    excluded_indices,
    pole_value,
    to_mpc,
    truncation_set,
)
from .precision import PrecisionConfig, bits_to_resolve, mpctx

TAIL_CUTOFF_MARGIN = 50


@dataclass(frozen=True)
class ApproxCertificate:
    """Partial sum at ``(n, z)`` with a guaranteed bound on its error.

    ``low_order_excess`` is the part of ``bound`` that covers the degree-0
    and degree-1 numbers, where the pole expansion at ``x = 0`` does not
    hold; it is zero whenever the tail-constant term already dominates.
    """

    n: int
    z: object
    truncation: TruncationSet
    partial_sum: object
    mu: object
    tail_constant: object
    bound: object
    low_order_excess: object


def _pad(mp, value):
    # absorb rounding in the evaluation of the bound itself
    return value * (1 + mp.ldexp(1, -(mp.prec - 8)))


def _is_real(z) -> bool:
    return getattr(z, "imag", 0) == 0


def partial_sum(ctx: ParamContext, F: TruncationSet, z, n: int):
    """``-sum_{a in F} e^{a z} / a^n`` at ``ctx.bits``.

    For real lambda and real ``z`` the set is closed under conjugation, so the
    conjugate terms are paired and the result is exactly real.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    mp = ctx.mp
    z = to_mpc(z, ctx.bits)
    if ctx.bits <= 53:
        poles = np.array([complex(pole_value(ctx, k)) for k in F.indices])
        s = -complex(kernels.pole_power_sums(poles, complex(z), n, n)[0])
        if ctx.is_real and _is_real(z):
            s = complex(s.real, 0.0)
        return mp.mpc(s)
    terms = []
    for k in F.indices:
        a = pole_value(ctx, k)
        terms.append(mp.exp(a * z) / a**n)
    if ctx.is_real and _is_real(z):
        return mp.mpc(-mp.fsum(t.real for t in terms))
    return -mp.fsum(terms)


def partial_sums(ctx: ParamContext, F: TruncationSet, z, ns: Iterable[int]) -> list:
    """Partial sums for several degrees, sharing the pole exponentials."""
    mp = ctx.mp
    z = to_mpc(z, ctx.bits)
    ns = list(ns)
    pair = ctx.is_real and _is_real(z)
    data = []
    for k in F.indices:
        a = pole_value(ctx, k)
        data.append((a, mp.exp(a * z)))
    out = []
    for n in ns:
        terms = [e / a**n for a, e in data]
        out.append(mp.mpc(-mp.fsum(t.real for t in terms)) if pair else -mp.fsum(terms))
    return out


def hurwitz_zeta_upper(sigma, q, bits: int = 128):
    """Upper bound ``(1 + q/(sigma-1)) q^{-sigma}`` for the Hurwitz zeta function.

    Comes from comparing the sum with the integral of ``(t + q)^{-sigma}``;
    valid for real ``sigma > 1`` and ``q > 0``.
    """
    mp = mpctx(bits)
    sigma = mp.mpf(sigma)
    q = mp.mpf(q)
    if not sigma > 1 or not q > 0:
        raise DomainError(f"need sigma > 1 and q > 0, got sigma={sigma}, q={q}")
    return _pad(mp, (1 + q / (sigma - 1)) * q ** (-sigma))


def tail_constant(ctx: ParamContext, F: TruncationSet):
    """Rigorous ``c >= mu^2 * sum_{a excluded} |a|^{-2}``.

    Excluded poles with ``|k| <= K0`` are summed explicitly, with
    ``K0 = max |index in F| + 50``; the rest is bounded through
    ``|a_k| >= 2 pi (|k| - 1/2)`` and :func:`hurwitz_zeta_upper`.
    """
    mp = ctx.mp
    cutoff = max(abs(k) for k in F.indices) + TAIL_CUTOFF_MARGIN
    explicit = mp.fsum(1 / abs(pole_value(ctx, k)) ** 2 for k in excluded_indices(F, cutoff))
    remainder = 2 / (2 * mp.pi) ** 2 * hurwitz_zeta_upper(2, cutoff + mp.mpf(1) / 2, ctx.bits)
    return _pad(mp, F.mu**2 * (explicit + remainder))


def _low_order_residuals(ctx: ParamContext, F: TruncationSet):
    """``|b_j(0) + sum_F a^{-j}|`` for ``j = 0, 1``."""
    mp = ctx.mp
    if ctx.is_one:
        b0, b1 = mp.one, mp.mpf(-0.5)
    else:
        b0, b1 = mp.zero, 1 / (ctx.lam - 1)
    r0 = abs(b0 + len(F.indices))
    r1 = abs(b1 + mp.fsum(1 / pole_value(ctx, k) for k in F.indices))
    return r0, r1


def certificate_bound(ctx: ParamContext, F: TruncationSet, z, n: int, c=None):
    """Return ``(bound, low_order_excess)`` for degree ``n >= 2`` at ``z``."""
    if n < 2:
        raise ValueError("certificates need n >= 2")
    mp = ctx.mp
    if c is None:
        c = tail_constant(ctx, F)
    mu = F.mu
    r = abs(to_mpc(z, ctx.bits))
    grow = mp.exp(mu * r)
    main = c * mu ** (-n) * grow
    series_tail = len(F.indices) * mu * grow * r ** (n + 1) / mp.factorial(n + 1)
    r0, r1 = _low_order_residuals(ctx, F)
    excess = mp.zero
    if r1 > c / mu:
        excess += (r1 - c / mu) * r ** (n - 1) / mp.factorial(n - 1)
    if r0 > c:
        excess += (r0 - c) * r**n / mp.factorial(n)
    return _pad(mp, main + series_tail + excess), excess


def error_certificate(ctx: ParamContext, F: TruncationSet, z, n: int) -> ApproxCertificate:
    c = tail_constant(ctx, F)
    bound, excess = certificate_bound(ctx, F, z, n, c)
    zz = to_mpc(z, ctx.bits)
    return ApproxCertificate(n, zz, F, partial_sum(ctx, F, zz, n), F.mu, c, bound, excess)


@dataclass(frozen=True)
class CertificateRow:
    n: int
    exact: object
    partial_sum: object
    true_error: object
    bound: object

    @property
    def slack(self):
        if self.true_error == 0:
            return None
        return self.bound / self.true_error

    @property
    def holds(self) -> bool:
        return self.true_error <= self.bound


def certificate_table(
    ctx: ParamContext,
    kind,
    m: int,
    z,
    ns: Iterable[int],
    prec: Optional[PrecisionConfig] = None,
) -> tuple[list[CertificateRow], int]:
    """Compare certificates against exact values over a range of degrees.

    The bound can be far below the magnitude of ``b_n(z)``, so exact values and
    partial sums are evaluated at whatever precision resolves the smallest
    bound; that precision is returned with the rows.
    """
    prec = prec if prec is not None else PrecisionConfig.from_env()
    ns = sorted(set(int(n) for n in ns))
    base_bits = effective_bits(ctx, prec)
    low = ctx.with_bits(max(base_bits, 64))
    F = truncation_set(low, kind, m)
    zl = to_mpc(z, low.bits)
    c = tail_constant(low, F)
    smallest = min(certificate_bound(low, F, zl, n, c)[0] for n in ns)
    mp = low.mp
    r = abs(zl)
    scale = mp.fsum(
        max(abs(pole_value(low, k)) ** (-n) for n in ns) * mp.exp(abs(pole_value(low, k)) * r)
        for k in F.indices
    ) + 1
    bits = bits_to_resolve(base_bits, scale, smallest) + 32
    hi = ctx.with_bits(bits)
    Fh = truncation_set(hi, kind, m)
    zh = to_mpc(z, bits)
    ch = tail_constant(hi, Fh)
    exact = poly_raw(hi, zh, max(ns), bits)
    sums = partial_sums(hi, Fh, zh, ns)
    rows = []
    for n, s in zip(ns, sums):
        bound, _ = certificate_bound(hi, Fh, zh, n, ch)
        rows.append(CertificateRow(n, exact[n], s, abs(exact[n] - s), bound))
    return rows, bits


@dataclass(frozen=True)
class DilcherForm:
    n: int
    form: str
    scaled_poly: object
    target: object
    deviation: object


def dilcher_form(n: int, z, prec: Optional[PrecisionConfig] = None) -> DilcherForm:
    """Classical Bernoulli polynomials rescaled toward ``cos 2 pi z`` / ``sin 2 pi z``.

    Degree ``n = 2m`` returns ``(-1)^{m-1} (2 pi)^{2m} B_{2m}(z) / (2 (2m)!)``
    against ``cos 2 pi z``; degree ``2m + 1`` the analogous sine form.
    """
    from .params import make_context

    if n < 1:
        raise ValueError("n must be >= 1")
    prec = prec if prec is not None else PrecisionConfig.from_env()
    bits = prec.working_bits + n + 32
    mp = mpctx(bits)
    zz = to_mpc(z, bits)
    b = poly_raw(make_context(1, bits), zz, n, bits)[n]
    half = n // 2
    scaled = (-1) ** (half - 1) * (2 * mp.pi) ** n * b / 2
    if n % 2 == 0:
        form, target = "cos", mp.cos(2 * mp.pi * zz)
    else:
        form, target = "sin", mp.sin(2 * mp.pi * zz)
    if _is_real(zz):
        scaled = mp.mpc(scaled.real)
    return DilcherForm(n, form, scaled, target, abs(scaled - target))
