"""Real lambda: conjugate pole pairs, rational angles, exceptional sets and
the sandwich bounds for successive quotients of ``beta_n - 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .approx import hurwitz_zeta_upper
from .errors import (
    DomainError,
    NotRationalAngle,
    NotReduced,
    TooCloseToExceptional,
    WrongClass,
)
from .exact import effective_bits, poly_raw
from .normalized import beta_values, guard_bits
from .params import LambdaClass, ParamContext, make_context, pole, pole_value, to_mpc
from .precision import PrecisionConfig, mpctx

DEFAULT_MAX_DENOMINATOR = 1000
DEFAULT_ANGLE_TOLERANCE = 1e-12
FOURIER_CUTOFF = 200


def _require_real(ctx: ParamContext) -> None:
    if not ctx.is_real:
        raise WrongClass(f"lambda must be real, got class {ctx.lambda_class.value}")


def _require_positive(ctx: ParamContext) -> None:
    if ctx.lambda_class is not LambdaClass.REAL_POSITIVE_NOT_ONE:
        raise WrongClass("this bound needs lambda in (0, inf) with lambda != 1")


@dataclass(frozen=True)
class PolePair:
    """Two conjugate poles of equal modulus ``rho``.

    For lambda > 0 the members are ``{k, -k}`` (``k >= 1``) and ``alpha`` is
    the angle of ``a_k``; for lambda < 0 they are ``{-k, k+1}`` (``k >= 0``)
    and ``alpha`` is the angle of ``a_{k+1}``. Angles are in turns.
    """

    lambda_sign: int
    k: int
    rho: object
    alpha: object

    @property
    def members(self) -> tuple[int, int]:
        if self.lambda_sign > 0:
            return (self.k, -self.k)
        return (-self.k, self.k + 1)


def pole_pair(ctx: ParamContext, k: int) -> PolePair:
    _require_real(ctx)
    if ctx.lambda_class is LambdaClass.REAL_NEGATIVE:
        if k < 0:
            raise ValueError("k must be >= 0 for lambda < 0")
        p = pole(ctx, k + 1)
        return PolePair(-1, k, p.modulus, p.angle)
    if k < 1:
        raise ValueError("k must be >= 1 for lambda > 0")
    p = pole(ctx, k)
    return PolePair(1, k, p.modulus, p.angle)


def pair_term(ctx: ParamContext, pair: PolePair, z, n: int):
    """Contribution of ``pair`` to ``b_n(z)``, i.e. ``-(e^{az}/a^n + e^{a'z}/a'^n)``.

    Evaluated in cosine form: ``-2 lambda^{-z} rho^{-n} cos(2 pi (k z - n alpha))``
    for lambda > 0 and ``-2 (-lambda)^{-z} rho^{-n} cos(pi ((2k+1) z - 2 n alpha))``
    for lambda < 0, with the power taken through the real log of the positive base.
    """
    _require_real(ctx)
    expected = -1 if ctx.lambda_class is LambdaClass.REAL_NEGATIVE else 1
    if pair.lambda_sign != expected:
        raise WrongClass("pole pair does not match the sign of lambda")
    mp = ctx.mp
    z = to_mpc(z, ctx.bits)
    log_base = mp.log(abs(ctx.lam.real))
    scale = 2 * mp.exp(-z * log_base) * pair.rho ** (-n)
    if expected > 0:
        arg = 2 * mp.pi * (pair.k * z - n * pair.alpha)
    else:
        arg = mp.pi * ((2 * pair.k + 1) * z - 2 * n * pair.alpha)
    return -scale * mp.cos(arg)


# -- rational angles and exceptional sets ---------------------------------


@dataclass(frozen=True)
class Lattice:
    """The affine lattice ``offset + spacing * Z`` with ``0 <= offset < spacing``."""

    offset: Fraction
    spacing: Fraction

    def contains(self, x) -> bool:
        return ((Fraction(x) - self.offset) / self.spacing).denominator == 1

    def points_in_unit(self) -> list[Fraction]:
        out = []
        p = self.offset
        while p < 1:
            out.append(p)
            p += self.spacing
        return out


class AngleKind(enum.Enum):
    RATIONAL = "Rational"
    IRRATIONAL_WITHIN_BOUND = "IrrationalWithinBound"


@dataclass(frozen=True)
class AngleClass:
    kind: AngleKind
    a: Optional[int] = None
    d: Optional[int] = None
    exceptional_set: Optional[Lattice] = None

    @property
    def is_rational(self) -> bool:
        return self.kind is AngleKind.RATIONAL


def _exact_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float)):
        return Fraction(x)
    man, exp = x.man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def convergents(x: Fraction, max_denominator: int):
    """Continued-fraction convergents ``p/q`` of ``x`` with ``q <= max_denominator``."""
    p0, q0, p1, q1 = 0, 1, 1, 0
    rest = x
    while True:
        a = math.floor(rest)
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > max_denominator:
            return
        yield Fraction(p1, q1)
        frac = rest - a
        if frac == 0:
            return
        rest = 1 / frac


def classify_angle(
    alpha,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
    tolerance: float = DEFAULT_ANGLE_TOLERANCE,
) -> AngleClass:
    """Decide whether ``alpha`` (in turns) is a rational ``a/d`` with ``d <= max_denominator``.

    The first convergent within ``tolerance`` wins. A negative answer only
    means no small-denominator fraction was close enough.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    x = _exact_fraction(alpha)
    tol = _exact_fraction(tolerance)
    for c in convergents(x, max_denominator):
        if abs(x - c) <= tol:
            d = c.denominator
            a = c.numerator % d
            return AngleClass(AngleKind.RATIONAL, a, d, exceptional_set(a, d))
    return AngleClass(AngleKind.IRRATIONAL_WITHIN_BOUND)


def exceptional_set(a: int, d: int) -> Lattice:
    """Points ``x`` where ``cos 2 pi (x - n a/d)`` vanishes for some integer ``n``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if math.gcd(a, d) != 1:
        raise NotReduced(f"{a}/{d} is not in lowest terms")
    g = math.gcd(4 * a, d)
    if g == 1:
        return Lattice(Fraction(1, 4 * d), Fraction(1, 2 * d))
    if g == 2:
        return Lattice(Fraction(1, 2 * d), Fraction(1, d))
    return Lattice(Fraction(0), Fraction(1, d))


def lattice_partition(d: int) -> tuple[Lattice, Lattice, Lattice]:
    """The three candidate exceptional lattices for denominator ``d``."""
    return (
        Lattice(Fraction(1, 4 * d), Fraction(1, 2 * d)),
        Lattice(Fraction(1, 2 * d), Fraction(1, d)),
        Lattice(Fraction(0), Fraction(1, d)),
    )


def lattice_trichotomy_holds(d: int) -> bool:
    """The three lattices are disjoint and together give ``(1/4d) Z`` on ``[0, 1)``."""
    sets = [set(lat.points_in_unit()) for lat in lattice_partition(d)]
    union = set().union(*sets)
    disjoint = sum(len(s) for s in sets) == len(union)
    return disjoint and union == {Fraction(j, 4 * d) for j in range(4 * d)}


def dist_to_exceptional(x, lat: Lattice):
    """Distance from real ``x`` to the nearest lattice point (exact for Fractions)."""
    if isinstance(x, (Fraction, int)):
        r = (Fraction(x) - lat.offset) % lat.spacing
        return min(r, lat.spacing - r)
    mp = mpctx(max(128, getattr(getattr(x, "context", None), "prec", 0) or 0))
    x = mp.mpf(x)
    off = mp.mpf(lat.offset.numerator) / lat.offset.denominator
    sp = mp.mpf(lat.spacing.numerator) / lat.spacing.denominator
    r = (x - off) % sp
    return min(r, sp - r)


def periodic_lambda(k: int, d: int, bits: int = 128):
    """``-e^{pi cot(pi k/d)}``: the negative lambda whose leading pole ratio is ``e^{2 pi i k/d}``."""
    if d < 1:
        raise DomainError("d must be >= 1")
    if k % d == 0:
        raise DomainError(f"cot(pi*{k}/{d}) is undefined")
    mp = mpctx(bits)
    return mp.mpc(-mp.exp(mp.pi * mp.cot(mp.pi * mp.mpf(k) / d)))


def positive_rational_lambda(a: int, d: int, bits: int = 128):
    """``lambda > 0`` whose ``1 - Lambda`` has angle exactly ``a/d`` turns.

    Requires ``a/d`` in ``(-1/4, 1/4)`` modulo 1, excluding 0; the result is
    ``exp(-2 pi cot(2 pi a/d))``.
    """
    if d < 1:
        raise DomainError("d must be >= 1")
    t = Fraction(a, d) % 1
    if t == 0 or Fraction(1, 4) <= t <= Fraction(3, 4):
        raise DomainError(f"angle {a}/{d} is not reachable by a positive lambda")
    mp = mpctx(bits)
    return mp.mpc(mp.exp(-2 * mp.pi * mp.cot(2 * mp.pi * mp.mpf(a) / d)))


def leading_ratio(ctx: ParamContext):
    """``omega = (log|lambda| + pi i)/(log|lambda| - pi i)`` for lambda < 0, else ``(1-Lambda)/|1-Lambda|``."""
    mp = ctx.mp
    if ctx.lambda_class is LambdaClass.REAL_NEGATIVE:
        L = mp.log(-ctx.lam.real)
        return mp.mpc(L, mp.pi) / mp.mpc(L, -mp.pi)
    w = 1 - ctx.cap_lambda
    return w / abs(w)


def unit_angle(ctx: ParamContext):
    """Angle of ``1 - Lambda`` in turns, in ``[0, 1)``."""
    _require_real(ctx)
    if ctx.is_one:
        raise WrongClass("Lambda is undefined for lambda = 1")
    mp = ctx.mp
    t = mp.arg(1 - ctx.cap_lambda) / (2 * mp.pi)
    return t + 1 if t < 0 else t


# -- quotient sandwich for lambda > 0 --------------------------------------


@dataclass(frozen=True)
class QuotientBoundInputs:
    rho: object
    mu_q: object
    eta: object


def quotient_bound_inputs(ctx: ParamContext) -> QuotientBoundInputs:
    _require_positive(ctx)
    cap = ctx.cap_lambda
    rho = abs(1 - cap)
    mu_q = abs(1 - 2 * cap)
    return QuotientBoundInputs(rho, mu_q, rho / mu_q)


@dataclass(frozen=True)
class SandwichRow:
    n: int
    modulus: object
    lower: object
    upper: object

    @property
    def margin(self):
        return min(self.modulus - self.lower, self.upper - self.modulus)

    @property
    def inside(self) -> bool:
        return self.lower <= self.modulus <= self.upper


@dataclass(frozen=True)
class SandwichReport:
    rows: list
    c: object
    inputs: QuotientBoundInputs
    bits: int
    angle: Optional[AngleClass] = None
    delta: object = None
    periodic: Optional[bool] = None

    @property
    def holds(self) -> bool:
        return all(r.inside for r in self.rows)


def _quotient_moduli(ctx: ParamContext, z, ns: list[int], prec: PrecisionConfig):
    base = effective_bits(ctx, prec)
    bits = base + guard_bits(ctx, z, max(ns) + 1)
    hi = ctx.with_bits(bits)
    betas = beta_values(hi, z, max(ns) + 1, bits)
    return hi, {n: abs((betas[n + 1] - 1) / (betas[n] - 1)) for n in ns}


def _fit_c(moduli: dict, lower0, upper0, eta, fit_ns: Iterable[int]):
    """Smallest ``c`` putting the burn-in quotients inside ``[lower0 - c eta^n, upper0 + c eta^n]``."""
    c = 0
    for n in fit_ns:
        q = moduli[n]
        excess = max(lower0 - q, q - upper0, 0)
        c = max(c, excess / eta**n)
    return c


def _sandwich(ctx, z, n_range, fit_range, prec, lower0, upper0, **extra) -> SandwichReport:
    inputs = quotient_bound_inputs(ctx)
    ns = list(n_range)
    fit_ns = list(fit_range)
    hi, moduli = _quotient_moduli(ctx, z, sorted(set(ns) | set(fit_ns)), prec)
    mp = hi.mp
    inputs = quotient_bound_inputs(hi)
    lower0, upper0 = mp.mpf(lower0), mp.mpf(upper0)
    c = _fit_c(moduli, lower0, upper0, inputs.eta, fit_ns)
    rows = [
        SandwichRow(n, moduli[n], lower0 - c * inputs.eta**n, upper0 + c * inputs.eta**n)
        for n in ns
    ]
    return SandwichReport(rows, c, inputs, hi.bits, **extra)


def quotient_bounds_offreal(
    ctx: ParamContext,
    z,
    n_range: Iterable[int],
    prec: Optional[PrecisionConfig] = None,
    fit_range: Optional[Iterable[int]] = None,
) -> SandwichReport:
    """Check ``rho^{-1}|tanh 2 pi y| - c eta^n <= |q_n| <= rho^{-1}|coth 2 pi y| + c eta^n``.

    ``c`` is the smallest constant that fits the burn-in range (default: the
    ten degrees preceding ``n_range``).
    """
    _require_positive(ctx)
    prec = prec if prec is not None else PrecisionConfig.from_env()
    zz = to_mpc(z, ctx.bits)
    y = zz.imag
    if y == 0:
        raise DomainError("z must have nonzero imaginary part")
    ns = list(n_range)
    if fit_range is None:
        fit_range = range(max(2, ns[0] - 10), ns[0])
    mp = ctx.mp
    rho = quotient_bound_inputs(ctx).rho
    t = abs(mp.tanh(2 * mp.pi * y))
    return _sandwich(ctx, zz, ns, fit_range, prec, t / rho, 1 / (t * rho))


def quotient_bounds_rational(
    ctx: ParamContext,
    z,
    delta,
    n_range: Iterable[int],
    prec: Optional[PrecisionConfig] = None,
    fit_range: Optional[Iterable[int]] = None,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
    tolerance: float = DEFAULT_ANGLE_TOLERANCE,
) -> SandwichReport:
    """Check ``rho^{-1}(4 delta / cosh 2 pi y - c eta^n) <= |q_n| <= rho^{-1}(cosh 2 pi y / (4 delta) + c eta^n)``.

    Needs the angle of ``1 - Lambda`` to classify as rational ``a/d`` and
    ``Re z`` to stay at least ``delta`` away from its exceptional lattice.
    """
    _require_positive(ctx)
    prec = prec if prec is not None else PrecisionConfig.from_env()
    angle = classify_angle(unit_angle(ctx), max_denominator, tolerance)
    if not angle.is_rational:
        raise NotRationalAngle("the angle of 1 - Lambda is not rational within the bound")
    mp = ctx.mp
    zz = to_mpc(z, ctx.bits)
    x, y = zz.real, zz.imag
    delta = mp.mpf(delta)
    if not delta > 0:
        raise DomainError("delta must be positive")
    actual = dist_to_exceptional(x, angle.exceptional_set)
    if actual < delta:
        raise TooCloseToExceptional(
            f"Re z is {mp.nstr(actual, 6)} from the exceptional set, below delta={mp.nstr(delta, 6)}"
        )
    ns = list(n_range)
    if fit_range is None:
        fit_range = range(max(2, ns[0] - 10), ns[0])
    rho = quotient_bound_inputs(ctx).rho
    ch = mp.cosh(2 * mp.pi * y)
    # the cosine factor has period d in n exactly when omega^d = 1
    periodic = abs(leading_ratio(ctx) ** angle.d - 1) < mp.ldexp(1, -(ctx.bits // 2))
    return _sandwich(
        ctx, zz, ns, fit_range, prec, 4 * delta / ch / rho, ch / (4 * delta) / rho,
        angle=angle, delta=delta, periodic=periodic,
    )


# -- negative lambda ------------------------------------------------------


@dataclass(frozen=True)
class ResidualRow:
    n: int
    residual: object
    envelope: object

    @property
    def holds(self) -> bool:
        return self.residual <= self.envelope


@dataclass(frozen=True)
class ResidualReport:
    rows: list
    constant: object
    eta: object
    fit_at: int
    method: str
    bits: int

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.rows)


def fourier_envelope(ctx: ParamContext, n: int, excluded=(0, 1)):
    """``sum_{k not in excluded} |1 - k Lambda|^{-n}``, a rigorous bound for real ``z`` in ``[0, 1]``."""
    mp = ctx.mp
    L = abs(ctx.log_lambda)
    K = FOURIER_CUTOFF
    explicit = mp.fsum(
        (L / abs(pole_value(ctx, k))) ** n for k in range(-K, K + 1) if k not in excluded
    )
    tail = 2 * L**n * (2 * mp.pi) ** (-n) * hurwitz_zeta_upper(n, K + mp.mpf(1) / 2, ctx.bits)
    return explicit + tail


def negative_residuals(
    ctx: ParamContext,
    z,
    n_range: Iterable[int],
    fit_at: int = 30,
    prec: Optional[PrecisionConfig] = None,
) -> ResidualReport:
    """``|beta_n - 1 - omega^n e^{2 pi i z}|`` against ``C eta^n`` with ``C`` set at ``fit_at``.

    ``eta = 1/|1 + Lambda|`` is the ratio of the leading excluded pole pair.
    For real ``z`` in ``[0, 1]`` the constant comes from the absolutely
    convergent Fourier remainder; elsewhere from the transported certificate.
    Either way ``C eta^n`` bounds the residual for every ``n >= fit_at``.
    """
    from .normalized import beta_certificate
    from .params import truncation_set

    if ctx.lambda_class is not LambdaClass.REAL_NEGATIVE:
        raise WrongClass("this residual is defined for lambda < 0")
    prec = prec if prec is not None else PrecisionConfig.from_env()
    ns = list(n_range)
    n_max = max(ns + [fit_at])
    base = effective_bits(ctx, prec)
    cap = ctx.cap_lambda
    eta = 1 / abs(1 + cap)
    extra = int(math.ceil(n_max * math.log2(float(abs(1 + cap)))))
    bits = base + guard_bits(ctx, z, n_max) + extra
    hi = ctx.with_bits(bits)
    mp = hi.mp
    zz = to_mpc(z, bits)
    eta = 1 / abs(1 + hi.cap_lambda)
    omega = leading_ratio(hi)
    betas = beta_values(hi, zz, n_max, bits)
    if zz.imag == 0 and 0 <= zz.real <= 1:
        method = "fourier"
        constant = fourier_envelope(hi, fit_at) / eta**fit_at
    else:
        method = "certificate"
        F = truncation_set(hi, "ZmPlus", 0)
        constant = beta_certificate(hi, F, zz, fit_at) / eta**fit_at
    e2piz = mp.exp(2j * mp.pi * zz)
    rows = [
        ResidualRow(n, abs(betas[n] - 1 - omega**n * e2piz), constant * eta**n) for n in ns
    ]
    return ResidualReport(rows, constant, eta, fit_at, method, bits)


@dataclass(frozen=True)
class UnitCircleForm:
    degree: int
    form: str
    value: object
    target: object
    deviation: object


def minus_one_forms(degrees: Iterable[int], z, prec: Optional[PrecisionConfig] = None) -> list[UnitCircleForm]:
    """lambda = -1: ``(-1)^{m-1} pi^N b_N(z; -1) / 2`` against ``cos pi z`` (N = 2m) or ``sin pi z`` (N = 2m + 1)."""
    prec = prec if prec is not None else PrecisionConfig.from_env()
    degrees = list(degrees)
    top = max(degrees)
    bits = prec.working_bits + int(math.ceil(top * math.log2(3))) + 32
    ctx = make_context(-1, bits)
    mp = ctx.mp
    zz = to_mpc(z, bits)
    b = poly_raw(ctx, zz, top, bits)
    out = []
    for N in degrees:
        m = N // 2
        value = (-1) ** (m - 1) * mp.pi**N * b[N] / 2
        if N % 2 == 0:
            form, target = "cos", mp.cos(mp.pi * zz)
        else:
            form, target = "sin", mp.sin(mp.pi * zz)
        out.append(UnitCircleForm(N, form, value, target, abs(value - target)))
    return out
