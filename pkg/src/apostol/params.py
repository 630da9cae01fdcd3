"""Parameter handling: principal logarithm, pole set, ordering, truncation sets.

The poles of ``t e^{xt} / (lambda e^t - 1)`` are ``a_k = 2 pi i k - log(lambda)``
(``k != 0`` when ``lambda == 1``). Everything downstream consumes them
through :func:`pole_chain` and :func:`truncation_set`.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

import mpmath

from .errors import EmptySet, ExcludedPole, InadmissibleKind, ZeroLambda
from .precision import default_bits, mpctx


class LambdaClass(enum.Enum):
    IM_POSITIVE = "ImPositive"
    IM_NEGATIVE = "ImNegative"
    REAL_POSITIVE_NOT_ONE = "RealPositiveNotOne"
    REAL_NEGATIVE = "RealNegative"
    ONE = "One"

    @property
    def is_real(self) -> bool:
        return self not in (LambdaClass.IM_POSITIVE, LambdaClass.IM_NEGATIVE)


class TruncationKind(enum.Enum):
    ZM = "Zm"
    ZM_PLUS = "ZmPlus"
    ZM_MINUS = "ZmMinus"


ADMISSIBLE_KINDS = {
    LambdaClass.IM_POSITIVE: (TruncationKind.ZM, TruncationKind.ZM_PLUS),
    LambdaClass.IM_NEGATIVE: (TruncationKind.ZM, TruncationKind.ZM_MINUS),
    LambdaClass.REAL_POSITIVE_NOT_ONE: (TruncationKind.ZM,),
    LambdaClass.ONE: (TruncationKind.ZM,),
    LambdaClass.REAL_NEGATIVE: (TruncationKind.ZM_PLUS,),
}


def parse_complex(text: str, bits: int):
    """Parse ``"a"``, ``"a+bi"``, ``"bi"``, ``"a-bj"`` or ``"p/q"`` at ``bits`` precision."""
    ctx = mpctx(bits)
    s = text.strip().replace(" ", "").lower()
    if not s:
        raise ValueError("empty complex literal")
    try:
        if s[-1] not in "ij":
            if "/" in s:
                num, den = s.split("/", 1)
                return ctx.mpc(ctx.mpf(num) / ctx.mpf(den))
            return ctx.mpc(ctx.mpf(s))
        body = s[:-1]
        # split at the last sign that is not an exponent sign
        cut = 0
        for i in range(len(body) - 1, 0, -1):
            if body[i] in "+-" and body[i - 1] != "e":
                cut = i
                break
        re_text, im_text = body[:cut], body[cut:]
        if im_text in ("", "+", "-"):
            im_text += "1"
        re_val = ctx.mpf(re_text) if re_text else ctx.zero
        return ctx.mpc(re_val, ctx.mpf(im_text))
    except (ValueError, TypeError) as exc:
        raise ValueError(f"cannot parse complex number {text!r}") from exc


def to_mpc(value, bits: int):
    """Convert ``value`` to an mpc of ``mpctx(bits)`` without rounding mpmath inputs."""
    ctx = mpctx(bits)
    if isinstance(value, str):
        return parse_complex(value, bits)
    return ctx.mpc(ctx.convert(value))


def classify(lam) -> LambdaClass:
    """Exact sign tests on the components of ``lam`` (no tolerance)."""
    re, im = lam.real, lam.imag
    if im > 0:
        return LambdaClass.IM_POSITIVE
    if im < 0:
        return LambdaClass.IM_NEGATIVE
    if re == 1:
        return LambdaClass.ONE
    if re > 0:
        return LambdaClass.REAL_POSITIVE_NOT_ONE
    if re < 0:
        return LambdaClass.REAL_NEGATIVE
    raise ZeroLambda("lambda must be nonzero")


@dataclass(frozen=True)
class ParamContext:
    """A nonzero parameter ``lambda`` with its principal-branch data.

    ``cap_lambda`` is ``2 pi i / log(lambda)`` and is ``None`` for
    ``lambda == 1``. All mpmath values belong to ``mpctx(bits)``.
    """

    lam: mpmath.mpc
    bits: int
    log_lambda: mpmath.mpc
    xi: mpmath.mpc
    cap_lambda: Optional[mpmath.mpc]
    lambda_class: LambdaClass

    @property
    def mp(self):
        return mpctx(self.bits)

    @property
    def is_one(self) -> bool:
        return self.lambda_class is LambdaClass.ONE

    @property
    def is_real(self) -> bool:
        return self.lambda_class.is_real

    def with_bits(self, bits: int) -> "ParamContext":
        if bits == self.bits:
            return self
        return make_context(self.lam, bits)

    def lam_complex(self) -> complex:
        return complex(self.lam)

    def __repr__(self) -> str:
        return f"ParamContext(lam={mpmath.nstr(self.lam, 17)}, class={self.lambda_class.value}, bits={self.bits})"


def make_context(lam, bits: Optional[int] = None) -> ParamContext:
    if bits is None:
        bits = default_bits()
    ctx = mpctx(bits)
    lam = to_mpc(lam, bits)
    cls = classify(lam)
    if cls is LambdaClass.ONE:
        log_lambda = ctx.mpc(0)
    elif cls is LambdaClass.REAL_NEGATIVE:
        # mpmath carries no signed zero, but be explicit about the branch
        log_lambda = ctx.mpc(ctx.log(-lam.real), ctx.pi)
    else:
        log_lambda = ctx.log(lam)
        if cls is LambdaClass.IM_NEGATIVE and log_lambda.imag <= -ctx.pi:
            # the true argument exceeds -pi; keep it on the principal branch
            log_lambda = ctx.mpc(log_lambda.real, -ctx.pi + ctx.ldexp(ctx.pi, -bits))
    two_pi_i = ctx.mpc(0, 2 * ctx.pi)
    xi = log_lambda / two_pi_i
    cap = None if cls is LambdaClass.ONE else two_pi_i / log_lambda
    return ParamContext(lam, bits, log_lambda, xi, cap, cls)


@dataclass(frozen=True)
class Pole:
    """``value = 2 pi i k - log(lambda) = modulus * exp(2 pi i angle)``; angle in turns."""

    k: int
    value: mpmath.mpc
    modulus: mpmath.mpf
    angle: mpmath.mpf


def pole_value(ctx: ParamContext, k: int):
    mp = ctx.mp
    return mp.mpc(0, 2 * mp.pi * k) - ctx.log_lambda


def pole(ctx: ParamContext, k: int) -> Pole:
    if ctx.is_one and k == 0:
        raise ExcludedPole("0 is a removable singularity when lambda = 1")
    mp = ctx.mp
    value = pole_value(ctx, k)
    angle = mp.arg(value) / (2 * mp.pi)
    if angle < 0:
        angle += 1
    if angle >= 1:
        angle -= 1
    return Pole(int(k), value, abs(value), angle)


def chain_indices(lambda_class: LambdaClass) -> Iterator[int]:
    """Pole indices in nondecreasing modulus order.

    Equal-modulus ties for real lambda come out as ``(k, -k)`` for
    ``lambda > 0`` and ``(-k, k+1)`` for ``lambda < 0``.
    """
    if lambda_class is LambdaClass.REAL_NEGATIVE:
        for k in itertools.count(0):
            yield -k
            yield k + 1
        return
    if lambda_class is not LambdaClass.ONE:
        yield 0
    first = -1 if lambda_class is LambdaClass.IM_NEGATIVE else 1
    for k in itertools.count(1):
        yield first * k
        yield -first * k


def pole_chain(ctx: ParamContext, count: int) -> list[Pole]:
    if count < 1:
        raise ValueError("count must be >= 1")
    return [pole(ctx, k) for k in itertools.islice(chain_indices(ctx.lambda_class), count)]


def pole_groups(ctx: ParamContext, count: int) -> list[tuple[Pole, ...]]:
    """First ``count`` equal-modulus groups of the chain (pairs for real lambda)."""
    cls = ctx.lambda_class
    chain = pole_chain(ctx, 2 * count + 1)
    groups: list[tuple[Pole, ...]] = []
    i = 0
    while len(groups) < count:
        if cls is LambdaClass.REAL_NEGATIVE or (
            cls in (LambdaClass.REAL_POSITIVE_NOT_ONE, LambdaClass.ONE) and chain[i].k != 0
        ):
            groups.append((chain[i], chain[i + 1]))
            i += 2
        else:
            groups.append((chain[i],))
            i += 1
    return groups


@dataclass(frozen=True)
class TruncationSet:
    """An admissible finite pole set with its gap radius ``mu``.

    ``indices`` are listed in chain order; ``mu`` is the smallest modulus
    among the excluded poles.
    """

    kind: TruncationKind
    m: int
    indices: tuple[int, ...]
    mu: mpmath.mpf
    max_member_modulus: mpmath.mpf
    lambda_class: LambdaClass

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, k: int) -> bool:
        return k in self.indices


def admissible_kinds(lambda_class: LambdaClass) -> tuple[TruncationKind, ...]:
    return ADMISSIBLE_KINDS[lambda_class]


def _boundary_index(kind: TruncationKind, cls: LambdaClass, m: int) -> int:
    if kind is TruncationKind.ZM:
        return -(m + 1) if cls is LambdaClass.IM_NEGATIVE else m + 1
    if kind is TruncationKind.ZM_PLUS:
        return -(m + 1)
    return m + 1


def truncation_set(ctx: ParamContext, kind, m: int) -> TruncationSet:
    kind = TruncationKind(kind) if not isinstance(kind, TruncationKind) else kind
    cls = ctx.lambda_class
    if m < 0:
        raise ValueError("m must be >= 0")
    if kind not in ADMISSIBLE_KINDS[cls]:
        raise InadmissibleKind(f"{kind.value} is not admissible for lambda class {cls.value}")
    if cls is LambdaClass.ONE and m == 0:
        raise EmptySet("for lambda = 1, Z_0 is empty")
    members = {k for k in range(-m, m + 1) if not (cls is LambdaClass.ONE and k == 0)}
    if kind is TruncationKind.ZM_PLUS:
        members.add(m + 1)
    elif kind is TruncationKind.ZM_MINUS:
        members.add(-(m + 1))
    indices = tuple(
        itertools.islice((k for k in chain_indices(cls) if k in members), len(members))
    )
    moduli = [abs(pole_value(ctx, k)) for k in indices]
    mu = abs(pole_value(ctx, _boundary_index(kind, cls, m)))
    max_member = max(moduli)
    if not max_member < mu:
        raise AssertionError("truncation gap invariant violated")
    return TruncationSet(kind, m, indices, mu, max_member, cls)


def excluded_indices(F: TruncationSet, cutoff: int) -> Iterator[int]:
    """Pole indices with ``|k| <= cutoff`` that are not in ``F``."""
    for k in range(-cutoff, cutoff + 1):
        if k in F.indices:
            continue
        if F.lambda_class is LambdaClass.ONE and k == 0:
            continue
        yield k
