"""Working-precision configuration and per-thread mpmath contexts."""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass, replace

import mpmath

DEFAULT_BITS = 128
ENV_BITS = "APOSTOL_PRECISION_BITS"

_local = threading.local()


def default_bits() -> int:
    raw = os.environ.get(ENV_BITS)
    if not raw:
        return DEFAULT_BITS
    bits = int(raw)
    if bits < 53:
        raise ValueError(f"{ENV_BITS}={raw} is below 53 bits")
    return bits


@dataclass(frozen=True)
class PrecisionConfig:
    """Precision knobs shared by the evaluation routines.

    ``working_bits`` is the mantissa width used for arbitrary-precision
    arithmetic; at exactly 53 bits the complex-double kernels are used
    instead. ``conditioning_threshold`` is the smallest ``|lambda - 1|``
    accepted without an :class:`~apostol.errors.IllConditionedWarning`.
    """

    working_bits: int = DEFAULT_BITS
    conditioning_threshold: float = 1e-3
    quadrature_tolerance: float = 1e-12

    def __post_init__(self) -> None:
        if int(self.working_bits) != self.working_bits or self.working_bits < 53:
            raise ValueError(f"working_bits must be an integer >= 53, got {self.working_bits}")
        if not self.conditioning_threshold > 0:
            raise ValueError("conditioning_threshold must be positive")
        if not self.quadrature_tolerance > 0:
            raise ValueError("quadrature_tolerance must be positive")

    @classmethod
    def from_env(cls, **overrides) -> "PrecisionConfig":
        overrides.setdefault("working_bits", default_bits())
        return cls(**overrides)

    def with_bits(self, bits: int) -> "PrecisionConfig":
        return replace(self, working_bits=int(bits))

    @property
    def use_double(self) -> bool:
        return self.working_bits <= 53

    @property
    def digits(self) -> int:
        """Decimal digits that are fully determined by ``working_bits``."""
        return int(self.working_bits * math.log10(2))


def mpctx(bits: int) -> mpmath.ctx_mp.MPContext:
    """Return a private mpmath context at ``bits`` for the calling thread.

    Contexts are cached per thread so concurrent callers never share the
    mutable precision state of ``mpmath.mp``.
    """
    cache = getattr(_local, "contexts", None)
    if cache is None:
        cache = _local.contexts = {}
    ctx = cache.get(bits)
    if ctx is None:
        ctx = mpmath.MPContext()
        ctx.prec = bits
        cache[bits] = ctx
    return ctx


def bits_to_resolve(base_bits: int, scale, target) -> int:
    """Bits needed so rounding at magnitude ``scale`` stays below ``target``.

    Adds ``base_bits`` of headroom on top of the ratio so that the resolved
    quantity itself carries roughly ``base_bits`` of accuracy.
    """
    scale = abs(scale)
    target = abs(target)
    if target == 0 or scale == 0:
        return base_bits
    ratio = float(mpmath.log(mpmath.mpf(scale) / mpmath.mpf(target), 2))
    return base_bits + max(0, int(math.ceil(ratio))) + 16
