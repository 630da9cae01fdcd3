"""Adaptive composite Gauss-Legendre quadrature on a finite interval.

Each panel is integrated once whole and once as two halves; a panel is
accepted when the two estimates agree to its share of the tolerance. The
tolerance is relative to ``int |f|`` so that integrals which cancel to
(nearly) zero are still well posed.
"""

from __future__ import annotations

import functools

import numpy as np

from .errors import QuadratureNonConvergence
from .precision import mpctx

PANEL_ORDER = 20
MAX_PANELS = 4096
# a tolerance below this many unit roundoffs cannot be told apart from noise
ROUNDOFF_FLOOR = 8


@functools.lru_cache(maxsize=8)
def _nodes_double(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


@functools.lru_cache(maxsize=16)
def legendre_nodes_mp(order: int, bits: int):
    """Nodes and weights on [-1, 1] by Newton iteration on P_order."""
    mp = mpctx(bits + 20)
    nodes, weights = [], []
    for i in range(1, order // 2 + 1):
        x = mp.cos(mp.pi * (i - mp.mpf(1) / 4) / (order + mp.mpf(1) / 2))
        for _ in range(100):
            p0, p1 = mp.one, x
            for j in range(2, order + 1):
                p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
            dp = order * (x * p1 - p0) / (x * x - 1)
            dx = p1 / dp
            x -= dx
            if abs(dx) < mp.ldexp(1, -(bits + 10)):
                break
        p0, p1 = mp.one, x
        for j in range(2, order + 1):
            p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
        dp = order * (x * p1 - p0) / (x * x - 1)
        w = 2 / ((1 - x * x) * dp * dp)
        nodes += [x, -x]
        weights += [w, w]
    if order % 2:
        p0, p1 = mp.one, mp.zero
        for j in range(2, order + 1):
            p0, p1 = p1, ((2 * j - 1) * 0 * p1 - (j - 1) * p0) / j
        # derivative of P_order at 0 via P'_n(0) = n P_{n-1}(0)
        dp = order * p0
        nodes.append(mp.zero)
        weights.append(2 / (dp * dp))
    return tuple(nodes), tuple(weights)


def _check_reachable(tol, bits: int) -> None:
    if tol < ROUNDOFF_FLOOR * 2.0 ** (-bits):
        raise QuadratureNonConvergence(
            f"tolerance {float(tol):g} is below the {bits}-bit rounding level and cannot be confirmed"
        )


def _adaptive(panel, a, b, tol, max_panels):
    whole, l1 = panel(a, b)
    scale = l1 if l1 > 0 else 1.0
    total = 0
    stack = [(a, b, whole)]
    evaluated = 1
    width = b - a
    while stack:
        lo, hi, est = stack.pop()
        mid = (lo + hi) / 2
        left, _ = panel(lo, mid)
        right, _ = panel(mid, hi)
        evaluated += 2
        if abs(left + right - est) <= tol * scale * (hi - lo) / width:
            total += left + right
            continue
        if evaluated > max_panels:
            raise QuadratureNonConvergence(
                f"tolerance {tol:g} not reached within {max_panels} panels"
            )
        stack.append((mid, hi, right))
        stack.append((lo, mid, left))
    return total, scale


def integrate_double(
    f, a: float, b: float, tol: float, order: int = PANEL_ORDER, max_panels: int = MAX_PANELS, with_scale: bool = False
):
    """Integrate a vectorised complex function ``f(xs)`` over ``[a, b]``.

    With ``with_scale`` the estimate of ``int |f|`` is returned as well.
    """
    _check_reachable(tol, 53)
    x, w = _nodes_double(order)

    def panel(lo, hi):
        half = 0.5 * (hi - lo)
        vals = f(half * x + 0.5 * (hi + lo))
        return complex(half * np.dot(w, vals)), float(half * np.dot(w, np.abs(vals)))

    total, scale = _adaptive(panel, float(a), float(b), tol, max_panels)
    return (total, scale) if with_scale else total


def integrate_mp(f, a, b, tol, bits: int, order: int = PANEL_ORDER, max_panels: int = MAX_PANELS):
    """Integrate a scalar mpmath function ``f(x)`` over ``[a, b]`` at ``bits``."""
    _check_reachable(tol, bits)
    mp = mpctx(bits)
    x, w = legendre_nodes_mp(order, bits)

    def panel(lo, hi):
        half = (hi - lo) / 2
        c = (hi + lo) / 2
        vals = [f(half * xi + c) for xi in x]
        return half * mp.fsum(wi * v for wi, v in zip(w, vals)), half * mp.fsum(
            wi * abs(v) for wi, v in zip(w, vals)
        )

    return _adaptive(panel, mp.mpf(a), mp.mpf(b), mp.mpf(tol), max_panels)[0]
