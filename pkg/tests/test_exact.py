import warnings

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from apostol.errors import IllConditionedWarning, QuadratureNonConvergence
from apostol.exact import (
    ab_numbers_scaled,
    ab_poly_direct,
    ab_poly_scaled,
    effective_bits,
    fourier_coefficient_closed_form,
    fourier_coefficient_quadrature,
    poly_raw,
    zero_lambda_poly_scaled,
)
from apostol.params import make_context, to_mpc
from apostol.precision import PrecisionConfig

LAMBDAS = ["2", "0.5", "0+1i", "0-1i", "-2", "1", "-3", "0.5+0.8i", "-1"]


def test_numbers_lambda_two():
    b = ab_numbers_scaled(make_context(2), 3)
    assert b[0].value == 0 and b[1].value == 1 and b[2].value == -2
    # sanity form B_2(0; lambda) = -2 lambda/(lambda-1)^2
    assert abs(b[2].value * 2 - (-4)) < 1e-35


def test_numbers_lambda_one_match_classical():
    b = ab_numbers_scaled(make_context(1), 20)
    for n in range(21):
        with mpmath.workdps(50):
            ref = mpmath.bernoulli(n) / mpmath.factorial(n)
        assert abs(b[n].value - ref) < 1e-35
    # B_2(1) = 1/6
    c = make_context(1)
    v = ab_poly_scaled(c, 1, 2)[2].value
    assert abs(v * 2 - c.mp.mpf(1) / 6) < 1e-35


@pytest.mark.parametrize("lam", ["2", "0+1i", "-3", "0.5-0.25i"])
def test_low_order_values(lam):
    c = make_context(lam)
    for z in ("0", "0.3+0.7i", "-2"):
        b = ab_poly_scaled(c, z, 2)
        assert b[0].value == 0
        assert abs(b[1].value - 1 / (c.lam - 1)) < 1e-35


def test_zero_lambda_special_case():
    vals = zero_lambda_poly_scaled("0.4", 5)
    with mpmath.workdps(40):
        x = mpmath.mpf("0.4")
        assert abs(vals[3].value * 6 - (-3 * x**2)) < 1e-30
        for n in range(1, 6):
            assert abs(vals[n].value * mpmath.factorial(n) + n * x ** (n - 1)) < 1e-30
    assert vals[0].value == 0


def test_classical_half():
    c = make_context(1)
    v = ab_poly_scaled(c, "0.5", 2)[2].value
    assert abs(v + c.mp.mpf(1) / 24) < 1e-35


def test_direct_examples():
    assert abs(ab_poly_direct(make_context(2), 0, 2).value + 2) < 1e-35
    assert ab_poly_direct(make_context(5), "0.3", 0).value == 0


@pytest.mark.parametrize("lam", LAMBDAS)
def test_against_contour_oracle(lam):
    c = make_context(lam)
    z = "0.3+0.2i"
    vals = ab_poly_scaled(c, z, 30)
    for n in range(1, 31):
        ref = oracles.contour_scaled(c.lam, vals[n].z, n)
        assert abs(vals[n].value - ref) <= 2.0**-110 * max(abs(ref), 1e-300)


@pytest.mark.parametrize("lam", LAMBDAS)
def test_boundary_identity(lam):
    c = make_context(lam)
    mp = c.mp
    b1 = poly_raw(c, mp.mpc(1), 40, c.bits)
    b0 = poly_raw(c, mp.mpc(0), 40, c.bits)
    for n in range(2, 41):
        # rounding is relative to the terms of the binomial shift, which
        # matters when b_n itself vanishes (odd n at lambda = 1)
        scale = mp.fsum(abs(b0[n - k]) / mp.factorial(k) for k in range(n + 1))
        assert abs(c.lam * b1[n] - b0[n]) <= 2.0**-115 * scale


@pytest.mark.parametrize("lam", LAMBDAS)
def test_two_paths_agree(lam):
    c = make_context(lam)
    for z in ("0", "0.7", "1.5-0.4i", "-0.7i"):
        scaled = ab_poly_scaled(c, z, 40)
        for n in (0, 1, 2, 7, 20, 40):
            d = ab_poly_direct(c, z, n).value
            ref = scaled[n].value
            assert abs(d - ref) <= 2.0 ** (-c.bits + 10) * max(abs(ref), 1e-300) or ref == d


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(LAMBDAS),
    st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
)
def test_appell_shift_property(lam, z, w):
    c = make_context(lam)
    mp = c.mp
    zz, ww = to_mpc(z, c.bits), to_mpc(w, c.bits)
    at_sum = poly_raw(c, zz + ww, 30, c.bits)
    at_z = poly_raw(c, zz, 30, c.bits)
    for n in (5, 17, 30):
        shifted = mp.fsum(at_z[n - k] * ww**k / mp.factorial(k) for k in range(n + 1))
        scale = mp.fsum(abs(at_z[n - k] * ww**k / mp.factorial(k)) for k in range(n + 1))
        assert abs(shifted - at_sum[n]) <= 2.0**-110 * max(scale, 1e-300)


@pytest.mark.parametrize("lam", ["2", "0+1i", "-3", "0.5"])
def test_leading_coefficient(lam):
    c = make_context(lam)
    mp = c.mp
    n = 7
    vals = [ab_poly_direct(c, j, n).value * mp.factorial(n) for j in range(n + 1)]
    # B_n has degree n - 1 when lambda != 1, so its (n-1)-th difference is
    # (n-1)! times the leading coefficient
    diff = mp.fsum((-1) ** (n - 1 - j) * mp.binomial(n - 1, j) * vals[j] for j in range(n))
    assert abs(diff / mp.factorial(n - 1) - n / (c.lam - 1)) < 1e-25


def test_near_one_warns_and_doubles():
    c = make_context("1.0001")
    with pytest.warns(IllConditionedWarning):
        bits = effective_bits(c, PrecisionConfig())
    assert bits == 256
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert effective_bits(make_context(2), PrecisionConfig()) == 128


def test_double_precision_path_close_to_mp():
    c = make_context("0.5+0.8i")
    lo = ab_poly_scaled(c, "0.3", 25, PrecisionConfig(working_bits=53))
    hi = ab_poly_scaled(c, "0.3", 25)
    for n in range(1, 26):
        assert abs(lo[n].value - hi[n].value) <= 1e-11 * abs(hi[n].value)


def test_fourier_closed_form_examples():
    c = make_context(2)
    v = fourier_coefficient_closed_form(c, 2, 0)
    assert float(v.real) == pytest.approx(-2.0814, abs=1e-4)
    q = fourier_coefficient_quadrature(c, 2, 0)
    assert abs(q - v) < 1e-10
    v = fourier_coefficient_closed_form(c, 3, 1)
    assert abs(v + 1 / (c.mp.mpc(0, 2 * c.mp.pi) - c.mp.log(2)) ** 3) < 1e-35
    assert fourier_coefficient_closed_form(make_context(1), 2, 0) == 0
    assert abs(fourier_coefficient_quadrature(make_context(1), 2, 0)) < 1e-12


def _l1(c, n):
    """``int_0^1 |lambda^x b_n(x)| dx``, the scale the quadrature tolerance refers to."""
    b = [complex(v) for v in poly_raw(c, c.mp.mpc(0), n, c.bits)]
    L = complex(c.log_lambda)
    with mpmath.workdps(20):
        return mpmath.quad(
            lambda x: abs(mpmath.exp(x * L) * sum(b[n - j] * x**j / mpmath.factorial(j) for j in range(n + 1))),
            [0, 1],
        )


@pytest.mark.parametrize("lam", ["2", "0+1i", "-3", "1"])
def test_quadrature_matches_closed_form(lam):
    c = make_context(lam)
    prec = PrecisionConfig()
    for n in range(1, 7):
        scale = _l1(c, n)
        for k in range(-3, 4):
            exact = fourier_coefficient_closed_form(c, n, k)
            quad = fourier_coefficient_quadrature(c, n, k, prec)
            assert abs(quad - exact) <= 10 * prec.quadrature_tolerance * scale


def test_quadrature_against_independent_oracle():
    c = make_context(2)
    quad = fourier_coefficient_quadrature(c, 3, 1)
    ref = oracles.fourier_quadrature(2, 3, 1)
    assert abs(complex(quad) - complex(ref)) < 1e-12


def test_quadrature_high_precision_path():
    c = make_context("0+1i")
    prec = PrecisionConfig(quadrature_tolerance=1e-25)
    quad = fourier_coefficient_quadrature(c, 4, -1, prec)
    assert abs(quad - fourier_coefficient_closed_form(c, 4, -1)) < 1e-22


def test_quadrature_budget_exhaustion():
    from apostol.quadrature import integrate_double
    import numpy as np

    with pytest.raises(QuadratureNonConvergence):
        integrate_double(lambda x: np.sin(1 / (x + 1e-9)), 0.0, 1.0, 1e-14, max_panels=16)


def test_quadrature_tolerance_below_rounding_is_refused():
    prec = PrecisionConfig(working_bits=53, quadrature_tolerance=1e-30)
    with pytest.raises(QuadratureNonConvergence):
        fourier_coefficient_quadrature(make_context(2), 3, 0, prec)
