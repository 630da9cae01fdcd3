import os
import subprocess
import sys

import numpy as np
import pytest

import oracles
from apostol import _pykernels, kernels

try:
    from apostol import _ckernels
except ImportError:  # extension not built in this environment
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

LAMBDAS = [2.0, 1.0, 1j, -3.0, 0.5 - 0.25j]


def close(a, b, rtol=1e-13):
    a, b = np.asarray(a), np.asarray(b)
    return np.all(np.abs(a - b) <= rtol * np.maximum(np.abs(b), 1e-300))


@needs_ext
@pytest.mark.parametrize("lam", LAMBDAS)
def test_numbers_backends_agree(lam):
    assert close(_ckernels.numbers_scaled(lam, 30), _pykernels.numbers_scaled(lam, 30))


@needs_ext
@pytest.mark.parametrize("lam", LAMBDAS)
def test_direct_backends_agree(lam):
    for x in (0.0, 0.3 + 0.2j, -1.5):
        assert close(_ckernels.direct_scaled(lam, x, 25), _pykernels.direct_scaled(lam, x, 25))


@needs_ext
def test_shift_horner_sums_backends_agree():
    rng = np.random.default_rng(3)
    b = rng.normal(size=20) + 1j * rng.normal(size=20)
    assert close(_ckernels.appell_shift(b, 0.4 - 0.7j), _pykernels.appell_shift(b, 0.4 - 0.7j))
    xs = np.linspace(0, 1, 33)
    assert close(_ckernels.horner_many(b, xs), _pykernels.horner_many(b, xs))
    poles = [2j * np.pi * k - np.log(2) for k in range(-3, 4)]
    assert close(_ckernels.pole_power_sums(poles, 0.3, 2, 12), _pykernels.pole_power_sums(poles, 0.3, 2, 12))
    assert close(_ckernels.inverse_factorials(20), _pykernels.inverse_factorials(20), 0)


@pytest.mark.parametrize("impl", [_pykernels, kernels], ids=["python", "selected"])
@pytest.mark.parametrize("lam", LAMBDAS)
def test_kernels_match_contour_oracle(impl, lam):
    x = 0.3 + 0.2j
    vals = impl.direct_scaled(lam, x, 20)
    shifted = impl.appell_shift(impl.numbers_scaled(lam, 20), x)
    for n in range(1, 21):
        ref = complex(oracles.contour_scaled(lam, x, n, dps=30))
        assert abs(vals[n] - ref) <= 1e-11 * max(abs(ref), 1e-300)
        assert abs(shifted[n] - ref) <= 1e-11 * max(abs(ref), 1e-300)


@pytest.mark.parametrize("impl", [_pykernels, kernels], ids=["python", "selected"])
def test_horner_and_power_sums(impl):
    coeffs = [1, -2, 0.5j]
    xs = np.array([0.0, 1.0, 2.0 + 1j])
    expected = [1 - 2 * x + 0.5j * x * x for x in xs]
    assert close(impl.horner_many(coeffs, xs), expected)
    poles = [1 + 1j, -2.0]
    out = impl.pole_power_sums(poles, 0.5, 3, 5)
    for i, n in enumerate(range(3, 6)):
        ref = sum(np.exp(a * 0.5) / a**n for a in poles)
        assert abs(out[i] - ref) < 1e-14 * abs(ref)


def test_backend_selection_by_environment():
    code = "from apostol import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, APOSTOL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    env["APOSTOL_PURE_PYTHON"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == ("cython" if _ckernels is not None else "python")
