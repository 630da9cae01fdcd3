"""Backend selection for the complex-double hot loops.

The Cython extension ``_ckernels`` is used when it was built; otherwise, or
when ``APOSTOL_PURE_PYTHON=1`` is set, the pure-Python twin is loaded.
"""

import os

if os.environ.get("APOSTOL_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _pykernels as _impl

        BACKEND = "python"

inverse_factorials = _impl.inverse_factorials
numbers_scaled = _impl.numbers_scaled
direct_scaled = _impl.direct_scaled
appell_shift = _impl.appell_shift
horner_many = _impl.horner_many
pole_power_sums = _impl.pole_power_sums

__all__ = [
    "BACKEND",
    "inverse_factorials",
    "numbers_scaled",
    "direct_scaled",
    "appell_shift",
    "horner_many",
    "pole_power_sums",
]
