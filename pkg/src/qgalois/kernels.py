"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the pure-Python
module takes over. ``QGALOIS_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("QGALOIS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

OK = _pykernels.OK
CAPPED = _pykernels.CAPPED
POLE = _pykernels.POLE

qpoch_finite = _impl.qpoch_finite
qpoch_inf = _impl.qpoch_inf
qpoch_inf_dual = _impl.qpoch_inf_dual
theta_laurent = _impl.theta_laurent
phi21_sum = _impl.phi21_sum
phi21_dual = _impl.phi21_dual


def backends():
    """Available kernel modules keyed by name (for tests and benchmarks)."""
    out = {"python": _pykernels}
    try:
        from . import _kernels as _compiled
    except ImportError:
        return out
    out["cython"] = _compiled
    return out
