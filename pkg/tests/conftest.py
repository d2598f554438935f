from fractions import Fraction

import pytest

from qgalois import kernels
from qgalois.hyperseries import HGParams
from qgalois.specfun import QContext
from qgalois.spiral import Spiral

KERNEL_NAMES = ("qpoch_finite", "qpoch_inf", "qpoch_inf_dual", "theta_laurent",
                "phi21_sum", "phi21_dual")


@pytest.fixture(params=sorted(kernels.backends()))
def backend(request, monkeypatch):
    """Run the test once per available kernel implementation."""
    impl = kernels.backends()[request.param]
    for name in KERNEL_NAMES:
        monkeypatch.setattr(kernels, name, getattr(impl, name))
    return request.param


def sp(omega, turn=0):
    """Exact spiral ``exp(2 pi i turn) q^omega`` from strings or numbers."""
    return Spiral(Fraction(omega), Fraction(turn))


def params(q, a, b, c):
    ctx = QContext(q)
    return ctx, HGParams.make(ctx, a, b, c)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
