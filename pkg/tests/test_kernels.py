import os
import subprocess
import sys

import pytest

from qgalois import _pykernels, kernels

CASES_PHI = [
    (0.2, 0.3, 0.7, 0.4 + 0.1j, 0.5, -1),
    (0.5j, -0.3, 0.6 + 0.2j, -0.8, 0.3 + 0.4j, -1),
    (4.0, 0.3, 0.7, 2.0, 0.5, 2),
]


@pytest.fixture
def compiled():
    impl = kernels.backends().get("cython")
    if impl is None:
        pytest.skip("compiled extension not built")
    return impl


def test_backend_flag_matches_module():
    assert kernels.BACKEND in kernels.backends()


def test_pure_python_switch():
    env = dict(os.environ, QGALOIS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from qgalois import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_theta_laurent_agree(compiled):
    for z in (0.5 + 0.5j, -0.9, 0.31j):
        a = _pykernels.theta_laurent(z, 0.3 + 0.4j, 1e-16, 400)
        b = compiled.theta_laurent(z, 0.3 + 0.4j, 1e-16, 400)
        assert a[3] == b[3] == kernels.OK
        assert abs(a[0] - b[0]) < 1e-14 * abs(a[0])
        assert abs(a[1] - b[1]) < 1e-13 * abs(a[1])


@pytest.mark.parametrize("a,b,c,z,q,nterm", CASES_PHI)
def test_phi21_agree(compiled, a, b, c, z, q, nterm):
    s1, n1, st1 = _pykernels.phi21_sum(a, b, c, z, q, 1e-15, 20000, nterm)
    s2, n2, st2 = compiled.phi21_sum(a, b, c, z, q, 1e-15, 20000, nterm)
    assert st1 == st2 == kernels.OK and n1 == n2
    assert abs(s1 - s2) < 1e-14 * abs(s1)


def test_phi21_dual_agree(compiled):
    args = (0.2, 1.0, 0.3, -0.5, 0.7, 0.2j, 0.4, 0.0, 0.5, 1e-15, 20000)
    r1 = _pykernels.phi21_dual(*args)
    r2 = compiled.phi21_dual(*args)
    assert abs(r1[0] - r2[0]) < 1e-14 and abs(r1[1] - r2[1]) < 1e-13


def test_qpoch_agree(compiled):
    for a in (0.3, 2.0 - 1j):
        assert abs(_pykernels.qpoch_inf(a, 0.5, 1e-17, 512)[0]
                   - compiled.qpoch_inf(a, 0.5, 1e-17, 512)[0]) < 1e-14
        assert _pykernels.qpoch_finite(a, 0.5, 7) == pytest.approx(compiled.qpoch_finite(a, 0.5, 7))


@pytest.mark.parametrize("impl_name", sorted(kernels.backends()))
def test_status_codes(impl_name):
    impl = kernels.backends()[impl_name]
    assert impl.phi21_sum(0.2, 0.3, 0.7, 0.5, 0.25, 1e-15, 100, -1)[2] == kernels.OK
    # (c;q)_n vanishes at n = 3 for c = q^{-2}
    assert impl.phi21_sum(0.2, 0.3, 16.0, 0.5, 0.25, 1e-15, 100, -1)[2] == kernels.POLE
    assert impl.phi21_sum(0.2, 0.3, 0.7, 0.999, 0.999, 1e-15, 5, -1)[2] == kernels.CAPPED
