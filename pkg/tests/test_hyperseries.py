import cmath

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgalois.errors import DivergentInput, PoleInC
from qgalois.hyperseries import HGParams, dphi21_dc_at_q, phi21, phi21_dual, terminating_index
from qgalois.specfun import QContext

from conftest import sp


def mp_phi21(a, b, c, z, q, terms=200):
    mpmath.mp.dps = 40
    a, b, c, z, q = (mpmath.mpc(x) for x in (a, b, c, z, q))
    s, t = mpmath.mpc(0), mpmath.mpc(1)
    for n in range(terms):
        s += t
        t *= (1 - a * q ** n) * (1 - b * q ** n) / ((1 - c * q ** n) * (1 - q ** (n + 1))) * z
    return complex(s)


def richardson(f, h):
    """Central difference with one Richardson step (error O(h^4))."""
    d1 = (f(h) - f(-h)) / (2 * h)
    d2 = (f(h / 2) - f(-h / 2)) / h
    return (4 * d2 - d1) / 3


def test_phi21_reference_value(backend):
    ctx = QContext(0.5)
    assert abs(phi21(ctx, 0.2, 0.3, 0.7, 0.4) - mp_phi21(0.2, 0.3, 0.7, 0.4, 0.5)) < 1e-14


def test_phi21_random_against_extended_precision(backend):
    rng = np.random.default_rng(3)
    for _ in range(20):
        q = cmath.rect(rng.uniform(0.1, 0.7), rng.uniform(-1, 1))
        a, b, c = (cmath.rect(rng.uniform(0.2, 2), rng.uniform(0, 6.28)) for _ in range(3))
        z = cmath.rect(rng.uniform(0, 0.9), rng.uniform(0, 6.28))
        ref = mp_phi21(a, b, c, z, q, 400)
        assert abs(phi21(QContext(q), a, b, c, z) - ref) < 1e-10 * abs(ref)


def test_phi21_contiguity():
    # phi(a,b;c;z) - phi(a,bq;c;z) = -b (1-a) z / (1-c) phi(aq,bq;cq;z)
    ctx = QContext(0.4)
    a, b, c, z = 0.3 + 0.1j, 0.6, -0.5, 0.45
    q = ctx.q
    lhs = phi21(ctx, a, b, c, z) - phi21(ctx, a, b * q, c, z)
    rhs = -b * (1 - a) * z / (1 - c) * phi21(ctx, a * q, b * q, c * q, z)
    assert abs(lhs - rhs) < 1e-14


def test_phi21_terminating_any_z():
    ctx = QContext(0.5)
    # a = q^{-2}: three terms
    a, b, c, z = 4.0, 0.3, 0.7, 2.0
    ref = mp_phi21(a, b, c, z, 0.5, 3)
    assert terminating_index(ctx, a, b) == 2
    assert abs(phi21(ctx, a, b, c, z) - ref) < 1e-13 * abs(ref)
    assert terminating_index(ctx, sp(-3), 0.2) == 3


def test_phi21_errors():
    ctx = QContext(0.5)
    with pytest.raises(DivergentInput):
        phi21(ctx, 0.2, 0.3, 0.7, 1.2)
    with pytest.raises(PoleInC):
        phi21(ctx, 0.2, 0.3, 4.0, 0.5)


def test_phi21_dual_against_richardson():
    ctx = QContext(0.3 + 0.2j)
    a, b, c, z = 0.4, 0.2 - 0.3j, 0.8j, 0.5
    da, db, dc = 1.0, -0.5j, 0.3

    def f(t):
        return phi21(ctx, a + t * da, b + t * db, c + t * dc, z)

    _, d = phi21_dual(ctx, a, da, b, db, c, dc, z)
    assert abs(d - richardson(f, 1e-3)) < 1e-9 * abs(d)


def dc_oracles(ctx, a, b, z, h=1e-3):
    q = ctx.q
    f1 = lambda t: phi21(ctx, a, b, q + t, z)  # noqa: E731
    f2 = lambda t: phi21(ctx, a * q / (q + t), b * q / (q + t), q * q / (q + t), z)  # noqa: E731
    return richardson(f1, h), richardson(f2, h)


def test_dphi21_dc_at_q_random():
    rng = np.random.default_rng(11)
    for _ in range(20):
        q = rng.uniform(0.15, 0.6)
        ctx = QContext(q)
        a, b = (cmath.rect(rng.uniform(0.2, 2), rng.uniform(0.3, 6)) for _ in range(2))
        z = cmath.rect(rng.uniform(0.05, 0.85), rng.uniform(0, 6.28))
        d1, d2 = dphi21_dc_at_q(ctx, a, b, z)
        r1, r2 = dc_oracles(ctx, a, b, z)
        assert abs(d1 - r1) < 1e-7 * max(1, abs(r1))
        assert abs(d2 - r2) < 1e-7 * max(1, abs(r2))


@settings(max_examples=40, deadline=None)
@given(o=st.fractions(-3, 3, max_denominator=7), t=st.fractions(0, 1, max_denominator=5))
def test_params_exact_and_numeric_agree(o, t):
    ctx = QContext(0.3)
    s = sp(o, t)
    p = HGParams.make(ctx, s, sp("0.3"), sp("0.4"))
    assert p.exact is not None
    assert abs(p.a - s.value(ctx)) < 1e-12 * abs(p.a)
    assert float(o) == pytest.approx(p.alpha)
    assert p.swapped().b == p.a and p.swapped().exact[1] == s
