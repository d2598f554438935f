"""Special-function layer: q-Pochhammer symbols, Jacobi theta, the
q-logarithm ``ell_q``, q-characters and the matrix characters ``e_J``.

All functions are pure in ``(ctx, inputs)``.  Theta is always evaluated by
reducing the argument into the fundamental annulus ``|q| < |z| <= 1`` with
the functional equation and summing the Laurent series there.  When that sum
cancels badly (|q| close to 1 and z close to a zero) the triple product is
used instead, since it keeps relative accuracy near the zeros.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import (NonConvergent, NonInvertible, NumericallyDefective,
                     PoleAt, PoleAtSpiral)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class QContext:
    """The base ``q`` together with numerical tolerances.

    ``tau`` is fixed by ``q = exp(-2 pi i tau)`` using the principal
    logarithm of ``q`` unless given explicitly.
    """

    q: complex
    tau: complex | None = None
    eps_term: float = 1e-14
    eps_id: float = 1e-9
    n_max_product: int = 512
    tol_mem: float = 1e-7
    guard_mem: float = 1e-4
    n_max_unity: int = 256
    n_max_series: int = 20000
    log_q: complex = field(init=False, repr=False)

    def __post_init__(self):
        q = complex(self.q)
        object.__setattr__(self, "q", q)
        if not 0.0 < abs(q) < 1.0:
            raise ValueError(f"need 0 < |q| < 1, got |q| = {abs(q)}")
        if self.tau is None:
            tau = 1j * cmath.log(q) / TWO_PI
        else:
            tau = complex(self.tau)
        object.__setattr__(self, "tau", tau)
        if abs(cmath.exp(-2j * math.pi * tau) - q) > self.eps_id:
            raise ValueError("tau does not satisfy q = exp(-2 pi i tau)")
        if not self.eps_term < self.eps_id:
            raise ValueError("eps_term must be smaller than eps_id")
        object.__setattr__(self, "log_q", -2j * math.pi * tau)

    def qpow(self, y) -> complex:
        """``q^y = exp(-2 pi i tau y)`` for any complex ``y``."""
        return cmath.exp(complex(y) * self.log_q)

    def omega(self, x: complex) -> float:
        """Real exponent with ``|q^omega| = |x|``."""
        return math.log(abs(x)) / math.log(abs(self.q))


@dataclass(frozen=True)
class Annulus:
    r_inner: float
    r_outer: float

    def __post_init__(self):
        if not 0.0 < self.r_inner < self.r_outer:
            raise ValueError("need 0 < r_inner < r_outer")

    @property
    def r_geo(self) -> float:
        return math.sqrt(self.r_inner * self.r_outer)


# --------------------------------------------------------------------------
# q-Pochhammer


def qpoch(ctx: QContext, a: complex, n=math.inf) -> complex:
    """``(a;q)_n``; ``n = inf`` gives the convergent infinite product."""
    if n == math.inf or n is None:
        value, used = kernels.qpoch_inf(complex(a), ctx.q, ctx.eps_term * 1e-3,
                                        ctx.n_max_product)
        if used >= ctx.n_max_product:
            raise NonConvergent(f"(a;q)_inf did not settle within {used} factors")
        return value
    n = int(n)
    if n < 0:
        raise ValueError("negative n")
    return kernels.qpoch_finite(complex(a), ctx.q, n)


def qpoch_dual(ctx: QContext, a: complex, da: complex) -> tuple[complex, complex]:
    """``(a;q)_inf`` and its derivative along ``a -> a + t da``."""
    p, dp, used = kernels.qpoch_inf_dual(complex(a), complex(da), ctx.q,
                                         ctx.eps_term * 1e-3, ctx.n_max_product)
    if used >= ctx.n_max_product:
        raise NonConvergent("dual q-Pochhammer did not settle")
    return p, dp


# --------------------------------------------------------------------------
# theta

_THETA_JMAX = 400
_MAX_LOG_FACTOR = 650.0


def _reduce(ctx: QContext, z: complex) -> tuple[int, complex]:
    """Write ``z = q^k z0`` with ``|q| < |z0| <= 1``."""
    om = ctx.omega(z)
    k = math.floor(om)
    if abs(om - round(om)) < 1e-13:
        k = int(round(om))
    z0 = z * ctx.qpow(-k)
    # qpow is exp-based; snap z0 into the band if rounding pushed it out
    if abs(z0) <= abs(ctx.q):
        k -= 1
        z0 = z * ctx.qpow(-k)
    return k, z0


# largest tolerated relative rounding bound of the Laurent sum
_CANCEL_LIMIT = 1e-11


def _theta_product_pair(ctx: QContext, z0: complex) -> tuple[complex, complex]:
    pq = qpoch(ctx, ctx.q)
    p1, dp1 = qpoch_dual(ctx, z0, 1.0)
    p2, dp2 = qpoch_dual(ctx, ctx.q / z0, -ctx.q / (z0 * z0))
    return pq * p1 * p2, pq * (dp1 * p2 + p1 * dp2)


def _theta_fundamental(ctx: QContext, z0: complex) -> tuple[complex, complex]:
    th, dth, _, status, mass = kernels.theta_laurent(z0, ctx.q, ctx.eps_term * 1e-2,
                                                     _THETA_JMAX)
    if status != kernels.OK:
        raise NonConvergent("theta Laurent series hit its term cap")
    if mass * 2.2e-16 > _CANCEL_LIMIT * abs(th):
        return _theta_product_pair(ctx, z0)
    return th, dth


def theta_pair(ctx: QContext, z: complex) -> tuple[complex, complex]:
    """``(theta_q(z), theta_q'(z))``."""
    z = complex(z)
    if z == 0:
        raise ValueError("theta is not defined at z = 0")
    k, z0 = _reduce(ctx, z)
    th0, dth0 = _theta_fundamental(ctx, z0)
    if k == 0:
        return th0, dth0
    # theta(q^k z0) = (-1)^k q^{-k(k-1)/2} z0^{-k} theta(z0)
    logf = -0.5 * k * (k - 1) * ctx.log_q - k * cmath.log(z0) + 1j * math.pi * k
    if logf.real > _MAX_LOG_FACTOR:
        raise NonConvergent(f"|z| = {abs(z)} is too far from the unit circle for theta")
    f = cmath.exp(logf)
    qk = ctx.qpow(-k)
    th = f * th0
    dth = f * qk * (dth0 - k * th0 / z0)
    return th, dth


def theta(ctx: QContext, z: complex, order: int = 0) -> complex:
    """Jacobi theta ``theta_q(z)`` (order 0) or its derivative (order 1)."""
    th, dth = theta_pair(ctx, z)
    if order == 0:
        return th
    if order == 1:
        return dth
    raise ValueError("order must be 0 or 1")


def theta_product(ctx: QContext, z: complex) -> complex:
    """Triple-product form ``(q;q)(z;q)(q/z;q)``; independent of the Laurent route."""
    return qpoch(ctx, ctx.q) * qpoch(ctx, z) * qpoch(ctx, ctx.q / z)


def spiral_distance(ctx: QContext, z: complex, base: complex = 1.0) -> float:
    """Distance from ``z`` to the spiral ``base * q^Z`` in log coordinates."""
    x = complex(z) / complex(base)
    n = round(ctx.omega(x))
    return abs(cmath.log(x * ctx.qpow(-n)))


def ell_q(ctx: QContext, z: complex) -> complex:
    """``ell_q(z) = -z theta'(z)/theta(z)``; satisfies ``ell_q(qz) = ell_q(z) + 1``."""
    z = complex(z)
    if spiral_distance(ctx, z) < ctx.eps_id:
        raise PoleAtSpiral(f"ell_q has a pole on q^Z (z = {z})")
    k, z0 = _reduce(ctx, z)
    th0, dth0 = _theta_fundamental(ctx, z0)
    return k - z0 * dth0 / th0


# --------------------------------------------------------------------------
# q-characters


def _ladder(ctx: QContext, lam: complex) -> tuple[int, complex]:
    """``lam = lam0 q^k`` with ``|q| < |lam0| <= 1``."""
    om = ctx.omega(lam)
    k = math.floor(om)
    if abs(om - round(om)) < 1e-12:
        k = int(round(om))
    return k, lam * ctx.qpow(-k)


def e_char(ctx: QContext, lam: complex, z: complex) -> complex:
    """Character at 0: ``e(qz) = lam e(z)``, normalised with ``e_1 = 1``, ``e_q = z``."""
    lam = complex(lam)
    z = complex(z)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    k, lam0 = _ladder(ctx, lam)
    zk = z ** k
    if abs(lam0 - 1.0) < 1e-14:
        return zk
    if spiral_distance(ctx, lam0 * z) < ctx.eps_id:
        raise PoleAt(f"q-character e_{lam} has a pole at z = {z}")
    return zk * theta(ctx, z) / theta(ctx, lam0 * z)


def e_char_inf(ctx: QContext, lam: complex, z: complex) -> complex:
    """Character at infinity, ``e_lam(1/z)`` built at 0 for ``1/lam``."""
    return e_char(ctx, 1.0 / complex(lam), 1.0 / complex(z))


# --------------------------------------------------------------------------
# branch-fixed powers and the twisting endomorphism g_z


def log_cut(z: complex) -> complex:
    """Logarithm with argument in ``[0, 2 pi)``; the cut is the positive real axis."""
    z = complex(z)
    arg = cmath.phase(z)
    if arg < 0.0:
        arg += TWO_PI
    return complex(math.log(abs(z)), arg)


def zpow(z: complex, s) -> complex:
    """``z^s`` on the branch of :func:`log_cut`."""
    return cmath.exp(complex(s) * log_cut(z))


def g_twist(ctx: QContext, x: complex, z: complex) -> complex:
    """``g_z(u q^omega) = z^omega``."""
    return zpow(z, ctx.omega(x))


# --------------------------------------------------------------------------
# 2x2 matrices

I2 = np.eye(2, dtype=complex)


def mat2(a, b, c, d) -> np.ndarray:
    return np.array([[a, b], [c, d]], dtype=complex)


def det2(m: np.ndarray) -> complex:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def det_cancellation(m: np.ndarray) -> float:
    """``|det m|`` relative to the size of its two products; tiny means singular."""
    size = abs(m[0, 0] * m[1, 1]) + abs(m[0, 1] * m[1, 0])
    if not np.isfinite(size) or size == 0.0:
        return 0.0
    return abs(det2(m)) / size


def inv2(m: np.ndarray) -> np.ndarray:
    d = det2(m)
    if d == 0:
        raise NonInvertible("singular 2x2 matrix")
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=complex) / d


def _eigvals(J: np.ndarray) -> tuple[complex, complex]:
    if J[1, 0] == 0 or J[0, 1] == 0:
        return complex(J[0, 0]), complex(J[1, 1])
    tr = J[0, 0] + J[1, 1]
    disc = cmath.sqrt(tr * tr - 4.0 * det2(J))
    return (tr + disc) / 2.0, (tr - disc) / 2.0


def _eigvec(J: np.ndarray, lam: complex) -> np.ndarray:
    m = J - lam * I2
    # null vector of a rank-one 2x2 matrix
    if abs(m[0, 0]) + abs(m[0, 1]) >= abs(m[1, 0]) + abs(m[1, 1]):
        v = np.array([-m[0, 1], m[0, 0]], dtype=complex)
    else:
        v = np.array([-m[1, 1], m[1, 0]], dtype=complex)
    if not np.any(v):
        v = np.array([1.0, 0.0], dtype=complex)
    return v


def dunford(J: np.ndarray, eps: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Multiplicative Dunford decomposition ``J = D U = U D``."""
    J = np.asarray(J, dtype=complex)
    if det2(J) == 0:
        raise NonInvertible("J must be invertible")
    l1, l2 = _eigvals(J)
    if l1 == l2:
        D = l1 * I2
        return D, J / l1
    if abs(l1 / l2 - 1.0) < eps:
        raise NumericallyDefective(f"eigenvalues {l1}, {l2} nearly coincide")
    return J.copy(), I2.copy()


def _apply_on_semisimple(D: np.ndarray, f) -> np.ndarray:
    """``V diag(f(l1), f(l2)) V^{-1}`` for semisimple D."""
    if D[0, 1] == 0 and D[1, 0] == 0:
        return mat2(f(D[0, 0]), 0, 0, f(D[1, 1]))
    l1, l2 = _eigvals(D)
    if l1 == l2:
        return f(l1) * I2
    V = np.column_stack([_eigvec(D, l1), _eigvec(D, l2)])
    return V @ mat2(f(l1), 0, 0, f(l2)) @ inv2(V)


def e_of_matrix(ctx: QContext, J: np.ndarray, z: complex, side: str = "0") -> np.ndarray:
    """Matrix character ``e_J = e_D (I + ell_q (U - I))`` at 0 or at infinity.

    Satisfies ``e_J(qz) = J e_J(z)`` on either side.
    """
    D, U = dunford(J, ctx.eps_id)
    char = e_char if side == "0" else e_char_inf
    eD = _apply_on_semisimple(D, lambda lam: char(ctx, lam, z))
    N = U - I2
    if not np.any(N):
        return eD
    return eD @ (I2 + ell_q(ctx, z) * N)


def g_of_matrix(ctx: QContext, D: np.ndarray, z: complex) -> np.ndarray:
    """``g_z`` applied to a semisimple matrix through its eigenvalues."""
    return _apply_on_semisimple(D, lambda lam: g_twist(ctx, lam, z))
