"""The 2x2 hypergeometric q-difference system and its local solutions.

``Y(qz) = A(z) Y(z)`` with ``A = [[0, 1], [-mu, lam]]``.  Each local basis is
``Y = F e_J`` where ``F`` is a single-valued matrix of 2phi1 series and all
multivalued behaviour sits in the character ``e_J``.  ``F`` is summed only in
its native domain and transported elsewhere with the gauge relation
``F(qz) J = A(z) F(z)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import NoReentry, OutOfDomain, PathThroughPole, PoleAt, UnsupportedResonant
from .hyperseries import HGParams, phi21, phi21_dual, dphi21_dc_at_q
from .specfun import QContext, dunford, e_of_matrix, inv2, mat2
from .spiral import membership

NATIVE_RADIUS = 0.75
MAX_TRANSPORT = 200


class Side(enum.Enum):
    At0 = "0"
    AtInf = "inf"


class BasisKind(enum.Enum):
    Generic = "Generic"
    LogAtZero = "LogAtZero"
    LogAtInf = "LogAtInf"


def a_matrix(ctx: QContext, p: HGParams, z: complex) -> np.ndarray:
    """Companion matrix of the hypergeometric equation at ``z``."""
    z = complex(z)
    cq = p.c / ctx.q
    den = p.a * p.b * z - cq
    if abs(den) < ctx.eps_id * abs(cq):
        raise PoleAt(f"A(z) has a pole at z = {z} (abz = c/q)")
    lam = ((p.a + p.b) * z - (1.0 + cq)) / den
    mu = (z - 1.0) / den
    return mat2(0.0, 1.0, -mu, lam)


# --------------------------------------------------------------------------
# which local situation applies


def c_kind(ctx: QContext, p: HGParams) -> str:
    """``"generic"`` for c outside q^Z, ``"log"`` for c = q; resonant c raises."""
    mem = membership(ctx, p.spiral_of("c"), "qZ")
    if not mem:
        return "generic"
    if mem.witness == 1:
        return "log"
    raise UnsupportedResonant(f"c = q^{mem.witness} is resonant at 0")


def ab_kind(ctx: QContext, p: HGParams) -> str:
    """``"generic"`` for a/b outside q^Z, ``"log"`` for a = b; resonant a/b raises."""
    mem = membership(ctx, p.spiral_of("a/b"), "qZ")
    if not mem:
        return "generic"
    if mem.witness == 0:
        return "log"
    raise UnsupportedResonant(f"a/b = q^{mem.witness} is resonant at infinity")


# --------------------------------------------------------------------------
# analytic factors F


def _f0_generic(ctx: QContext, p: HGParams, z: complex) -> np.ndarray:
    q, a, b, c = ctx.q, p.a, p.b, p.c
    a2, b2, c2 = a * q / c, b * q / c, q * q / c
    return mat2(phi21(ctx, a, b, c, z), phi21(ctx, a2, b2, c2, z),
                phi21(ctx, a, b, c, q * z), (q / c) * phi21(ctx, a2, b2, c2, q * z))


def _f0_log(ctx: QContext, p: HGParams, z: complex) -> np.ndarray:
    q, a, b = ctx.q, p.a, p.b
    f, fq = phi21(ctx, a, b, q, z), phi21(ctx, a, b, q, q * z)
    d1, d2 = dphi21_dc_at_q(ctx, a, b, z)
    e1, e2 = dphi21_dc_at_q(ctx, a, b, q * z)
    return mat2(f, -q * (d2 - d1), fq, fq - q * (e2 - e1))


def _h_column(ctx: QContext, s: complex, t: complex, c: complex, z: complex) -> np.ndarray:
    q = ctx.q
    x = c * q / (s * t * z)
    return np.array([phi21(ctx, s, s * q / c, s * q / t, x),
                     phi21(ctx, s, s * q / c, s * q / t, x / q) / s], dtype=complex)


def _finf_generic(ctx: QContext, p: HGParams, z: complex) -> np.ndarray:
    c1 = _h_column(ctx, p.a, p.b, p.c, z)
    c2 = _h_column(ctx, p.b, p.a, p.c, z)
    return np.column_stack([c1, c2])


def _finf_log(ctx: QContext, p: HGParams, z: complex) -> np.ndarray:
    """Confluent basis at infinity for ``a = b``.

    Column 2 is ``a^2 (d/dt - d/ds) h(s, t)`` at ``s = t = a``, taken
    analytically along the direction that leaves the series argument fixed.
    """
    q, a, c = ctx.q, p.a, p.c
    x = c * q / (a * a * z)
    args = (a, -1.0, a * q / c, -q / c, q, -2.0 * q / a)
    f1, d1 = phi21_dual(ctx, *args, x)
    f2, d2 = phi21_dual(ctx, *args, x / q)
    col1 = (f1, f2 / a)
    col2 = (a * a * d1, f2 + a * d2)
    return mat2(col1[0], col2[0], col1[1], col2[1])


# --------------------------------------------------------------------------
# bases


@dataclass(frozen=True)
class SolutionBasis:
    """Local data ``Y = F e_J`` at one singular point."""

    ctx: QContext
    params: HGParams
    side: Side
    kind: BasisKind
    J: np.ndarray
    D: np.ndarray
    U: np.ndarray
    F: Callable[[complex], np.ndarray] = field(repr=False)

    def in_native_domain(self, z: complex) -> bool:
        z = complex(z)
        if self.side is Side.At0:
            return abs(z) <= NATIVE_RADIUS
        p = self.params
        return abs(p.c / (p.a * p.b * z)) <= NATIVE_RADIUS

    def e_J(self, z: complex) -> np.ndarray:
        return e_of_matrix(self.ctx, self.J, z, self.side.value)


def local_basis(ctx: QContext, p: HGParams, side: Side) -> SolutionBasis:
    """Local fundamental system at 0 or at infinity for a supported ``p``."""
    q = ctx.q
    if side is Side.At0:
        if c_kind(ctx, p) == "log":
            J = mat2(1.0, 1.0, 0.0, 1.0)
            kind, fn = BasisKind.LogAtZero, _f0_log
        else:
            J = mat2(1.0, 0.0, 0.0, q / p.c)
            kind, fn = BasisKind.Generic, _f0_generic
    else:
        if ab_kind(ctx, p) == "log":
            J = mat2(1.0 / p.a, 1.0, 0.0, 1.0 / p.a)
            kind, fn = BasisKind.LogAtInf, _finf_log
        else:
            J = mat2(1.0 / p.a, 0.0, 0.0, 1.0 / p.b)
            kind, fn = BasisKind.Generic, _finf_generic
    D, U = dunford(J, ctx.eps_id)

    def F(z, _fn=fn):
        return _fn(ctx, p, complex(z))

    return SolutionBasis(ctx, p, side, kind, J, D, U, F)


def eval_basis(basis: SolutionBasis, z: complex) -> np.ndarray:
    """``Y(z) = F(z) e_J(z)`` for ``z`` in the native domain."""
    if not basis.in_native_domain(z):
        raise OutOfDomain(f"z = {z} is outside the native domain of the {basis.side.name} basis")
    return basis.F(z) @ basis.e_J(z)


def _checked_a(ctx: QContext, p: HGParams, w: complex, need_inverse: bool) -> np.ndarray:
    try:
        A = a_matrix(ctx, p, w)
    except PoleAt as exc:
        raise PathThroughPole(str(exc)) from exc
    if need_inverse and abs(w - 1.0) < ctx.eps_id:
        raise PathThroughPole(f"A(z) is singular at z = {w}")
    return A


def extend_F(basis: SolutionBasis, z: complex) -> np.ndarray:
    """``F(z)`` anywhere on ``C*`` by transport through the gauge relation."""
    ctx, p, q = basis.ctx, basis.params, basis.ctx.q
    z = complex(z)
    if z == 0:
        raise OutOfDomain("z = 0")
    if basis.in_native_domain(z):
        return basis.F(z)
    J = basis.J
    if basis.side is Side.At0:
        # F(w) = A(w)^{-1} F(qw) J, stepping towards 0
        chain = [z]
        while not basis.in_native_domain(chain[-1] * q):
            if len(chain) > MAX_TRANSPORT:
                raise NoReentry(f"no re-entry into the native domain from z = {z}")
            chain.append(chain[-1] * q)
        F = basis.F(chain[-1] * q)
        for w in reversed(chain):
            F = inv2(_checked_a(ctx, p, w, True)) @ F @ J
        return F
    # at infinity: F(qw) = A(w) F(w) J^{-1}, stepping outwards then back
    Jinv = inv2(J)
    chain = [z / q]
    while not basis.in_native_domain(chain[-1]):
        if len(chain) > MAX_TRANSPORT:
            raise NoReentry(f"no re-entry into the native domain from z = {z}")
        chain.append(chain[-1] / q)
    F = basis.F(chain[-1])
    for w in reversed(chain):
        F = _checked_a(ctx, p, w, False) @ F @ Jinv
    return F


def extend_eval(basis: SolutionBasis, z: complex) -> np.ndarray:
    """``Y(z)`` anywhere on ``C*`` (character part evaluated directly)."""
    return extend_F(basis, z) @ basis.e_J(z)


def gauge_residual(basis: SolutionBasis, z: complex) -> float:
    """Relative size of ``F(qz) J - A(z) F(z)``."""
    ctx = basis.ctx
    lhs = extend_F(basis, ctx.q * z) @ basis.J
    rhs = a_matrix(ctx, basis.params, z) @ extend_F(basis, z)
    return float(np.max(np.abs(lhs - rhs)) / (1.0 + np.max(np.abs(rhs))))


def solution_residual(basis: SolutionBasis, z: complex) -> float:
    """Relative size of ``Y(qz) - A(z) Y(z)``."""
    ctx = basis.ctx
    yz = extend_eval(basis, z)
    lhs = extend_eval(basis, ctx.q * z)
    rhs = a_matrix(ctx, basis.params, z) @ yz
    return float(np.max(np.abs(lhs - rhs)) / (np.max(np.abs(lhs)) + np.max(np.abs(rhs))))
