"""Connection data between the local bases at 0 and at infinity.

The Birkhoff matrix is ``P = (Y_inf)^{-1} Y_0 = e_{J_inf}^{-1} M e_{J_0}`` where
the middle factor ``M = F_inf^{-1} F_0`` has a closed theta-quotient form in
the non-confluent cases.  The twisted matrix replaces the semisimple
characters by the single-valued twists ``g_z`` so that ratios
``Pt(y0)^{-1} Pt(z)`` land in the Galois group.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import AnnulusEmpty, BasePointSingular, DegenerateDenominator
from .hyperseries import HGParams
from .specfun import (I2, Annulus, QContext, _apply_on_semisimple, det2, det_cancellation, ell_q,
                      g_of_matrix, inv2, mat2, qpoch_dual, spiral_distance, theta,
                      theta_pair, zpow)
from .spiral import decompose
from .system import (NATIVE_RADIUS, BasisKind, Side, ab_kind, c_kind, eval_basis,
                     extend_F, local_basis)

# ----------------------------------------------------------------------------
# Pochhammer ratios appearing in the connection formula


@dataclass(frozen=True)
class BMWCoefficients:
    u_coef: complex
    v_coef: complex
    w_coef: complex
    y_coef: complex
    u_c: complex
    v_c: complex
    w_c: complex
    y_c: complex


def _product(ctx: QContext, args) -> tuple[complex, complex]:
    """``prod (x;q)_inf`` and its derivative, for pairs ``(x, dx)``."""
    val, der = 1.0 + 0j, 0j
    for x, dx in args:
        p, dp = qpoch_dual(ctx, x, dx)
        der = der * p + val * dp
        val = val * p
    return val, der


def _ratio(ctx: QContext, num, den, labels) -> tuple[complex, complex]:
    n, dn = _product(ctx, num)
    d, dd = _product(ctx, den)
    if abs(d) < ctx.eps_id * 1e-3:
        raise DegenerateDenominator(f"({', '.join(labels)};q)_inf vanishes")
    return n / d, (dn * d - n * dd) / (d * d)


def bmw_coefficients(ctx: QContext, p: HGParams) -> BMWCoefficients:
    """``u, v, w, y`` and their derivatives with respect to ``c``."""
    q, a, b, c = ctx.q, p.a, p.b, p.c
    u, uc = _ratio(ctx, [(b, 0), (c / a, 1 / a)], [(c, 1), (b / a, 0)], ("c", "b/a"))
    v, vc = _ratio(ctx, [(b * q / c, -b * q / c**2), (q / a, 0)],
                   [(q * q / c, -q * q / c**2), (b / a, 0)], ("q^2/c", "b/a"))
    w, wc = _ratio(ctx, [(a, 0), (c / b, 1 / b)], [(c, 1), (a / b, 0)], ("c", "a/b"))
    y, yc = _ratio(ctx, [(a * q / c, -a * q / c**2), (q / b, 0)],
                   [(q * q / c, -q * q / c**2), (a / b, 0)], ("q^2/c", "a/b"))
    return BMWCoefficients(u, v, w, y, uc, vc, wc, yc)


# ----------------------------------------------------------------------------
# middle factor M = F_inf^{-1} F_0


def _theta_ratio(ctx, x, z, th_z):
    return theta(ctx, x * z) / th_z


def middle_generic(ctx: QContext, p: HGParams, z: complex, co: BMWCoefficients | None = None):
    co = co or bmw_coefficients(ctx, p)
    q, a, b, c = ctx.q, p.a, p.b, p.c
    tz = theta(ctx, z)
    return mat2(co.u_coef * _theta_ratio(ctx, a, z, tz),
                co.v_coef * _theta_ratio(ctx, a * q / c, z, tz),
                co.w_coef * _theta_ratio(ctx, b, z, tz),
                co.y_coef * _theta_ratio(ctx, b * q / c, z, tz))


def middle_log(ctx: QContext, p: HGParams, z: complex, co: BMWCoefficients | None = None):
    """``c = q`` form: coefficients and their c-derivatives at ``c = q``."""
    co = co or bmw_coefficients(ctx, p)
    q, a, b = ctx.q, p.a, p.b
    tz = theta(ctx, z)
    ta, dta = theta_pair(ctx, a * z)
    tb, dtb = theta_pair(ctx, b * z)
    return mat2(co.u_coef * ta / tz,
                (q * (co.u_c - co.v_c) * ta + a * z * co.v_coef * dta) / tz,
                co.w_coef * tb / tz,
                (q * (co.w_c - co.y_c) * tb + b * z * co.y_coef * dtb) / tz)


def middle_numeric(ctx: QContext, p: HGParams, z: complex) -> np.ndarray:
    """``F_inf(z)^{-1} F_0(z)`` from the series, transported where needed."""
    F0 = extend_F(local_basis(ctx, p, Side.At0), z)
    Finf = extend_F(local_basis(ctx, p, Side.AtInf), z)
    return inv2(Finf) @ F0


def middle_matrix(ctx: QContext, p: HGParams, z: complex) -> np.ndarray:
    """Closed form where one exists; the confluent case ``a = b`` is numeric."""
    if ab_kind(ctx, p) == "log":
        return middle_numeric(ctx, p, z)
    if c_kind(ctx, p) == "log":
        return middle_log(ctx, p, z)
    return middle_generic(ctx, p, z)


def birkhoff_P(ctx: QContext, p: HGParams, z: complex) -> np.ndarray:
    """``P(z) = e_{J_inf}(z)^{-1} M(z) e_{J_0}(z)``; elliptic in ``z``."""
    b0 = local_basis(ctx, p, Side.At0)
    binf = local_basis(ctx, p, Side.AtInf)
    return inv2(binf.e_J(z)) @ middle_matrix(ctx, p, z) @ b0.e_J(z)


def bmw_annulus(ctx: QContext, p: HGParams) -> Annulus:
    """Radii where both local series converge directly; AnnulusEmpty if none."""
    r_in = abs(p.c / (p.a * p.b)) / NATIVE_RADIUS
    if not r_in < NATIVE_RADIUS:
        raise AnnulusEmpty(f"|c/ab| = {abs(p.c / (p.a * p.b)):.3g}: the local series "
                           "have no common convergence annulus")
    return Annulus(r_in, NATIVE_RADIUS)


def numeric_P(ctx: QContext, p: HGParams, z: complex) -> np.ndarray:
    """``Y_inf(z)^{-1} Y_0(z)`` with both bases summed directly."""
    b0 = local_basis(ctx, p, Side.At0)
    binf = local_basis(ctx, p, Side.AtInf)
    return inv2(eval_basis(binf, z)) @ eval_basis(b0, z)


# ----------------------------------------------------------------------------
# twisted matrix


@dataclass(frozen=True)
class TwistedMatrix:
    case_tag: str
    evaluator: Callable[[complex], np.ndarray] = field(repr=False)
    pole_spirals: tuple = ()
    kind0: BasisKind = BasisKind.Generic
    kind_inf: BasisKind = BasisKind.Generic

    def __call__(self, z: complex) -> np.ndarray:
        return self.evaluator(complex(z))


def pole_spirals(ctx: QContext, p: HGParams) -> tuple:
    """Base points of spirals carrying poles of Pt or zeros of its entries/det."""
    q, a, b, c = ctx.q, p.a, p.b, p.c
    pts = [1.0, 1.0 / a, 1.0 / b, c / (a * q), c / (b * q), c / (a * b * q), 1.0 / (a * b)]
    return tuple(complex(x) for x in pts)


def twisted_P(ctx: QContext, p: HGParams, case_tag: str = "") -> TwistedMatrix:
    """``Pt(z) = g_{1/z}(D_inf) e_{U_inf}^{-1} M e_{U_0} g_z(D_0)``."""
    b0 = local_basis(ctx, p, Side.At0)
    binf = local_basis(ctx, p, Side.AtInf)
    use_log0 = b0.kind is BasisKind.LogAtZero
    use_numeric = binf.kind is BasisKind.LogAtInf
    co = None if use_numeric else bmw_coefficients(ctx, p)
    N0 = b0.U - I2
    Ninf = binf.U - I2
    unip0 = bool(np.any(N0))
    unipinf = bool(np.any(Ninf))

    def evaluator(z: complex) -> np.ndarray:
        if use_numeric:
            M = middle_numeric(ctx, p, z)
        elif use_log0:
            M = middle_log(ctx, p, z, co)
        else:
            M = middle_generic(ctx, p, z, co)
        if unip0 or unipinf:
            ell = ell_q(ctx, z)
            if unip0:
                M = M @ (I2 + ell * N0)
            if unipinf:
                M = (I2 - ell * Ninf) @ M
        left = g_of_matrix(ctx, binf.D, 1.0 / z)
        right = g_of_matrix(ctx, b0.D, z)
        return left @ M @ right

    return TwistedMatrix(case_tag, evaluator, pole_spirals(ctx, p), b0.kind, binf.kind)


# ----------------------------------------------------------------------------
# determinant identity


def det_formula(ctx: QContext, p: HGParams, z: complex) -> complex:
    """Closed form of ``det Pt(z)`` in every supported local situation."""
    q, a, b, c = ctx.q, p.a, p.b, p.c
    z = complex(z)
    logc = c_kind(ctx, p) == "log"
    logab = ab_kind(ctx, p) == "log"
    tz = theta(ctx, z)
    twist_inf = zpow(1.0 / z, ctx.omega(1.0 / a) + ctx.omega(1.0 / b))
    twist0 = 1.0 if logc else zpow(z, ctx.omega(q / c))
    if logab and logc:
        core = theta(ctx, a * a * z) / tz
    elif logab:
        core = -(1.0 - q / c) * theta(ctx, a * a * q * z / c) / tz
    elif logc:
        core = -theta(ctx, a * b * z) / ((1.0 / a - 1.0 / b) * tz)
    else:
        core = (1.0 - q / c) / (1.0 / a - 1.0 / b) * theta(ctx, a * b * q * z / c) / tz
    return twist_inf * core * twist0


def det_identity_residual(ctx: QContext, p: HGParams, z: complex,
                          tp: TwistedMatrix | None = None) -> float:
    tp = tp or twisted_P(ctx, p)
    lhs = det2(tp(z))
    rhs = det_formula(ctx, p, z)
    return abs(lhs - rhs) / (1.0 + abs(rhs))


# ----------------------------------------------------------------------------
# connection component


def component_generator(ctx: QContext, tp: TwistedMatrix, y0: complex, z: complex) -> np.ndarray:
    """``Pt(y0)^{-1} Pt(z)``."""
    P0 = tp(y0)
    if det_cancellation(P0) <= ctx.eps_id:
        raise BasePointSingular(f"Pt is not invertible at the base point {y0}")
    return inv2(P0) @ tp(z)


CUT_MARGIN = 0.05
OMEGA_MARGIN = 1e-4


def off_cut_angle(theta_: float) -> bool:
    t = theta_ % (2.0 * math.pi)
    return CUT_MARGIN <= t <= 2.0 * math.pi - CUT_MARGIN


def choose_base_point(ctx: QContext, spirals, annulus: Annulus | None = None,
                      n_candidates: int = 64) -> complex:
    """Point on ``|z| = r_geo`` farthest (in spiral distance) from ``spirals``."""
    if annulus is None:
        annulus = Annulus(abs(ctx.q), 1.0)
    r = annulus.r_geo
    best, best_d = None, -1.0
    for j in range(n_candidates):
        ang = 2.0 * math.pi * (j + 0.5) / n_candidates
        if not off_cut_angle(ang):
            continue
        z = r * cmath.exp(1j * ang)
        d = min(spiral_distance(ctx, z, s) for s in spirals)
        if d < OMEGA_MARGIN:
            continue
        if d > best_d:
            best, best_d = z, d
    if best is None:
        raise BasePointSingular("every base-point candidate lies on a singular spiral")
    return best


def sample_points(ctx: QContext, rng: np.random.Generator, n: int, annulus: Annulus,
                  avoid=(), margin: float = 1e-3) -> list[complex]:
    """Log-uniform moduli in ``annulus``, arguments off the positive real axis."""
    out = []
    lo, hi = math.log(annulus.r_inner), math.log(annulus.r_outer)
    tries = 0
    while len(out) < n:
        tries += 1
        if tries > 100 * n:
            raise BasePointSingular("could not draw admissible sample points")
        r = math.exp(rng.uniform(lo, hi))
        ang = rng.uniform(CUT_MARGIN, 2.0 * math.pi - CUT_MARGIN)
        z = r * cmath.exp(1j * ang)
        if any(spiral_distance(ctx, z, s) < margin for s in avoid):
            continue
        out.append(z)
    return out


def lemma_hg_witness(ctx: QContext, a: complex, points, shifts=(0, 0, 0, 0)) -> float:
    """``sigma_min / sigma_max`` of the 4 x len(points) theta sample matrix.

    Rows are ``theta(q^N a z)``, ``theta(-q^M a z)``, ``theta(q^{L+1/2} a z)`` and
    ``theta(-q^{K+1/2} a z)``; full rank means no linear relation among them.
    """
    N, M, L, K = shifts
    half = ctx.qpow(0.5)
    factors = [ctx.qpow(N), -ctx.qpow(M), ctx.qpow(L) * half, -ctx.qpow(K) * half]
    rows = []
    for f in factors:
        row = np.array([theta(ctx, f * a * z) for z in points], dtype=complex)
        rows.append(row / np.max(np.abs(row)))
    s = np.linalg.svd(np.array(rows), compute_uv=False)
    return float(s[-1] / s[0])


# ----------------------------------------------------------------------------
# local generators in the 0-basis (density theorem items)


def local_generators(ctx: QContext, p: HGParams, tp: TwistedMatrix, y0: complex) -> list:
    """Local Galois generators at 0 and (conjugated into the 0-basis) at infinity."""
    b0 = local_basis(ctx, p, Side.At0)
    binf = local_basis(ctx, p, Side.AtInf)

    def gammas(D):
        out = []
        for proj in ("gamma1", "gamma2"):
            out.append(_apply_on_semisimple(D, lambda lam: getattr(decompose(ctx, lam), proj)))
        return out

    gens = []
    gens += gammas(b0.D)
    if np.any(b0.U - I2):
        gens.append(b0.U.copy())
    P0 = tp(y0)
    P0inv = inv2(P0)
    for g in gammas(binf.D):
        gens.append(P0inv @ g @ P0)
    if np.any(binf.U - I2):
        gens.append(P0inv @ binf.U @ P0)
    return gens

