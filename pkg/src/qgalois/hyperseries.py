"""The basic hypergeometric series 2phi1 and its derivatives in parameters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import kernels
from .errors import DivergentInput, NonConvergent, PoleInC, ZeroInput
from .specfun import QContext
from .spiral import Spiral, decompose, membership

Param = Union[complex, float, Spiral]


def _value(ctx: QContext, x: Param) -> complex:
    return x.value(ctx) if isinstance(x, Spiral) else complex(x)


@dataclass(frozen=True)
class HGParams:
    """Parameters ``a = u_a q^alpha``, ``b = u_b q^beta``, ``c = u_c q^gamma``.

    ``exact`` holds the Spiral form of each parameter when it was supplied
    exactly; membership questions are then answered without tolerances.
    """

    a: complex
    b: complex
    c: complex
    alpha: float
    beta: float
    gamma: float
    u_a: complex
    u_b: complex
    u_c: complex
    exact: Optional[tuple] = None

    @classmethod
    def make(cls, ctx: QContext, a: Param, b: Param, c: Param) -> "HGParams":
        vals = [_value(ctx, x) for x in (a, b, c)]
        for name, v in zip("abc", vals):
            if v == 0:
                raise ZeroInput(f"parameter {name} must be nonzero")
        dec = [decompose(ctx, v) for v in vals]
        exact = None
        if all(isinstance(x, Spiral) for x in (a, b, c)):
            exact = (a, b, c)
        return cls(vals[0], vals[1], vals[2],
                   dec[0].omega, dec[1].omega, dec[2].omega,
                   dec[0].u, dec[1].u, dec[2].u, exact)

    def swapped(self) -> "HGParams":
        """The same system with ``a`` and ``b`` exchanged."""
        ex = None if self.exact is None else (self.exact[1], self.exact[0], self.exact[2])
        return HGParams(self.b, self.a, self.c, self.beta, self.alpha, self.gamma,
                        self.u_b, self.u_a, self.u_c, ex)

    # exact-or-numeric handles for derived quantities used in membership tests
    def spiral_of(self, name: str):
        """``a``, ``b``, ``c`` or a ratio like ``a/b`` as Spiral (exact) or complex."""
        if self.exact is not None:
            env = dict(zip("abc", self.exact))
        else:
            env = {"a": self.a, "b": self.b, "c": self.c}
        return _eval_monomial(name, env)


def _eval_monomial(expr: str, env: dict):
    """Evaluate products/quotients of a, b, c (and ``q``-free) like ``a*b/c``."""
    num, _, den = expr.partition("/")
    out = None
    for part, sign in ((num, 1), (den, -1)):
        if not part:
            continue
        for sym in part.split("*"):
            v = env[sym.strip()]
            if sign < 0:
                v = v.inverse() if isinstance(v, Spiral) else 1.0 / v
            out = v if out is None else out * v
    return out


def terminating_index(ctx: QContext, a: Param, b: Param) -> Optional[int]:
    """``m`` when ``a`` or ``b`` equals ``q^{-m}`` (smallest such), else None."""
    best = None
    for x in (a, b):
        mem = membership(ctx, x, "q_negN")
        if mem:
            m = -int(mem.witness)
            best = m if best is None else min(best, m)
    return best


def phi21(ctx: QContext, a: Param, b: Param, c: Param, z: complex) -> complex:
    """``2phi1(a, b; c; q, z)``.

    Terminating series (``a`` or ``b`` in ``q^{-N}``) are summed exactly and
    accept any ``z``; otherwise ``|z| < 1`` is required.
    """
    z = complex(z)
    m = terminating_index(ctx, a, b)
    av, bv, cv = _value(ctx, a), _value(ctx, b), _value(ctx, c)
    if m is None:
        if abs(z) >= 1.0:
            raise DivergentInput(f"2phi1 does not converge at |z| = {abs(z)}")
        s, _, status = kernels.phi21_sum(av, bv, cv, z, ctx.q, ctx.eps_term,
                                         ctx.n_max_series, -1)
    else:
        s, _, status = kernels.phi21_sum(av, bv, cv, z, ctx.q, ctx.eps_term,
                                         ctx.n_max_series, m)
    if status == kernels.POLE:
        raise PoleInC(f"(c;q)_n vanishes before the series ends (c = {cv})")
    if status == kernels.CAPPED:
        raise NonConvergent("2phi1 did not settle within the term cap")
    return s


def phi21_dual(ctx: QContext, a, da, b, db, c, dc, z, dz=0.0) -> tuple[complex, complex]:
    """2phi1 and its directional derivative along ``(da, db, dc, dz)``."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise DivergentInput(f"2phi1 derivative needs |z| < 1, got {abs(z)}")
    s, ds, _, status = kernels.phi21_dual(
        complex(a), complex(da), complex(b), complex(db), complex(c), complex(dc),
        z, complex(dz), ctx.q, ctx.eps_term, ctx.n_max_series)
    if status == kernels.POLE:
        raise PoleInC(f"(c;q)_n vanishes (c = {c})")
    if status == kernels.CAPPED:
        raise NonConvergent("2phi1 derivative did not settle within the term cap")
    return s, ds


def dphi21_dc_at_q(ctx: QContext, a: complex, b: complex, z: complex) -> tuple[complex, complex]:
    """c-derivatives at ``c = q`` of ``phi(a,b;c;z)`` and ``phi(aq/c,bq/c;q^2/c;z)``."""
    a, b, q = complex(a), complex(b), ctx.q
    _, d1 = phi21_dual(ctx, a, 0.0, b, 0.0, q, 1.0, z)
    _, d2 = phi21_dual(ctx, a, -a / q, b, -b / q, q, -1.0, z)
    return d1, d2
