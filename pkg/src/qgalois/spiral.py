"""Arithmetic on the decomposition ``C* = U x q^R``.

Every nonzero ``x`` is written ``x = u q^omega`` with ``|u| = 1`` and real
``omega``; ``q^omega`` always means ``exp(omega * log_q)`` for the context's
fixed ``log_q``.  Membership of ``x`` in sets such as ``q^Z`` is decided on
this decomposition, either numerically with a refusal band or exactly when
the input carries a :class:`Spiral` with rational data.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BorderlineMembership, NotUnimodular, ZeroInput
from .specfun import QContext

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SpiralDecomp:
    u: complex
    omega: float

    @property
    def gamma1(self) -> complex:
        return self.u

    @property
    def gamma2(self) -> complex:
        return cmath.exp(2j * math.pi * self.omega)


def decompose(ctx: QContext, x: complex) -> SpiralDecomp:
    """Split ``x = u q^omega`` with ``|u| = 1``."""
    x = complex(x)
    if x == 0:
        raise ZeroInput("cannot decompose 0")
    om = ctx.omega(x)
    u = x * ctx.qpow(-om)
    # |q^omega| = |x| holds up to rounding; renormalise
    u /= abs(u)
    return SpiralDecomp(u, om)


@dataclass(frozen=True)
class Spiral:
    """Exact point ``exp(2 pi i turn) q^omega``.

    ``turn`` is ``None`` when the unimodular part is not a rational turn; the
    numeric value ``u`` is then authoritative for it.
    """

    omega: Fraction
    turn: Optional[Fraction] = Fraction(0)
    u: complex | None = None

    def __post_init__(self):
        object.__setattr__(self, "omega", Fraction(self.omega))
        if self.turn is not None:
            t = Fraction(self.turn) % 1
            object.__setattr__(self, "turn", t)
            object.__setattr__(self, "u", cmath.exp(2j * math.pi * float(t)))
        elif self.u is None:
            raise ValueError("need either a rational turn or a unimodular u")
        else:
            u = complex(self.u)
            object.__setattr__(self, "u", u / abs(u))

    def value(self, ctx: QContext) -> complex:
        return self.u * ctx.qpow(float(self.omega))

    def __mul__(self, other: "Spiral") -> "Spiral":
        if self.turn is not None and other.turn is not None:
            return Spiral(self.omega + other.omega, self.turn + other.turn)
        return Spiral(self.omega + other.omega, None, self.u * other.u)

    def inverse(self) -> "Spiral":
        if self.turn is not None:
            return Spiral(-self.omega, -self.turn)
        return Spiral(-self.omega, None, 1.0 / self.u)

    def __truediv__(self, other: "Spiral") -> "Spiral":
        return self * other.inverse()

    def __neg__(self) -> "Spiral":
        return self * Spiral(Fraction(0), Fraction(1, 2))

    def __pow__(self, n: int) -> "Spiral":
        n = int(n)
        if self.turn is not None:
            return Spiral(self.omega * n, self.turn * n)
        return Spiral(self.omega * n, None, self.u ** n)

    @classmethod
    def q_power(cls, omega) -> "Spiral":
        return cls(Fraction(omega), Fraction(0))


# --------------------------------------------------------------------------
# membership

# set name -> (sign, half-offset, integer-range filter)
_SETS = {
    "qZ": (1, 0, lambda n: True),
    "qZ_star": (1, 0, lambda n: n != 0),
    "qN_star": (1, 0, lambda n: n >= 1),
    "q_negN": (1, 0, lambda n: n <= 0),
    "minus_qZ": (-1, 0, lambda n: True),
    "qHalfZ_plus": (1, 1, lambda n: True),
    "qHalfZ_minus": (-1, 1, lambda n: True),
}

SET_NAMES = tuple(_SETS)


@dataclass(frozen=True)
class Membership:
    """Outcome of a membership test; truthy iff ``x`` lies in the set.

    ``witness`` is the exponent ``k`` (possibly a half-integer) with
    ``x = +-q^k`` whenever ``x`` lies on the underlying coset spiral, even if
    the integer-range filter then rejects it.
    """

    member: bool
    witness: Optional[Fraction]
    distance: float = 0.0

    def __bool__(self) -> bool:
        return self.member


def _coset_exponent(ctx: QContext, x, sign: int, half: int) -> tuple[Optional[Fraction], float]:
    """Exponent ``k`` with ``x = sign q^{k}``, ``k in Z + half/2``, or None."""
    if isinstance(x, Spiral):
        target_turn = Fraction(0) if sign == 1 else Fraction(1, 2)
        if x.turn is None:
            # irrational unimodular part: only the numeric comparison is left
            return _coset_exponent(ctx, x.value(ctx), sign, half)
        shifted = x.omega - Fraction(half, 2)
        if x.turn == target_turn and shifted.denominator == 1:
            return x.omega, 0.0
        return None, math.inf
    x = complex(x)
    if x == 0:
        raise ZeroInput("membership of 0 is undefined")
    shift = sign * ctx.qpow(0.5 * half)
    y = x / shift
    n = round(ctx.omega(y))
    d = abs(y * ctx.qpow(-n) - 1.0)
    if d < ctx.tol_mem:
        return Fraction(n) + Fraction(half, 2), d
    if d < ctx.guard_mem:
        raise BorderlineMembership(
            f"borderline membership: {x} is {d:.3g} from the spiral "
            f"{'-' if sign < 0 else ''}q^(Z{'+1/2' if half else ''})")
    return None, d


def membership(ctx: QContext, x, set_name: str) -> Membership:
    """Decide ``x in set_name``; ``x`` is a complex number or an exact Spiral.

    Raises BorderlineMembership when a numeric ``x`` sits inside the guard
    band ``[tol_mem, guard_mem)`` around the set.
    """
    try:
        sign, half, keep = _SETS[set_name]
    except KeyError:
        raise ValueError(f"unknown set {set_name!r}; choose from {SET_NAMES}") from None
    k, d = _coset_exponent(ctx, x, sign, half)
    if k is None:
        return Membership(False, None, d)
    if half:
        return Membership(True, k, d)
    return Membership(bool(keep(int(k))), k, d)


# --------------------------------------------------------------------------
# roots of unity and scalar closures


def unit_order(ctx: QContext, u: complex, n_max: int | None = None) -> Optional[int]:
    """Smallest ``n <= n_max`` with ``u^n = 1`` (within tol_mem), else None."""
    u = complex(u)
    if abs(abs(u) - 1.0) > ctx.eps_id:
        raise NotUnimodular(f"|u| = {abs(u)} is not 1")
    n_max = ctx.n_max_unity if n_max is None else int(n_max)
    t = (cmath.phase(u) / TWO_PI) % 1.0
    frac = Fraction(t).limit_denominator(n_max)
    n = frac.denominator
    if abs(u ** n - 1.0) < ctx.tol_mem:
        return n
    return None


@dataclass(frozen=True)
class ScalarGroup:
    kind: str  # "FiniteCyclic" or "FullTorus"
    n: Optional[int] = None

    def contains(self, ctx: QContext, x: complex) -> bool:
        if self.kind == "FullTorus":
            return complex(x) != 0
        return abs(complex(x) ** self.n - 1.0) < ctx.tol_mem * max(1, self.n)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n}


def scalar_zariski_closure(ctx: QContext, gens, n_max: int | None = None) -> ScalarGroup:
    """Zariski closure of the multiplicative group generated by ``gens``."""
    order = 1
    for g in gens:
        g = complex(g)
        if g == 0:
            raise ValueError("scalar generators must be nonzero")
        if abs(abs(g) - 1.0) > ctx.eps_id:
            return ScalarGroup("FullTorus")
        n = unit_order(ctx, g, n_max)
        if n is None:
            return ScalarGroup("FullTorus")
        order = math.lcm(order, n)
    return ScalarGroup("FiniteCyclic", order)
