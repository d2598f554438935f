"""Case dispatch and Galois group descriptors.

The decision procedure works on the spiral decomposition of the parameters.
Each supported triple ``(a, b, c)`` receives exactly one :class:`CaseTag`;
the tag fixes the group family, and the density-theorem generators evaluated
at sample points are attached as witnesses so that membership in the stated
group can be checked numerically.

Family shapes (``S`` a scalar subgroup of ``C*``, ``C`` arbitrary):

==============================  ==============================
GL2                             all invertible matrices
SL2                             determinant one
SL2_times_scalars               ``SL2 . S``
TorusWithSwap                   ``R diag R^-1`` and ``R antidiag R^-1``
LowerTriangular_full            ``[[1, 0], [C, C*]]``
LowerTriangular_scalars         ``[[1, 0], [C, S]]``
Diagonal_1_scalars              ``[[1, 0], [0, S]]``
UpperTriangular_full            ``[[1, C], [0, C*]]``
UpperTriangular_scalars         ``[[1, C], [0, S]]``
UpperTriangular_Cstar_one       ``[[C*, C], [0, 1]]``
UpperTriangular_Cstar_scalars   ``[[C*, C], [0, S]]``
LowerTriangular_Cstar_scalars   ``[[C*, 0], [C, S]]``
UnipotentUpper                  ``[[1, C], [0, 1]]``
==============================  ==============================
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .connection import (Annulus, choose_base_point, component_generator, local_generators,
                         sample_points, twisted_P)
from .hyperseries import HGParams
from .specfun import QContext, det2, det_cancellation, inv2, mat2
from .spiral import (ScalarGroup, Spiral, membership, scalar_zariski_closure)
from .system import ab_kind, c_kind

FAMILIES = (
    "GL2", "SL2", "SL2_times_scalars", "TorusWithSwap",
    "LowerTriangular_full", "LowerTriangular_scalars", "Diagonal_1_scalars",
    "UpperTriangular_full", "UpperTriangular_scalars",
    "UpperTriangular_Cstar_one", "UpperTriangular_Cstar_scalars",
    "LowerTriangular_Cstar_scalars", "UnipotentUpper",
)

IRREDUCIBLE_FAMILIES = ("GL2", "SL2", "SL2_times_scalars")

# a determinant this small relative to its two products is rounding noise
SINGULAR_CANCELLATION = 1e-13


@dataclass(frozen=True)
class CaseTag:
    name: str
    branch: str = ""
    symmetry_derived: bool = False
    detail: tuple = ()

    def __str__(self) -> str:
        return f"{self.name}[{self.branch}]" if self.branch else self.name


@dataclass
class GroupDescriptor:
    family: str
    scalar: Optional[ScalarGroup] = None
    conjugator: Optional[np.ndarray] = None
    local_witness: list = field(default_factory=list)
    connection_witness: list = field(default_factory=list)
    base_point: Optional[complex] = None

    @property
    def generators_witness(self) -> list:
        return self.local_witness + self.connection_witness

    def as_dict(self) -> dict:
        out = {"family": self.family}
        if self.scalar is not None:
            out["scalar"] = self.scalar.as_dict()
        if self.conjugator is not None:
            out["conjugator"] = [[[float(x.real), float(x.imag)] for x in row]
                                 for row in self.conjugator]
        return out


# ----------------------------------------------------------------------------
# parameter expressions


def monomial(ctx: QContext, p: HGParams, expr: str, qexp: int = 0):
    """Monomial in a, b, c times ``q^qexp``, exact when ``p`` is."""
    x = p.spiral_of(expr)
    if qexp == 0:
        return x
    if isinstance(x, Spiral):
        return x * Spiral.q_power(qexp)
    return x * ctx.qpow(qexp)


def _in(ctx, p, expr, set_name, qexp=0):
    return membership(ctx, monomial(ctx, p, expr, qexp), set_name)


_KLEIN = ("minus_qZ", "qHalfZ_plus", "qHalfZ_minus")


def _klein_class(ctx: QContext, x) -> Optional[str]:
    """Class of ``x`` in ``{-1, q^(1/2), -q^(1/2)}`` modulo ``q^Z``, if any."""
    for name in _KLEIN:
        if membership(ctx, x, name):
            return name
    return None


# ----------------------------------------------------------------------------
# scalar groups attached to c = w q^gamma


def _c_turn_and_gamma(ctx: QContext, p: HGParams):
    """``(turn of w, gamma)`` as Fractions when exact, else None."""
    if p.exact is not None:
        sc = p.exact[2]
        if sc.turn is not None:
            return sc.turn, sc.omega
    return None


def _scalar_from_turns(ctx: QContext, turns) -> ScalarGroup:
    order = 1
    for t in turns:
        order = math.lcm(order, Fraction(t).denominator)
    if order > ctx.n_max_unity:
        return ScalarGroup("FullTorus")
    return ScalarGroup("FiniteCyclic", order)


def scalars_w_gamma(ctx: QContext, p: HGParams) -> ScalarGroup:
    """Closure of ``<w, e^{2 pi i gamma}>``."""
    ex = _c_turn_and_gamma(ctx, p)
    if ex is not None:
        t, g = ex
        return _scalar_from_turns(ctx, [t, g])
    return scalar_zariski_closure(ctx, [p.u_c, cmath.exp(2j * math.pi * p.gamma)])


def scalars_sqrt_w_gamma(ctx: QContext, p: HGParams) -> ScalarGroup:
    """Closure of ``<sqrt(w), e^{pi i gamma}>`` (principal square root)."""
    ex = _c_turn_and_gamma(ctx, p)
    if ex is not None:
        t, g = ex
        t_principal = t if t <= Fraction(1, 2) else t - 1
        return _scalar_from_turns(ctx, [t_principal / 2, g / 2])
    return scalar_zariski_closure(ctx, [cmath.sqrt(p.u_c), cmath.exp(1j * math.pi * p.gamma)])


# ----------------------------------------------------------------------------
# dispatch


def _section3(ctx: QContext, p: HGParams) -> tuple[CaseTag, str, Optional[ScalarGroup]]:
    """``c`` outside ``q^Z`` and ``a/b`` outside ``q^Z``."""
    if _in(ctx, p, "a", "qN_star"):
        return _c4(ctx, p, "C4", False)
    if _in(ctx, p, "a", "q_negN"):
        return _c5(ctx, p, "C5", False)
    if _in(ctx, p, "b", "qZ"):
        tag, fam, sc = _section3(ctx, p.swapped())
        return CaseTag("SYM", f"b in q^Z -> {tag}", True, tag.detail), fam, sc
    for expr, label in (("a/c", "a/c"), ("b/c", "b/c")):
        mem = _in(ctx, p, expr, "qZ")
        if mem:
            if mem.witness >= 0:
                return (CaseTag("SYM", f"{label} in q^N", True),
                        "UpperTriangular_Cstar_scalars", scalars_w_gamma(ctx, p))
            return (CaseTag("SYM", f"{label} in q^-N*", True),
                    "LowerTriangular_Cstar_scalars", scalars_w_gamma(ctx, p))
    s_b = _klein_class(ctx, monomial(ctx, p, "b/a"))
    s_c = _klein_class(ctx, monomial(ctx, p, "c"))
    if s_b is not None and s_c is not None:
        if s_b == s_c:
            detail = (("variant", s_b),)
            if s_b == "minus_qZ":
                delta = membership(ctx, -_as_value(ctx, monomial(ctx, p, "b/a")), "qZ").witness
                gam = membership(ctx, -_as_value(ctx, monomial(ctx, p, "c")), "qZ").witness
                detail = (("variant", s_b), ("delta", int(delta)), ("gamma", int(gam)))
                return CaseTag("C3", "b in -aq^Z, c in -q^Z", False, detail), "TorusWithSwap", None
            return (CaseTag("C3", f"b/a and c in {s_b}", True, detail), "TorusWithSwap", None)
        name = "C2"
    else:
        name = "C1"
    if _in(ctx, p, "a*b/c", "qZ", 1):
        return (CaseTag(name, "abq/c in q^Z"), "SL2_times_scalars",
                scalars_sqrt_w_gamma(ctx, p))
    return CaseTag(name, "abq/c not in q^Z"), "GL2", None


def _as_value(ctx, x):
    return x.value(ctx) if isinstance(x, Spiral) else x


def _c4(ctx, p, name, sym):
    if not _in(ctx, p, "b/c", "qZ"):
        return CaseTag(name, "b/c not in q^Z", sym), "LowerTriangular_full", None
    if _in(ctx, p, "c/b", "qN_star"):
        return (CaseTag(name, "c/b in q^N*", sym), "LowerTriangular_scalars",
                scalars_w_gamma(ctx, p))
    return CaseTag(name, "bq/c in q^N*", sym), "Diagonal_1_scalars", scalars_w_gamma(ctx, p)


def _c5(ctx, p, name, sym):
    if not _in(ctx, p, "b/c", "qZ"):
        return CaseTag(name, "b/c not in q^Z", sym), "UpperTriangular_full", None
    if _in(ctx, p, "b/c", "qN_star", 1):
        return (CaseTag(name, "bq/c in q^N*", sym), "UpperTriangular_scalars",
                scalars_w_gamma(ctx, p))
    return CaseTag(name, "c/b in q^N*", sym), "Diagonal_1_scalars", scalars_w_gamma(ctx, p)


def _section41(ctx: QContext, p: HGParams, swapped: bool = False):
    """``c = q`` and ``a/b`` outside ``q^Z``."""
    if _in(ctx, p, "b", "qN_star"):
        tag = CaseTag("L2", "b in q^N*")
        fam = "UpperTriangular_Cstar_one"
    elif _in(ctx, p, "b", "q_negN"):
        tag = CaseTag("L3", "b in q^-N")
        fam = "UpperTriangular_full"
    elif _in(ctx, p, "a", "qZ") and not swapped:
        inner, fam, sc = _section41(ctx, p.swapped(), True)
        return CaseTag("L_sym", f"a in q^Z -> {inner}", True), fam, sc
    elif _in(ctx, p, "a*b", "qZ"):
        return CaseTag("L1", "ab in q^Z"), "SL2", None
    else:
        return CaseTag("L1", "ab not in q^Z"), "GL2", None
    return tag, fam, None


def _section42(ctx: QContext, p: HGParams):
    """``a = b`` and ``c = q``."""
    if _in(ctx, p, "a", "qZ"):
        return CaseTag("M2", "a in q^Z"), "UnipotentUpper", None
    if _in(ctx, p, "a*a", "qZ"):
        return CaseTag("M1", "a^2 in q^Z"), "SL2", None
    return CaseTag("M1", "a^2 not in q^Z"), "GL2", None


def _confluent_generic_c(ctx: QContext, p: HGParams):
    """``a = b`` with ``c`` outside ``q^Z``."""
    name = "L_cnotq"
    if _in(ctx, p, "a", "qN_star"):
        return CaseTag(name, "a in q^N*", True), "LowerTriangular_full", None
    if _in(ctx, p, "a", "q_negN"):
        return CaseTag(name, "a in q^-N", True), "UpperTriangular_full", None
    mem = _in(ctx, p, "a/c", "qZ")
    if mem:
        if mem.witness >= 0:
            return (CaseTag(name, "a/c in q^N", True), "UpperTriangular_Cstar_scalars",
                    scalars_w_gamma(ctx, p))
        return (CaseTag(name, "a/c in q^-N*", True), "LowerTriangular_Cstar_scalars",
                scalars_w_gamma(ctx, p))
    if _in(ctx, p, "a*a/c", "qZ", 1):
        return (CaseTag(name, "a^2 q/c in q^Z", True), "SL2_times_scalars",
                scalars_sqrt_w_gamma(ctx, p))
    return CaseTag(name, "a^2 q/c not in q^Z", True), "GL2", None


def case_of(ctx: QContext, p: HGParams) -> tuple[CaseTag, str, Optional[ScalarGroup]]:
    """Tag, family name and scalar group; raises UnsupportedResonant off the domain."""
    ck = c_kind(ctx, p)
    abk = ab_kind(ctx, p)
    if ck == "log" and abk == "log":
        return _section42(ctx, p)
    if ck == "log":
        return _section41(ctx, p)
    if abk == "log":
        return _confluent_generic_c(ctx, p)
    return _section3(ctx, p)


# ----------------------------------------------------------------------------
# witnesses and membership in a family


def witnesses(ctx: QContext, p: HGParams, n_conn: int = 6, seed: int = 0):
    """Density-theorem generators: local ones and ``Pt(y0)^{-1} Pt(z)``."""
    tp = twisted_P(ctx, p)
    y0 = choose_base_point(ctx, tp.pole_spirals)
    rng = np.random.default_rng(seed)
    annulus = Annulus(abs(ctx.q), 1.0 / math.sqrt(abs(ctx.q)))
    zs = sample_points(ctx, rng, n_conn, annulus, avoid=tp.pole_spirals, margin=1e-2)
    gens = local_generators(ctx, p, tp, y0)
    conn = [component_generator(ctx, tp, y0, z) for z in zs]
    return y0, gens, conn


def torus_conjugator(conn) -> np.ndarray:
    """``R = [[1, 1], [C, -C]]`` diagonalising a torus-with-swap connection component."""
    best = max(conn, key=lambda g: min(abs(g[0, 1]), abs(g[1, 0])))
    C = cmath.sqrt(best[1, 0] / best[0, 1])
    return mat2(1.0, 1.0, C, -C)


def _dist_to_scalars(ctx: QContext, x: complex, S: ScalarGroup) -> float:
    if S.kind == "FullTorus":
        return 0.0 if abs(x) > ctx.eps_id else 1.0
    n = S.n
    k = round(cmath.phase(x) * n / (2.0 * math.pi))
    return abs(x - cmath.exp(2j * math.pi * k / n))


def _dist_to_square_scalars(ctx: QContext, x: complex, S: ScalarGroup) -> float:
    if S.kind == "FullTorus":
        return 0.0 if abs(x) > ctx.eps_id else 1.0
    n = S.n
    # squares of n-th roots of unity are the (n / gcd(n, 2))-th roots
    m = n // math.gcd(n, 2)
    return _dist_to_scalars(ctx, x, ScalarGroup("FiniteCyclic", m))


def membership_residual(ctx: QContext, desc: GroupDescriptor, g: np.ndarray) -> float:
    """How far ``g`` is from the group described by ``desc`` (0 means inside)."""
    g = np.asarray(g, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(g))))
    fam, S = desc.family, desc.scalar
    d = det2(g)
    if det_cancellation(g) <= SINGULAR_CANCELLATION:
        return 1.0
    one = lambda x: abs(x - 1.0)  # noqa: E731
    if fam == "GL2":
        r = 0.0
    elif fam == "SL2":
        r = abs(d - 1.0)
    elif fam == "SL2_times_scalars":
        r = _dist_to_square_scalars(ctx, d, S)
    elif fam == "TorusWithSwap":
        R = desc.conjugator
        h = inv2(R) @ g @ R
        hs = max(1.0, float(np.max(np.abs(h))))
        r = min(abs(h[0, 1]) + abs(h[1, 0]), abs(h[0, 0]) + abs(h[1, 1])) / hs
    elif fam == "LowerTriangular_full":
        r = one(g[0, 0]) + abs(g[0, 1])
    elif fam == "LowerTriangular_scalars":
        r = one(g[0, 0]) + abs(g[0, 1]) + _dist_to_scalars(ctx, g[1, 1], S)
    elif fam == "Diagonal_1_scalars":
        r = one(g[0, 0]) + abs(g[0, 1]) + abs(g[1, 0]) + _dist_to_scalars(ctx, g[1, 1], S)
    elif fam == "UpperTriangular_full":
        r = one(g[0, 0]) + abs(g[1, 0])
    elif fam == "UpperTriangular_scalars":
        r = one(g[0, 0]) + abs(g[1, 0]) + _dist_to_scalars(ctx, g[1, 1], S)
    elif fam == "UpperTriangular_Cstar_one":
        r = abs(g[1, 0]) + one(g[1, 1])
    elif fam == "UpperTriangular_Cstar_scalars":
        r = abs(g[1, 0]) + _dist_to_scalars(ctx, g[1, 1], S)
    elif fam == "LowerTriangular_Cstar_scalars":
        r = abs(g[0, 1]) + _dist_to_scalars(ctx, g[1, 1], S)
    elif fam == "UnipotentUpper":
        r = one(g[0, 0]) + one(g[1, 1]) + abs(g[1, 0])
    else:
        raise ValueError(f"unknown family {fam!r}")
    return float(r) / scale if fam != "TorusWithSwap" else float(r)


def classify(ctx: QContext, p: HGParams, with_witnesses: bool = True,
             n_conn: int = 6, seed: int = 0) -> tuple[CaseTag, GroupDescriptor]:
    """Case tag and Galois group descriptor of the hypergeometric system."""
    tag, family, scalar = case_of(ctx, p)
    desc = GroupDescriptor(family, scalar)
    if with_witnesses:
        y0, gens, conn = witnesses(ctx, p, n_conn, seed)
        desc.base_point = y0
        desc.local_witness = gens
        desc.connection_witness = conn
        if family == "TorusWithSwap":
            desc.conjugator = torus_conjugator(conn)
    return tag, desc
