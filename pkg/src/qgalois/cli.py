"""Command line interface: ``qgalois classify|verify|report``.

Parameters accept three textual forms:

* cartesian ``0.3``, ``-1.2+0.5i``, ``2i``
* polar ``R@THETA`` (``THETA`` in radians)
* spiral ``u*q^OMEGA`` with ``u`` one of ``zeta_n^k``, a sign, or a cartesian
  unimodular number, e.g. ``q^0.3``, ``-q^3/2``, ``zeta_6^1*q^0.5``

When ``a``, ``b`` and ``c`` are all given in spiral form with rational data,
membership questions are decided exactly.
"""

from __future__ import annotations

import argparse
import cmath
import json
import re
import sys
from fractions import Fraction

import numpy as np

from .classify import classify, membership_residual
from .errors import QGaloisError
from .hyperseries import HGParams
from .specfun import Annulus, QContext
from .spiral import Spiral
from .verify import Check, run_all

SCHEMA = "qgalois/1"

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3

_SPIRAL = re.compile(r"^(?:(?P<u>.*?)\*)?(?P<sign>[+-]?)q(?:\^(?P<om>[^*]+))?$")
_ZETA = re.compile(r"^zeta_(?P<n>\d+)(?:\^(?P<k>[+-]?\d+))?$")


class ParamError(ValueError):
    pass


def parse_cartesian(text: str) -> complex:
    """``RE+IMi`` (either part optional) via Python's complex literal syntax."""
    t = text.replace(" ", "")
    if not t or "j" in t:
        raise ParamError(f"cannot read {text!r} as a number")
    try:
        z = complex(t.replace("i", "j"))
    except ValueError:
        raise ParamError(f"cannot read {text!r} as a number") from None
    if not cmath.isfinite(z):
        raise ParamError(f"{text!r} is not finite")
    return z


def parse_number(text: str) -> complex:
    """Cartesian or polar ``R@THETA``."""
    if "@" in text:
        r, _, th = text.partition("@")
        try:
            return cmath.rect(float(r), float(th))
        except ValueError:
            raise ParamError(f"cannot read {text!r} as polar R@THETA") from None
    return parse_cartesian(text)


def _parse_unit(text: str) -> Spiral:
    m = _ZETA.match(text)
    if m:
        n = int(m.group("n"))
        if n == 0:
            raise ParamError("zeta_0 is not a root of unity")
        return Spiral(Fraction(0), Fraction(int(m.group("k") or 1), n))
    if text in ("", "+"):
        return Spiral(Fraction(0), Fraction(0))
    if text == "-":
        return Spiral(Fraction(0), Fraction(1, 2))
    u = parse_number(text)
    if abs(abs(u) - 1.0) > 1e-12:
        raise ParamError(f"the unit part {text!r} must have modulus 1")
    return Spiral(Fraction(0), None, u)


def parse_param(text: str):
    """A parameter as Spiral (spiral form) or complex."""
    t = text.replace(" ", "")
    m = _SPIRAL.match(t)
    if m is None:
        return parse_number(t)
    try:
        omega = Fraction(m.group("om")) if m.group("om") is not None else Fraction(1)
    except (ValueError, ZeroDivisionError):
        raise ParamError(f"cannot read the exponent in {text!r}") from None
    unit = _parse_unit(m.group("u") or "")
    if m.group("sign") == "-":
        unit = -unit
    return unit * Spiral.q_power(omega)


def parse_annulus(text: str) -> Annulus:
    try:
        r1, r2 = (float(x) for x in text.split(","))
        return Annulus(r1, r2)
    except ValueError as exc:
        raise ParamError(f"expected r1,r2 with 0 < r1 < r2, got {text!r} ({exc})") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qgalois",
                                 description="Galois groups of basic hypergeometric equations")
    sub = ap.add_subparsers(dest="mode", required=True)
    for name, help_ in (("classify", "case tag and Galois group"),
                        ("verify", "run the numerical verification checks"),
                        ("report", "classification, checks and witness matrices")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--q", required=True, help="base, cartesian or polar")
        for pname in ("a", "b", "c"):
            sp.add_argument(f"--{pname}", required=True,
                            help="cartesian, polar R@THETA or spiral u*q^OMEGA")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol-mem", type=float, default=1e-7)
        sp.add_argument("--nmax-unity", type=int, default=256)
        sp.add_argument("--annulus", default=None, help="sampling annulus r1,r2")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
    return ap


def parse_params(argv=None):
    """``(ctx, params, args)`` from the command line; usage errors exit with 2."""
    ap = build_parser()
    args = ap.parse_args(argv)
    current = "--q"
    try:
        q = parse_number(args.q)
        current = "--tol-mem"
        if not 0 < args.tol_mem < 1e-4:
            raise ParamError("must lie in (0, 1e-4)")
        current = "--nmax-unity"
        if args.nmax_unity < 1:
            raise ParamError("must be positive")
        current = "--q"
        ctx = QContext(q, tol_mem=args.tol_mem, n_max_unity=args.nmax_unity)
        vals = []
        for pname in "abc":
            current = f"--{pname}"
            vals.append(parse_param(getattr(args, pname)))
        current = "--annulus"
        args.annulus = parse_annulus(args.annulus) if args.annulus else None
        current = "--a/--b/--c"
        params = HGParams.make(ctx, *vals)
    except (ParamError, ValueError, QGaloisError) as exc:
        ap.error(f"argument {current}: {exc}")
    return ctx, params, args


# ----------------------------------------------------------------------------
# output


def _cpair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _matrix(m) -> list:
    return [[_cpair(x) for x in row] for row in np.asarray(m)]


def result_dict(tag, desc, checks, seed: int, witnesses: bool = False) -> dict:
    out = {
        "schema": SCHEMA,
        "case_tag": str(tag),
        "case": {"name": tag.name, "branch": tag.branch},
        "group": desc.as_dict(),
        "witnesses_checked": len(desc.generators_witness),
        "checks": [c.as_dict() for c in checks],
        "symmetry_derived": tag.symmetry_derived,
        "seed": seed,
    }
    if desc.base_point is not None:
        out["base_point"] = _cpair(desc.base_point)
    if witnesses:
        out["witnesses"] = {"local": [_matrix(g) for g in desc.local_witness],
                            "connection": [_matrix(g) for g in desc.connection_witness]}
    return out


def _fmt_group(g: dict) -> str:
    s = g["family"]
    if "scalar" in g:
        sc = g["scalar"]
        s += f"  scalars={sc['kind']}" + (f"({sc['n']})" if sc["n"] is not None else "")
    return s


def _fmt_c(z) -> str:
    return f"{z[0]:+.6g}{z[1]:+.6g}i"


def render_text(res: dict) -> str:
    lines = [f"case      {res['case_tag']}" + ("  (symmetry-derived)" if res["symmetry_derived"] else ""),
             f"group     {_fmt_group(res['group'])}"]
    if "conjugator" in res["group"]:
        R = res["group"]["conjugator"]
        lines.append("R         [[" + ", ".join(_fmt_c(x) for x in R[0]) + "], ["
                     + ", ".join(_fmt_c(x) for x in R[1]) + "]]")
    if "base_point" in res:
        lines.append(f"base pt   {_fmt_c(res['base_point'])}")
    lines.append(f"witnesses {res['witnesses_checked']}  seed {res['seed']}")
    for c in res["checks"]:
        r = "-" if c["residual"] is None else f"{c['residual']:.3e}"
        line = f"  [{c['status']:7s}] {c['name']:24s} {r:>10s} < {c['threshold']:.1e}  ({c['paper_anchor']})"
        if c.get("reason"):
            line += f"  {c['reason']}"
        lines.append(line)
    for kind in ("local", "connection"):
        for m in res.get("witnesses", {}).get(kind, []):
            lines.append(f"  {kind:10s} [[{_fmt_c(m[0][0])}, {_fmt_c(m[0][1])}], "
                         f"[{_fmt_c(m[1][0])}, {_fmt_c(m[1][1])}]]")
    return "\n".join(lines)


def report(res: dict, fmt: str = "text") -> str:
    return json.dumps(res, indent=2) if fmt == "json" else render_text(res)


def _membership_check(ctx, desc) -> Check:
    gens = desc.generators_witness
    r = max(membership_residual(ctx, desc, g) for g in gens)
    return Check("witness_membership", "density theorem generators lie in G", r, 1e-8, len(gens))


def main(argv=None) -> int:
    ctx, params, args = parse_params(argv)
    try:
        if args.mode == "classify":
            tag, desc = classify(ctx, params, seed=args.seed)
            checks = [_membership_check(ctx, desc)]
        else:
            rep = run_all(ctx, params, seed=args.seed, annulus=args.annulus)
            tag, desc, checks = rep.case_tag, rep.descriptor, rep.checks
    except QGaloisError as exc:
        print(f"qgalois: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    res = result_dict(tag, desc, checks, args.seed, witnesses=args.mode == "report")
    print(report(res, "json" if args.json else "text"))
    return EXIT_FAILED if any(c.status == "fail" for c in checks) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
