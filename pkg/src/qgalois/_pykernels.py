"""Pure-Python reference kernels.

Same signatures and status codes as the compiled ``_kernels`` module.
Status: 0 converged, 1 hit the term cap, 2 vanishing denominator.
"""

OK = 0
CAPPED = 1
POLE = 2


def qpoch_finite(a, q, n):
    p = 1.0 + 0.0j
    x = complex(a)
    for _ in range(n):
        p *= 1.0 - x
        x *= q
    return p


def qpoch_inf(a, q, eps, nmax):
    """(a;q)_inf truncated once |a q^k| < eps. Returns (value, factors_used)."""
    p = 1.0 + 0.0j
    x = complex(a)
    k = 0
    while k < nmax:
        if abs(x) < eps:
            return p, k
        p *= 1.0 - x
        x *= q
        k += 1
    return p, k


def qpoch_inf_dual(a, da, q, eps, nmax):
    """(a;q)_inf and its derivative along a -> a + t*da (product rule, zero-safe)."""
    p = 1.0 + 0.0j
    dp = 0.0j
    x = complex(a)
    dx = complex(da)
    k = 0
    while k < nmax:
        if abs(x) < eps and abs(dx) < eps:
            return p, dp, k
        f = 1.0 - x
        dp = dp * f - p * dx
        p = p * f
        x *= q
        dx *= q
        k += 1
    return p, dp, k


def theta_laurent(z, q, eps, jmax):
    """Symmetric Laurent sum for theta and its derivative at z.

    Meant for |q| < |z| <= 1; returns (theta, theta', J, status, mass) where
    mass is the sum of term magnitudes (a cancellation gauge).
    """
    s = 0.0j
    ds = 0.0j
    # j = 0 term
    s += 1.0
    mass = 1.0
    mz = -z
    # positive j: q^{j(j-1)/2} (-z)^j, built incrementally
    tp = 1.0 + 0.0j  # q^{j(j-1)/2} (-z)^j at j
    qj = 1.0 + 0.0j  # q^j
    # negative j: q^{j(j+1)/2} (-z)^{-j} for j=1.. (i.e. index -j)
    tn = 1.0 + 0.0j
    qn = 1.0 + 0.0j
    minv = 1.0 / mz
    j = 1
    while j <= jmax:
        # +j: factor q^{j-1} (-z)
        tp = tp * qj * mz
        qj = qj * q
        # -j: factor q^{j} (-z)^{-1}
        qn = qn * q
        tn = tn * qn * minv
        s += tp + tn
        mass += abs(tp) + abs(tn)
        # d/dz: j*t/z for +j and -j*t/z for -j
        ds += (j * tp - j * tn) / z
        if abs(tp) + abs(tn) < eps * max(abs(s), 1e-300) and j > 2:
            return s, ds, j, OK, mass
        j += 1
    return s, ds, j, CAPPED, mass


def phi21_sum(a, b, c, z, q, eps, nmax, nterm):
    """Basic hypergeometric 2phi1 by term recurrence.

    nterm >= 0 sums exactly n = 0..nterm (terminating series).
    Returns (value, n_used, status).
    """
    s = 1.0 + 0.0j
    t = 1.0 + 0.0j
    qn = 1.0 + 0.0j
    small = 0
    n = 0
    limit = nterm if nterm >= 0 else nmax
    while n < limit:
        den = (1.0 - qn * q) * (1.0 - c * qn)
        if abs(1.0 - c * qn) < 1e-15:
            return s, n, POLE
        t = t * (1.0 - a * qn) * (1.0 - b * qn) / den * z
        s += t
        qn *= q
        n += 1
        if nterm < 0:
            if abs(t) < eps * abs(s):
                small += 1
                if small >= 2:
                    return s, n, OK
            else:
                small = 0
    if nterm >= 0:
        return s, n, OK
    return s, n, CAPPED


def phi21_dual(a, da, b, db, c, dc, z, dz, q, eps, nmax):
    """2phi1 and its directional derivative along (da, db, dc, dz).

    Dual-number propagation through the term recurrence; zero factors are
    handled by the product rule. Returns (value, derivative, n_used, status).
    """
    s = 1.0 + 0.0j
    ds = 0.0j
    t = 1.0 + 0.0j
    dt = 0.0j
    qn = 1.0 + 0.0j
    small = 0
    n = 0
    while n < nmax:
        fa = 1.0 - a * qn
        dfa = -da * qn
        fb = 1.0 - b * qn
        dfb = -db * qn
        fc = 1.0 - c * qn
        dfc = -dc * qn
        if abs(fc) < 1e-15:
            return s, ds, n, POLE
        fq = 1.0 - qn * q
        num = fa * fb
        dnum = dfa * fb + fa * dfb
        r = num / (fq * fc) * z
        dr = ((dnum * fc - num * dfc) / (fc * fc) * z + num / fc * dz) / fq
        dt = dt * r + t * dr
        t = t * r
        s += t
        ds += dt
        qn *= q
        n += 1
        if abs(t) + abs(dt) < eps * (abs(s) + abs(ds)):
            small += 1
            if small >= 2:
                return s, ds, n, OK
        else:
            small = 0
    return s, ds, n, CAPPED
