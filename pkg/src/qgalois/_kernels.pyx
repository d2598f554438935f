# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; mirror of ``_pykernels`` (same signatures and status codes)."""

cdef extern from "complex.h":
    double cabs(double complex z) nogil

cdef int OK = 0
cdef int CAPPED = 1
cdef int POLE = 2


def qpoch_finite(double complex a, double complex q, int n):
    cdef double complex p = 1.0
    cdef double complex x = a
    cdef int k
    for k in range(n):
        p = p * (1.0 - x)
        x = x * q
    return p


def qpoch_inf(double complex a, double complex q, double eps, int nmax):
    cdef double complex p = 1.0
    cdef double complex x = a
    cdef int k = 0
    while k < nmax:
        if cabs(x) < eps:
            return p, k
        p = p * (1.0 - x)
        x = x * q
        k += 1
    return p, k


def qpoch_inf_dual(double complex a, double complex da, double complex q,
                   double eps, int nmax):
    cdef double complex p = 1.0
    cdef double complex dp = 0.0
    cdef double complex x = a
    cdef double complex dx = da
    cdef double complex f
    cdef int k = 0
    while k < nmax:
        if cabs(x) < eps and cabs(dx) < eps:
            return p, dp, k
        f = 1.0 - x
        dp = dp * f - p * dx
        p = p * f
        x = x * q
        dx = dx * q
        k += 1
    return p, dp, k


def theta_laurent(double complex z, double complex q, double eps, int jmax):
    cdef double complex s = 1.0
    cdef double complex ds = 0.0
    cdef double complex mz = -z
    cdef double complex minv = 1.0 / mz
    cdef double complex tp = 1.0
    cdef double complex qj = 1.0
    cdef double complex tn = 1.0
    cdef double complex qn = 1.0
    cdef double m
    cdef double mass = 1.0
    cdef int j = 1
    while j <= jmax:
        tp = tp * qj * mz
        qj = qj * q
        qn = qn * q
        tn = tn * qn * minv
        s = s + tp + tn
        mass = mass + cabs(tp) + cabs(tn)
        ds = ds + (j * tp - j * tn) / z
        m = cabs(s)
        if m < 1e-300:
            m = 1e-300
        if cabs(tp) + cabs(tn) < eps * m and j > 2:
            return s, ds, j, OK, mass
        j += 1
    return s, ds, j, CAPPED, mass


def phi21_sum(double complex a, double complex b, double complex c,
              double complex z, double complex q, double eps, int nmax, int nterm):
    cdef double complex s = 1.0
    cdef double complex t = 1.0
    cdef double complex qn = 1.0
    cdef double complex fc
    cdef int small = 0
    cdef int n = 0
    cdef int limit = nterm if nterm >= 0 else nmax
    while n < limit:
        fc = 1.0 - c * qn
        if cabs(fc) < 1e-15:
            return s, n, POLE
        t = t * (1.0 - a * qn) * (1.0 - b * qn) / ((1.0 - qn * q) * fc) * z
        s = s + t
        qn = qn * q
        n += 1
        if nterm < 0:
            if cabs(t) < eps * cabs(s):
                small += 1
                if small >= 2:
                    return s, n, OK
            else:
                small = 0
    if nterm >= 0:
        return s, n, OK
    return s, n, CAPPED


def phi21_dual(double complex a, double complex da, double complex b,
               double complex db, double complex c, double complex dc,
               double complex z, double complex dz, double complex q,
               double eps, int nmax):
    cdef double complex s = 1.0
    cdef double complex ds = 0.0
    cdef double complex t = 1.0
    cdef double complex dt = 0.0
    cdef double complex qn = 1.0
    cdef double complex fa, dfa, fb, dfb, fc, dfc, fq, num, dnum, r, dr
    cdef int small = 0
    cdef int n = 0
    while n < nmax:
        fa = 1.0 - a * qn
        dfa = -da * qn
        fb = 1.0 - b * qn
        dfb = -db * qn
        fc = 1.0 - c * qn
        dfc = -dc * qn
        if cabs(fc) < 1e-15:
            return s, ds, n, POLE
        fq = 1.0 - qn * q
        num = fa * fb
        dnum = dfa * fb + fa * dfb
        r = num / (fq * fc) * z
        dr = ((dnum * fc - num * dfc) / (fc * fc) * z + num / fc * dz) / fq
        dt = dt * r + t * dr
        t = t * r
        s = s + t
        ds = ds + dt
        qn = qn * q
        n += 1
        if cabs(t) + cabs(dt) < eps * (cabs(s) + cabs(ds)):
            small += 1
            if small >= 2:
                return s, ds, n, OK
        else:
            small = 0
    return s, ds, n, CAPPED
