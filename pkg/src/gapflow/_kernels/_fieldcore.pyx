# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: scalar-loop twins of the functions in _fieldcore_py.

Jet layout (10 columns): [v, d1, d2, d11, d12, d22, d111, d112, d122, d222].
"""

import numpy as np

from libc.math cimport exp, fabs, log, pow, sqrt

PROFILE_EXP = 0
PROFILE_POLY7 = 1


cdef inline void _step4(double u, int kind, double* o) noexcept nogil:
    cdef double um, v, x, x1, x2, x3, sg, g1, g2, g3, e
    o[0] = 0.0; o[1] = 0.0; o[2] = 0.0; o[3] = 0.0
    if u >= 1.0:
        o[0] = 1.0
        return
    if u <= 0.0:
        return
    um = u
    if kind == 1:
        o[0] = (((-20.0 * um + 70.0) * um - 84.0) * um + 35.0) * um * um * um * um
        o[1] = (((-140.0 * um + 420.0) * um - 420.0) * um + 140.0) * um * um * um
        o[2] = (((-840.0 * um + 2100.0) * um - 1680.0) * um + 420.0) * um * um
        o[3] = (((-4200.0 * um + 8400.0) * um - 5040.0) * um + 840.0) * um
        return
    v = 1.0 - um
    x = 1.0 / v - 1.0 / um
    x1 = 1.0 / (um * um) + 1.0 / (v * v)
    x2 = -2.0 / (um * um * um) + 2.0 / (v * v * v)
    x3 = 6.0 / (um * um * um * um) + 6.0 / (v * v * v * v)
    if x >= 0.0:
        e = exp(-x)
        sg = 1.0 / (1.0 + e)
    else:
        e = exp(x)
        sg = e / (1.0 + e)
    g1 = sg * (1.0 - sg)
    g2 = g1 * (1.0 - 2.0 * sg)
    g3 = g1 * (1.0 - 6.0 * sg + 6.0 * sg * sg)
    o[0] = sg
    o[1] = g1 * x1
    o[2] = g2 * x1 * x1 + g1 * x2
    o[3] = g3 * x1 * x1 * x1 + 3.0 * g2 * x1 * x2 + g1 * x3


cdef inline void _cut4(double t, int kind, double* o) noexcept nogil:
    cdef double at = fabs(t)
    cdef double sgn = 1.0 if t >= 0.0 else -1.0
    cdef double s[4]
    _step4((at - 0.25) * 4.0, kind, s)
    o[0] = 1.0 - s[0]
    o[1] = -4.0 * s[1] * sgn
    o[2] = -16.0 * s[2]
    o[3] = -64.0 * s[3] * sgn


cdef inline void _chi10(double x1, double x2, int kind, double* o) noexcept nogil:
    cdef double a[4]
    cdef double b[4]
    _cut4(x1, kind, a)
    _cut4(x2, kind, b)
    o[0] = a[0] * b[0]
    o[1] = a[1] * b[0]
    o[2] = a[0] * b[1]
    o[3] = a[2] * b[0]
    o[4] = a[1] * b[1]
    o[5] = a[0] * b[2]
    o[6] = a[3] * b[0]
    o[7] = a[2] * b[1]
    o[8] = a[1] * b[2]
    o[9] = a[0] * b[3]


cdef inline void _phis10(double x1, double x2, double h, double mu1,
                         double mu2, double* o) noexcept nogil:
    cdef double w, sw, H, H1, H2, H3
    cdef double u, u1, u2, u3, v, v1, v2, v3
    cdef double iH, iH_1, iH_2, iH_3, iH3, iH3_1, iH3_2, iH3_3
    cdef double A, A1, A2, A3, B, B1, B2, B3, z, z2, z3
    w = 1.0 - x1 * x1
    sw = sqrt(w)
    H = h + 1.0 - sw
    H1 = x1 / sw
    H2 = pow(w, -1.5)
    H3 = 3.0 * x1 * pow(w, -2.5)
    u = x1 - mu1 * h * x1 - mu2 * x1 * x1 * x1
    u1 = 1.0 - mu1 * h - 3.0 * mu2 * x1 * x1
    u2 = -6.0 * mu2 * x1
    u3 = -6.0 * mu2
    v = mu1 * h * x1 + mu2 * x1 * x1 * x1
    v1 = mu1 * h + 3.0 * mu2 * x1 * x1
    v2 = 6.0 * mu2 * x1
    v3 = 6.0 * mu2
    iH = 1.0 / H
    iH_1 = -H1 * iH * iH
    iH_2 = 2.0 * H1 * H1 * iH * iH * iH - H2 * iH * iH
    iH_3 = (-6.0 * H1 * H1 * H1 * iH * iH * iH * iH
            + 6.0 * H1 * H2 * iH * iH * iH - H3 * iH * iH)
    iH3 = iH * iH * iH
    iH3_1 = -3.0 * H1 * iH3 * iH
    iH3_2 = 12.0 * H1 * H1 * iH3 * iH * iH - 3.0 * H2 * iH3 * iH
    iH3_3 = (-60.0 * H1 * H1 * H1 * iH3 * iH * iH * iH
             + 36.0 * H1 * H2 * iH3 * iH * iH - 3.0 * H3 * iH3 * iH)
    A = u * iH
    A1 = u1 * iH + u * iH_1
    A2 = u2 * iH + 2.0 * u1 * iH_1 + u * iH_2
    A3 = u3 * iH + 3.0 * u2 * iH_1 + 3.0 * u1 * iH_2 + u * iH_3
    B = v * iH3
    B1 = v1 * iH3 + v * iH3_1
    B2 = v2 * iH3 + 2.0 * v1 * iH3_1 + v * iH3_2
    B3 = v3 * iH3 + 3.0 * v2 * iH3_1 + 3.0 * v1 * iH3_2 + v * iH3_3
    z = x2
    z2 = x2 * x2
    z3 = z2 * x2
    o[0] = A * z + B * z3
    o[1] = A1 * z + B1 * z3
    o[2] = A + 3.0 * B * z2
    o[3] = A2 * z + B2 * z3
    o[4] = A1 + 3.0 * B1 * z2
    o[5] = 6.0 * B * z
    o[6] = A3 * z + B3 * z3
    o[7] = A2 + 3.0 * B2 * z2
    o[8] = 6.0 * B1 * z
    o[9] = 6.0 * B


cdef inline void _phi010(double x1, double x2, double h, double delta,
                         int kind, double* o) noexcept nogil:
    cdef double a = x1
    cdef double b = x2 - 1.0 - h
    cdef double r = sqrt(a * a + b * b)
    cdef double p[4]
    cdef double e1, e2, ir, ir3, ir5
    cdef double r11, r12, r22, r111, r112, r122, r222
    cdef int k
    for k in range(10):
        o[k] = 0.0
    if r <= 1.0 + delta:
        o[0] = a
        o[1] = 1.0
        return
    if r >= 1.0 + 2.0 * delta:
        return
    _step4((r - 1.0 - delta) / delta, kind, p)
    p[0] = 1.0 - p[0]
    p[1] = -p[1] / delta
    p[2] = -p[2] / (delta * delta)
    p[3] = -p[3] / (delta * delta * delta)
    e1 = a / r
    e2 = b / r
    ir = 1.0 / r
    ir3 = ir * ir * ir
    ir5 = ir3 * ir * ir
    r11 = ir - a * a * ir3
    r12 = -a * b * ir3
    r22 = ir - b * b * ir3
    r111 = -3.0 * a * ir3 + 3.0 * a * a * a * ir5
    r112 = -b * ir3 + 3.0 * a * a * b * ir5
    r122 = -a * ir3 + 3.0 * a * b * b * ir5
    r222 = -3.0 * b * ir3 + 3.0 * b * b * b * ir5
    o[0] = a * p[0]
    o[1] = p[0] + a * p[1] * e1
    o[2] = a * p[1] * e2
    o[3] = 2.0 * p[1] * e1 + a * (p[2] * e1 * e1 + p[1] * r11)
    o[4] = p[1] * e2 + a * (p[2] * e1 * e2 + p[1] * r12)
    o[5] = a * (p[2] * e2 * e2 + p[1] * r22)
    o[6] = (3.0 * (p[2] * e1 * e1 + p[1] * r11)
            + a * (p[3] * e1 * e1 * e1 + 3.0 * p[2] * e1 * r11 + p[1] * r111))
    o[7] = (2.0 * (p[2] * e1 * e2 + p[1] * r12)
            + a * (p[3] * e1 * e1 * e2 + p[2] * (r11 * e2 + 2.0 * r12 * e1)
                   + p[1] * r112))
    o[8] = ((p[2] * e2 * e2 + p[1] * r22)
            + a * (p[3] * e1 * e2 * e2 + p[2] * (2.0 * r12 * e2 + r22 * e1)
                   + p[1] * r122))
    o[9] = a * (p[3] * e2 * e2 * e2 + 3.0 * p[2] * e2 * r22 + p[1] * r222)


def step_jet(u, int kind):
    cdef double[::1] uv = np.ascontiguousarray(np.atleast_1d(u), dtype=np.float64)
    cdef Py_ssize_t n = uv.shape[0], i
    s = np.empty(n)
    s1 = np.empty(n)
    s2 = np.empty(n)
    s3 = np.empty(n)
    cdef double[::1] sv = s, s1v = s1, s2v = s2, s3v = s3
    cdef double o[4]
    for i in range(n):
        _step4(uv[i], kind, o)
        sv[i] = o[0]; s1v[i] = o[1]; s2v[i] = o[2]; s3v[i] = o[3]
    return s, s1, s2, s3


def chi_jet(x1, x2, int kind):
    cdef double[::1] a = np.ascontiguousarray(np.atleast_1d(x1), dtype=np.float64)
    cdef double[::1] b = np.ascontiguousarray(np.atleast_1d(x2), dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0], i
    out = np.empty((n, 10))
    cdef double[:, ::1] ov = out
    for i in range(n):
        _chi10(a[i], b[i], kind, &ov[i, 0])
    return out


def gap_stream_jet(x1, x2, double h, double mu1, double mu2, double delta,
                   int chi_kind, int phi_kind):
    cdef double[::1] a = np.ascontiguousarray(np.atleast_1d(x1), dtype=np.float64)
    cdef double[::1] b = np.ascontiguousarray(np.atleast_1d(x2), dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0], i
    cdef int k
    out = np.empty((n, 10))
    cdef double[:, ::1] ov = out
    cdef double C[10]
    cdef double S[10]
    cdef double P[10]
    cdef double E[10]
    for i in range(n):
        _phis10(a[i], b[i], h, mu1, mu2, S)
        # chi is exactly (1, 0, ..., 0) on the inner quarter square; test
        # the geometry, since the value alone rounds to 1 slightly outside
        if fabs(a[i]) <= 0.25 and fabs(b[i]) <= 0.25:
            for k in range(10):
                ov[i, k] = S[k]
            continue
        _chi10(a[i], b[i], chi_kind, C)
        _phi010(a[i], b[i], h, delta, phi_kind, P)
        for k in range(10):
            E[k] = S[k] - P[k]
        ov[i, 0] = P[0] + C[0] * E[0]
        ov[i, 1] = P[1] + C[1] * E[0] + C[0] * E[1]
        ov[i, 2] = P[2] + C[2] * E[0] + C[0] * E[2]
        ov[i, 3] = P[3] + C[3] * E[0] + 2.0 * C[1] * E[1] + C[0] * E[3]
        ov[i, 4] = (P[4] + C[4] * E[0] + C[1] * E[2] + C[2] * E[1]
                    + C[0] * E[4])
        ov[i, 5] = P[5] + C[5] * E[0] + 2.0 * C[2] * E[2] + C[0] * E[5]
        ov[i, 6] = (P[6] + C[6] * E[0] + 3.0 * C[3] * E[1]
                    + 3.0 * C[1] * E[3] + C[0] * E[6])
        ov[i, 7] = (P[7] + C[7] * E[0] + C[3] * E[2] + 2.0 * C[4] * E[1]
                    + 2.0 * C[1] * E[4] + C[2] * E[3] + C[0] * E[7])
        ov[i, 8] = (P[8] + C[8] * E[0] + C[5] * E[1] + 2.0 * C[4] * E[2]
                    + 2.0 * C[2] * E[4] + C[1] * E[5] + C[0] * E[8])
        ov[i, 9] = (P[9] + C[9] * E[0] + 3.0 * C[5] * E[2]
                    + 3.0 * C[2] * E[5] + C[0] * E[9])
    return out


def outer_stream_jet(x1, x2, double h, double delta, int kind):
    cdef double[::1] a = np.ascontiguousarray(np.atleast_1d(x1), dtype=np.float64)
    cdef double[::1] b = np.ascontiguousarray(np.atleast_1d(x2), dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0], i
    out = np.empty((n, 10))
    cdef double[:, ::1] ov = out
    for i in range(n):
        _phi010(a[i], b[i], h, delta, kind, &ov[i, 0])
    return out


def pressure_coeffs(x1, double h, double mu1, double mu2):
    cdef double[::1] xv = np.ascontiguousarray(np.atleast_1d(x1), dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], i
    PQ = np.empty(n)
    PQp = np.empty(n)
    i1 = np.empty(n)
    i2 = np.empty(n)
    cdef double[::1] pq = PQ, pqp = PQp, i1v = i1, i2v = i2
    cdef double x, w, sw, H, H1, H2, H3, H4, iH, a, P, Pp, G, Gp
    for i in range(n):
        x = xv[i]
        w = 1.0 - x * x
        sw = sqrt(w)
        H = h + 1.0 - sw
        H1 = x / sw
        H2 = pow(w, -1.5)
        H3 = 3.0 * x * pow(w, -2.5)
        H4 = 3.0 * pow(w, -2.5) + 15.0 * x * x * pow(w, -3.5)
        iH = 1.0 / H
        a = mu1 * h + mu2 * x * x
        P = -1.5 * (H2 * iH * iH - 2.0 * H1 * H1 * iH * iH * iH)
        Pp = -1.5 * (H3 * iH * iH - 6.0 * H1 * H2 * iH * iH * iH
                     + 6.0 * H1 * H1 * H1 * iH * iH * iH * iH)
        G = (3.0 * H2 * H1 * iH * iH * iH
             - 3.0 * H1 * H1 * H1 * iH * iH * iH * iH
             - 0.5 * H3 * iH * iH)
        Gp = (4.0 * H3 * H1 * iH * iH * iH + 3.0 * H2 * H2 * iH * iH * iH
              - 18.0 * H2 * H1 * H1 * iH * iH * iH * iH
              + 12.0 * H1 * H1 * H1 * H1 * iH * iH * iH * iH * iH
              - 0.5 * H4 * iH * iH)
        pq[i] = P + x * G
        pqp[i] = Pp + G + x * Gp
        i1v[i] = -6.0 * x * a * iH * iH * iH
        i2v[i] = (1.0 - a) * (2.0 * H1 * iH * iH
                              - x * (2.0 * H1 * H1 * iH * iH * iH
                                     - H2 * iH * iH))
    return PQ, PQp, i1, i2
