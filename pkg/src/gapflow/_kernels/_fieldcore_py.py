"""Numpy fallback kernels (vectorized over points).

Jet layout (10 columns): [v, d1, d2, d11, d12, d22, d111, d112, d122, d222]
referring to the stream function value and its partial derivatives.  The
compiled backend in _fieldcore.pyx mirrors these functions one to one.
"""

import numpy as np

PROFILE_EXP = 0
PROFILE_POLY7 = 1

# ---------------------------------------------------------------- profiles


def step_jet(u, kind):
    """Smooth step s on [0,1] with s(<=0)=0, s(>=1)=1; returns (s, s', s'', s''')."""
    u = np.asarray(u, dtype=np.float64)
    s = np.zeros_like(u)
    s1 = np.zeros_like(u)
    s2 = np.zeros_like(u)
    s3 = np.zeros_like(u)
    hi = u >= 1.0
    s[hi] = 1.0
    mid = (u > 0.0) & (u < 1.0)
    um = u[mid]
    if kind == PROFILE_POLY7:
        # C^3 polynomial step: 35u^4 - 84u^5 + 70u^6 - 20u^7
        s[mid] = ((((-20.0 * um + 70.0) * um - 84.0) * um + 35.0) * um**4)
        s1[mid] = (((-140.0 * um + 420.0) * um - 420.0) * um + 140.0) * um**3
        s2[mid] = (((-840.0 * um + 2100.0) * um - 1680.0) * um + 420.0) * um**2
        s3[mid] = (((-4200.0 * um + 8400.0) * um - 5040.0) * um + 840.0) * um
    else:
        # C^inf step: sigma(x(u)), x = 1/(1-u) - 1/u, sigma the logistic.
        v = 1.0 - um
        x = 1.0 / v - 1.0 / um
        x1 = 1.0 / um**2 + 1.0 / v**2
        x2 = -2.0 / um**3 + 2.0 / v**3
        x3 = 6.0 / um**4 + 6.0 / v**4
        # stable logistic
        sg = np.where(x >= 0.0, 1.0 / (1.0 + np.exp(-np.abs(x))),
                      np.exp(-np.abs(x)) / (1.0 + np.exp(-np.abs(x))))
        g1 = sg * (1.0 - sg)
        g2 = g1 * (1.0 - 2.0 * sg)
        g3 = g1 * (1.0 - 6.0 * sg + 6.0 * sg * sg)
        s[mid] = sg
        s1[mid] = g1 * x1
        s2[mid] = g2 * x1**2 + g1 * x2
        s3[mid] = g3 * x1**3 + 3.0 * g2 * x1 * x2 + g1 * x3
    return s, s1, s2, s3


def _cut_jet(t, kind):
    """1-D cutoff c(t): 1 for |t|<=1/4, 0 for |t|>=1/2; returns (c, c', c'', c''')."""
    t = np.asarray(t, dtype=np.float64)
    at = np.abs(t)
    sgn = np.where(t >= 0.0, 1.0, -1.0)
    u = (at - 0.25) * 4.0
    s, s1, s2, s3 = step_jet(u, kind)
    c = 1.0 - s
    c1 = -4.0 * s1 * sgn
    c2 = -16.0 * s2
    c3 = -64.0 * s3 * sgn
    return c, c1, c2, c3


def chi_jet(x1, x2, kind):
    """Square cutoff chi = c(x1) c(x2), full jet to third order, shape (n, 10)."""
    a, a1, a2, a3 = _cut_jet(x1, kind)
    b, b1, b2, b3 = _cut_jet(x2, kind)
    out = np.empty((np.broadcast(x1, x2).size, 10))
    out[:, 0] = a * b
    out[:, 1] = a1 * b
    out[:, 2] = a * b1
    out[:, 3] = a2 * b
    out[:, 4] = a1 * b1
    out[:, 5] = a * b2
    out[:, 6] = a3 * b
    out[:, 7] = a2 * b1
    out[:, 8] = a1 * b2
    out[:, 9] = a * b3
    return out


def radial_jet(r, delta, kind):
    """Radial cutoff rho(r): 1 for r<=1+delta, 0 for r>=1+2delta; (rho..rho''')."""
    u = (np.asarray(r, dtype=np.float64) - 1.0 - delta) / delta
    s, s1, s2, s3 = step_jet(u, kind)
    return 1.0 - s, -s1 / delta, -s2 / delta**2, -s3 / delta**3


# ---------------------------------------------------------- gap coefficients


def h_derivs(x1, h):
    """H = h + 1 - sqrt(1-x1^2) and derivatives to fourth order."""
    x1 = np.asarray(x1, dtype=np.float64)
    w = 1.0 - x1 * x1
    sw = np.sqrt(w)
    H = h + 1.0 - sw
    H1 = x1 / sw
    H2 = w ** -1.5
    H3 = 3.0 * x1 * w ** -2.5
    H4 = 3.0 * w ** -2.5 + 15.0 * x1 * x1 * w ** -3.5
    return H, H1, H2, H3, H4


def _ab_coeffs(x1, h, mu1, mu2):
    """A = x1(1-a)/H and B = x1 a/H^3 with three x1-derivatives each."""
    x1 = np.asarray(x1, dtype=np.float64)
    H, H1, H2, H3, _ = h_derivs(x1, h)
    # u = x1(1-a), v = x1 a with a = mu1 h + mu2 x1^2
    u = x1 - mu1 * h * x1 - mu2 * x1**3
    u1 = 1.0 - mu1 * h - 3.0 * mu2 * x1**2
    u2 = -6.0 * mu2 * x1
    u3 = -6.0 * mu2 + np.zeros_like(x1)
    v = mu1 * h * x1 + mu2 * x1**3
    v1 = mu1 * h + 3.0 * mu2 * x1**2
    v2 = 6.0 * mu2 * x1
    v3 = 6.0 * mu2 + np.zeros_like(x1)
    iH = 1.0 / H
    iH_1 = -H1 * iH**2
    iH_2 = 2.0 * H1**2 * iH**3 - H2 * iH**2
    iH_3 = -6.0 * H1**3 * iH**4 + 6.0 * H1 * H2 * iH**3 - H3 * iH**2
    iH3 = iH**3
    iH3_1 = -3.0 * H1 * iH**4
    iH3_2 = 12.0 * H1**2 * iH**5 - 3.0 * H2 * iH**4
    iH3_3 = -60.0 * H1**3 * iH**6 + 36.0 * H1 * H2 * iH**5 - 3.0 * H3 * iH**4
    A = u * iH
    A1 = u1 * iH + u * iH_1
    A2 = u2 * iH + 2.0 * u1 * iH_1 + u * iH_2
    A3 = u3 * iH + 3.0 * u2 * iH_1 + 3.0 * u1 * iH_2 + u * iH_3
    B = v * iH3
    B1 = v1 * iH3 + v * iH3_1
    B2 = v2 * iH3 + 2.0 * v1 * iH3_1 + v * iH3_2
    B3 = v3 * iH3 + 3.0 * v2 * iH3_1 + 3.0 * v1 * iH3_2 + v * iH3_3
    return (A, A1, A2, A3), (B, B1, B2, B3)


def phis_jet(x1, x2, h, mu1, mu2):
    """Jet of the gap stream phi_s = A(x1) x2 + B(x1) x2^3, shape (n, 10)."""
    x1 = np.asarray(x1, dtype=np.float64)
    x2 = np.asarray(x2, dtype=np.float64)
    (A, A1, A2, A3), (B, B1, B2, B3) = _ab_coeffs(x1, h, mu1, mu2)
    z = x2
    z2 = x2 * x2
    z3 = z2 * x2
    out = np.empty((np.broadcast(x1, x2).size, 10))
    out[:, 0] = A * z + B * z3
    out[:, 1] = A1 * z + B1 * z3
    out[:, 2] = A + 3.0 * B * z2
    out[:, 3] = A2 * z + B2 * z3
    out[:, 4] = A1 + 3.0 * B1 * z2
    out[:, 5] = 6.0 * B * z
    out[:, 6] = A3 * z + B3 * z3
    out[:, 7] = A2 + 3.0 * B2 * z2
    out[:, 8] = 6.0 * B1 * z
    out[:, 9] = 6.0 * B + np.zeros_like(z)
    return out


def phi0_jet(x1, x2, h, delta, kind):
    """Jet of phi0 = y1 rho(|y|), y = x - (0, 1+h), shape (n, 10)."""
    y1 = np.asarray(x1, dtype=np.float64)
    y2 = np.asarray(x2, dtype=np.float64) - 1.0 - h
    r = np.hypot(y1, y2)
    out = np.zeros((r.size, 10))
    inner = r <= 1.0 + delta
    out[inner, 0] = y1[inner]
    out[inner, 1] = 1.0
    band = (r > 1.0 + delta) & (r < 1.0 + 2.0 * delta)
    if not np.any(band):
        return out
    p, p1, p2, p3 = radial_jet(r[band], delta, kind)
    a = y1[band]
    b = y2[band]
    rr = r[band]
    e1 = a / rr
    e2 = b / rr
    ir = 1.0 / rr
    ir3 = ir**3
    ir5 = ir**5
    # second derivatives of r
    r11 = ir - a * a * ir3
    r12 = -a * b * ir3
    r22 = ir - b * b * ir3
    # third derivatives of r
    r111 = -3.0 * a * ir3 + 3.0 * a**3 * ir5
    r112 = -b * ir3 + 3.0 * a * a * b * ir5
    r122 = -a * ir3 + 3.0 * a * b * b * ir5
    r222 = -3.0 * b * ir3 + 3.0 * b**3 * ir5
    # phi0 = y1 * rho(r)
    out[band, 0] = a * p
    out[band, 1] = p + a * p1 * e1
    out[band, 2] = a * p1 * e2
    out[band, 3] = 2.0 * p1 * e1 + a * (p2 * e1 * e1 + p1 * r11)
    out[band, 4] = p1 * e2 + a * (p2 * e1 * e2 + p1 * r12)
    out[band, 5] = a * (p2 * e2 * e2 + p1 * r22)
    out[band, 6] = 3.0 * (p2 * e1 * e1 + p1 * r11) + a * (
        p3 * e1**3 + 3.0 * p2 * e1 * r11 + p1 * r111)
    out[band, 7] = 2.0 * (p2 * e1 * e2 + p1 * r12) + a * (
        p3 * e1 * e1 * e2 + p2 * (r11 * e2 + 2.0 * r12 * e1) + p1 * r112)
    out[band, 8] = (p2 * e2 * e2 + p1 * r22) + a * (
        p3 * e1 * e2 * e2 + p2 * (2.0 * r12 * e2 + r22 * e1) + p1 * r122)
    out[band, 9] = a * (p3 * e2**3 + 3.0 * p2 * e2 * r22 + p1 * r222)
    return out


def gap_stream_jet(x1, x2, h, mu1, mu2, delta, chi_kind, phi_kind):
    """Blended stream jet chi*phi_s + (1-chi)*phi0 at points of the half gap."""
    x1 = np.atleast_1d(np.asarray(x1, dtype=np.float64))
    x2 = np.atleast_1d(np.asarray(x2, dtype=np.float64))
    C = chi_jet(x1, x2, chi_kind)
    S = phis_jet(x1, x2, h, mu1, mu2)
    # fast path: the whole chi jet is exactly (1, 0, ..., 0) on the inner
    # quarter square (the value alone can round to 1 while derivatives are
    # still tiny-but-nonzero, so test the geometry, not the value)
    flat = (np.abs(x1) <= 0.25) & (np.abs(x2) <= 0.25)
    if np.all(flat):
        return S
    P = np.zeros_like(S)
    nb = ~flat
    P[nb] = phi0_jet(x1[nb], x2[nb], h, delta, phi_kind)
    E = S - P  # E = phi_s - phi0
    out = P.copy()
    c, c1, c2 = C[:, 0], C[:, 1], C[:, 2]
    c11, c12, c22 = C[:, 3], C[:, 4], C[:, 5]
    c111, c112, c122, c222 = C[:, 6], C[:, 7], C[:, 8], C[:, 9]
    e, e1, e2 = E[:, 0], E[:, 1], E[:, 2]
    e11, e12, e22 = E[:, 3], E[:, 4], E[:, 5]
    e111, e112, e122, e222 = E[:, 6], E[:, 7], E[:, 8], E[:, 9]
    out[:, 0] += c * e
    out[:, 1] += c1 * e + c * e1
    out[:, 2] += c2 * e + c * e2
    out[:, 3] += c11 * e + 2.0 * c1 * e1 + c * e11
    out[:, 4] += c12 * e + c1 * e2 + c2 * e1 + c * e12
    out[:, 5] += c22 * e + 2.0 * c2 * e2 + c * e22
    out[:, 6] += c111 * e + 3.0 * c11 * e1 + 3.0 * c1 * e11 + c * e111
    out[:, 7] += (c112 * e + c11 * e2 + 2.0 * c12 * e1
                  + 2.0 * c1 * e12 + c2 * e11 + c * e112)
    out[:, 8] += (c122 * e + c22 * e1 + 2.0 * c12 * e2
                  + 2.0 * c2 * e12 + c1 * e22 + c * e122)
    out[:, 9] += c222 * e + 3.0 * c22 * e2 + 3.0 * c2 * e22 + c * e222
    return out


def outer_stream_jet(x1, x2, h, delta, phi_kind):
    x1 = np.atleast_1d(np.asarray(x1, dtype=np.float64))
    x2 = np.atleast_1d(np.asarray(x2, dtype=np.float64))
    return phi0_jet(x1, x2, h, delta, phi_kind)


def pressure_coeffs(x1, h, mu1, mu2):
    """Local pressure coefficients: (PQ, PQ', i1, i2) at abscissa x1.

    q_tilde = I1 + 2 I2 + d12 Psi + PQ * x2^2,
    d1 q_tilde = i1 + 2 i2 + d112 Psi + PQ' * x2^2,
    d2 q_tilde = d122 Psi + 2 PQ * x2.
    """
    x1 = np.atleast_1d(np.asarray(x1, dtype=np.float64))
    H, H1, H2, H3, H4 = h_derivs(x1, h)
    iH = 1.0 / H
    a = mu1 * h + mu2 * x1**2
    P = -1.5 * (H2 * iH**2 - 2.0 * H1**2 * iH**3)
    Pp = -1.5 * (H3 * iH**2 - 6.0 * H1 * H2 * iH**3 + 6.0 * H1**3 * iH**4)
    G = 3.0 * H2 * H1 * iH**3 - 3.0 * H1**3 * iH**4 - 0.5 * H3 * iH**2
    Gp = (4.0 * H3 * H1 * iH**3 + 3.0 * H2**2 * iH**3
          - 18.0 * H2 * H1**2 * iH**4 + 12.0 * H1**4 * iH**5
          - 0.5 * H4 * iH**2)
    Q = x1 * G
    Qp = G + x1 * Gp
    i1 = -6.0 * x1 * a * iH**3
    i2 = (1.0 - a) * (2.0 * H1 * iH**2 - x1 * (2.0 * H1**2 * iH**3 - H2 * iH**2))
    return P + Q, Pp + Qp, i1, i2
