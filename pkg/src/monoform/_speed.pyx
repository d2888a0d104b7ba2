# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for the radial profile and its derivative jet.

Same closed forms as monoform._kernels_np, evaluated point by point in C.
"""

from libc.math cimport cos, sin, M_PI

cdef double HALF_PI = M_PI / 2.0
cdef double POLE_EPS = 1e-9


cdef inline void _F_chain(double c, double x, double* F, double* F1, double* F2) nogil:
    cdef double W = c + x
    cdef double h = c * x / W
    cdef double h1 = c * c / (W * W)
    cdef double h2 = -2.0 * c * c / (W * W * W)
    cdef double one_x = 1.0 - x
    cdef double D = c * x + (1.0 - c) * one_x * one_x
    cdef double D1 = c - 2.0 * (1.0 - c) * one_x
    cdef double D2 = 2.0 * (1.0 - c)
    cdef double x2 = x * x
    cdef double G = 1.0 + x2 / D
    cdef double G1 = 2.0 * x / D - x2 * D1 / (D * D)
    cdef double G2 = (2.0 / D - 4.0 * x * D1 / (D * D) - x2 * D2 / (D * D)
                      + 2.0 * x2 * D1 * D1 / (D * D * D))
    F[0] = h * G
    F1[0] = h1 * G + h * G1
    F2[0] = h2 * G + 2.0 * h1 * G1 + h * G2


cdef inline int _pole_code(double theta) nogil:
    if HALF_PI - theta < POLE_EPS:
        return 1
    if theta + HALF_PI < POLE_EPS:
        return -1
    return 0


cdef void _jet_point(int n, double c, double theta, double phi, double* out) nogil:
    cdef int pole = _pole_code(theta)
    cdef double F, F1, F2, Fm, Fm1, Fm2
    cdef double x, f, f1, f2, g, g1, g2
    cdef double sf, cf, sg, cg, u, v, u1, v1, u2, v2
    cdef double P, Q, P1, P2, S, S_t, S_p, K, a, S2, S3
    cdef double a_t, a_p, a_tt, a_tp, a_pp, dlt, dlt_t, dlt_tt

    if pole != 0:
        out[0] = pole
        out[1] = 0.0
        out[2] = 0.0
        out[3] = -pole
        out[4] = 0.0
        out[5] = 0.0
        return

    if c == 1.0:
        sf = sin(theta)
        cf = cos(theta)
        out[0] = sf
        out[1] = cf
        out[2] = 0.0
        out[3] = -sf
        out[4] = 0.0
        out[5] = 0.0
        return

    x = theta / M_PI + 0.5
    _F_chain(c, x, &F, &F1, &F2)
    f = M_PI * F - HALF_PI
    f1 = F1
    f2 = F2 / M_PI
    _F_chain(c, 1.0 - x, &Fm, &Fm1, &Fm2)
    g = HALF_PI - M_PI * Fm
    g1 = Fm1
    g2 = -Fm2 / M_PI

    sf = sin(f)
    cf = cos(f)
    sg = sin(g)
    cg = cos(g)
    u = cf * cf
    v = cg * cg
    u1 = -sin(2.0 * f) * f1
    v1 = -sin(2.0 * g) * g1
    u2 = -2.0 * cos(2.0 * f) * f1 * f1 - sin(2.0 * f) * f2
    v2 = -2.0 * cos(2.0 * g) * g1 * g1 - sin(2.0 * g) * g2

    P = 0.5 * (1.0 + cos(n * phi))
    Q = 1.0 - P
    P1 = -0.5 * n * sin(n * phi)
    P2 = -0.5 * n * n * cos(n * phi)

    S = P * u + Q * v
    S_t = P * u1 + Q * v1
    S_p = P1 * (u - v)
    K = u1 * v - u * v1

    a = P * u / S
    if a < 0.0:
        a = 0.0
    elif a > 1.0:
        a = 1.0
    S2 = S * S
    S3 = S2 * S
    a_t = P * Q * K / S2
    a_p = u * v * P1 / S2
    a_tt = P * Q * ((u2 * v - u * v2) * S - 2.0 * K * S_t) / S3
    a_tp = P1 * K * ((Q - P) * S - 2.0 * P * Q * (u - v)) / S3
    a_pp = u * v * (P2 * S - 2.0 * P1 * S_p) / S3

    dlt = sf - sg
    dlt_t = cf * f1 - cg * g1
    dlt_tt = -sf * f1 * f1 + cf * f2 + sg * g1 * g1 - cg * g2

    out[0] = a * dlt + sg
    out[1] = a_t * dlt + a * dlt_t + cg * g1
    out[2] = a_p * dlt
    out[3] = a_tt * dlt + 2.0 * a_t * dlt_t + a * dlt_tt + (-sg * g1 * g1 + cg * g2)
    out[4] = a_tp * dlt + a_p * dlt_t
    out[5] = a_pp * dlt


def rho_flat(int n, double c, double[::1] theta, double[::1] phi, double[::1] out):
    """Radial profile on flat arrays (writes into out)."""
    cdef Py_ssize_t i, m = theta.shape[0]
    cdef double jet[6]
    cdef int pole
    cdef double x, f, g, cf, cg, P, Q, A, S, a
    cdef double Fv, F1, F2, Fm, Fm1, Fm2
    with nogil:
        for i in range(m):
            pole = _pole_code(theta[i])
            if pole != 0:
                out[i] = pole
            elif c == 1.0:
                out[i] = sin(theta[i])
            else:
                x = theta[i] / M_PI + 0.5
                _F_chain(c, x, &Fv, &F1, &F2)
                f = M_PI * Fv - HALF_PI
                _F_chain(c, 1.0 - x, &Fm, &Fm1, &Fm2)
                g = HALF_PI - M_PI * Fm
                cf = cos(f)
                cg = cos(g)
                P = 0.5 * (1.0 + cos(n * phi[i]))
                Q = 1.0 - P
                A = P * cf * cf
                S = A + Q * cg * cg
                a = A / S
                if a < 0.0:
                    a = 0.0
                elif a > 1.0:
                    a = 1.0
                out[i] = a * sin(f) + (1.0 - a) * sin(g)


def jet_flat(int n, double c, double[::1] theta, double[::1] phi, double[:, ::1] out):
    """Jet (rho and five partials) on flat arrays; out has shape (6, len)."""
    cdef Py_ssize_t i, m = theta.shape[0]
    cdef double jet[6]
    with nogil:
        for i in range(m):
            _jet_point(n, c, theta[i], phi[i], jet)
            out[0, i] = jet[0]
            out[1, i] = jet[1]
            out[2, i] = jet[2]
            out[3, i] = jet[3]
            out[4, i] = jet[4]
            out[5, i] = jet[5]
