"""Compiled numeric kernels for 2x2 / 4x4 complex matrix work.

Mirrors ``ptsig._kernels.fallback`` branch for branch; keep the two in sync.
"""

import numpy as np

from libc.math cimport ceil, cos, exp, hypot, log2, sin, sqrt

BACKEND_NAME = "compiled"

EIG_GAP_RTOL = 1e-8

ctypedef double complex zdouble


cdef inline double _cabs(zdouble z) noexcept:
    return hypot(z.real, z.imag)


cdef inline zdouble _csqrt(zdouble z) noexcept:
    # principal branch, matching numpy's convention for imag == 0
    cdef double x = z.real
    cdef double y = z.imag
    cdef double r, u, v
    if y == 0.0:
        if x >= 0.0:
            return sqrt(x)
        return 1j * sqrt(-x)
    r = hypot(x, y)
    if x >= 0.0:
        u = sqrt(0.5 * (r + x))
        v = y / (2.0 * u)
    else:
        v = sqrt(0.5 * (r - x))
        if y < 0.0:
            v = -v
        u = y / (2.0 * v)
    return u + 1j * v


cdef inline zdouble _cexp(zdouble z) noexcept:
    cdef double m = exp(z.real)
    return m * cos(z.imag) + 1j * (m * sin(z.imag))


cdef inline void _eigvec2(zdouble a, zdouble b, zdouble c, zdouble d,
                          zdouble lam, int index, zdouble* out) noexcept:
    cdef zdouble v0, v1, ph
    cdef double n1, n2, nrm, mag
    n1 = _cabs(b) ** 2 + _cabs(lam - a) ** 2
    n2 = _cabs(lam - d) ** 2 + _cabs(c) ** 2
    if n1 < 1e-24 and n2 < 1e-24:
        out[0] = 1.0 if index == 0 else 0.0
        out[1] = 0.0 if index == 0 else 1.0
        return
    if n1 >= n2:
        v0 = b
        v1 = lam - a
        nrm = sqrt(n1)
    else:
        v0 = lam - d
        v1 = c
        nrm = sqrt(n2)
    v0 = v0 / nrm
    v1 = v1 / nrm
    mag = _cabs(v0) if _cabs(v0) >= _cabs(v1) else _cabs(v1)
    ph = v0.conjugate() if _cabs(v0) >= _cabs(v1) else v1.conjugate()
    if mag > 0.0:
        ph = ph / mag
        v0 = v0 * ph
        v1 = v1 * ph
    out[0] = v0
    out[1] = v1


def eig2(m_in):
    """Closed-form eigendecomposition of a 2x2 complex matrix.

    Returns ``(w, V)`` with eigenvalues sorted ascending by (re, im) and
    unit-norm column eigenvectors with a deterministic phase.
    """
    m = np.ascontiguousarray(m_in, dtype=np.complex128)
    cdef zdouble[:, ::1] mv = m
    w_arr = np.empty(2, dtype=np.complex128)
    v_arr = np.empty((2, 2), dtype=np.complex128)
    cdef zdouble[::1] w = w_arr
    cdef zdouble[:, ::1] v = v_arr
    cdef double scale = 0.0
    cdef double mag
    cdef int i, j
    for i in range(2):
        for j in range(2):
            mag = _cabs(mv[i, j])
            if mag > scale:
                scale = mag
    if scale == 0.0:
        w[0] = 0.0
        w[1] = 0.0
        v[0, 0] = 1.0
        v[0, 1] = 0.0
        v[1, 0] = 0.0
        v[1, 1] = 1.0
        return w_arr, v_arr
    cdef zdouble a = mv[0, 0] / scale
    cdef zdouble b = mv[0, 1] / scale
    cdef zdouble c = mv[1, 0] / scale
    cdef zdouble d = mv[1, 1] / scale
    cdef zdouble half = 0.5 * (a - d)
    cdef zdouble disc = _csqrt(half * half + b * c)
    cdef zdouble mean = 0.5 * (a + d)
    cdef zdouble l1 = mean + disc
    cdef zdouble l2 = mean - disc
    cdef zdouble tmp
    if not (l1.real < l2.real or (l1.real == l2.real and l1.imag <= l2.imag)):
        tmp = l1
        l1 = l2
        l2 = tmp
    cdef zdouble vec[2]
    _eigvec2(a, b, c, d, l1, 0, vec)
    v[0, 0] = vec[0]
    v[1, 0] = vec[1]
    _eigvec2(a, b, c, d, l2, 1, vec)
    v[0, 1] = vec[0]
    v[1, 1] = vec[1]
    w[0] = l1 * scale
    w[1] = l2 * scale
    return w_arr, v_arr


def expm2(m_in):
    """exp(m) for a 2x2 complex matrix.

    Diagonalizes when the eigenvalue gap is safely resolvable, otherwise
    falls back to a scaled-and-squared truncated power series.
    """
    m = np.ascontiguousarray(m_in, dtype=np.complex128)
    cdef zdouble[:, ::1] mv = m
    out_arr = np.empty((2, 2), dtype=np.complex128)
    cdef zdouble[:, ::1] out = out_arr
    cdef double fro = 0.0
    cdef int i, j, k, squarings
    for i in range(2):
        for j in range(2):
            fro += mv[i, j].real ** 2 + mv[i, j].imag ** 2
    fro = sqrt(fro)
    if fro == 0.0:
        out[0, 0] = 1.0
        out[0, 1] = 0.0
        out[1, 0] = 0.0
        out[1, 1] = 1.0
        return out_arr
    w_arr, v_arr = eig2(m)
    cdef zdouble[::1] w = w_arr
    cdef zdouble[:, ::1] v = v_arr
    cdef zdouble det, e0, e1, i00, i01, i10, i11
    if _cabs(w[0] - w[1]) > EIG_GAP_RTOL * fro:
        det = v[0, 0] * v[1, 1] - v[0, 1] * v[1, 0]
        if _cabs(det) > 1e-6:
            i00 = v[1, 1] / det
            i01 = -v[0, 1] / det
            i10 = -v[1, 0] / det
            i11 = v[0, 0] / det
            e0 = _cexp(w[0])
            e1 = _cexp(w[1])
            out[0, 0] = v[0, 0] * e0 * i00 + v[0, 1] * e1 * i10
            out[0, 1] = v[0, 0] * e0 * i01 + v[0, 1] * e1 * i11
            out[1, 0] = v[1, 0] * e0 * i00 + v[1, 1] * e1 * i10
            out[1, 1] = v[1, 0] * e0 * i01 + v[1, 1] * e1 * i11
            return out_arr
    squarings = 0
    if fro > 0.5:
        squarings = <int>ceil(log2(fro / 0.5))
        if squarings < 0:
            squarings = 0
    cdef zdouble a00 = mv[0, 0] / (2.0 ** squarings)
    cdef zdouble a01 = mv[0, 1] / (2.0 ** squarings)
    cdef zdouble a10 = mv[1, 0] / (2.0 ** squarings)
    cdef zdouble a11 = mv[1, 1] / (2.0 ** squarings)
    cdef zdouble t00 = 1.0 + a00
    cdef zdouble t01 = a01
    cdef zdouble t10 = a10
    cdef zdouble t11 = 1.0 + a11
    cdef zdouble p00 = a00, p01 = a01, p10 = a10, p11 = a11
    cdef zdouble q00, q01, q10, q11
    cdef double tmax
    for k in range(2, 41):
        q00 = (p00 * a00 + p01 * a10) / k
        q01 = (p00 * a01 + p01 * a11) / k
        q10 = (p10 * a00 + p11 * a10) / k
        q11 = (p10 * a01 + p11 * a11) / k
        p00 = q00
        p01 = q01
        p10 = q10
        p11 = q11
        t00 = t00 + p00
        t01 = t01 + p01
        t10 = t10 + p10
        t11 = t11 + p11
        tmax = _cabs(p00)
        if _cabs(p01) > tmax:
            tmax = _cabs(p01)
        if _cabs(p10) > tmax:
            tmax = _cabs(p10)
        if _cabs(p11) > tmax:
            tmax = _cabs(p11)
        if tmax < 1e-18:
            break
    for k in range(squarings):
        q00 = t00 * t00 + t01 * t10
        q01 = t00 * t01 + t01 * t11
        q10 = t10 * t00 + t11 * t10
        q11 = t10 * t01 + t11 * t11
        t00 = q00
        t01 = q01
        t10 = q10
        t11 = q11
    out[0, 0] = t00
    out[0, 1] = t01
    out[1, 0] = t10
    out[1, 1] = t11
    return out_arr


def herm_eigvals2(m_in):
    """Real eigenvalues (ascending) of a Hermitian 2x2 matrix."""
    m = np.ascontiguousarray(m_in, dtype=np.complex128)
    cdef zdouble[:, ::1] mv = m
    cdef double a = mv[0, 0].real
    cdef double d = mv[1, 1].real
    cdef double mean = 0.5 * (a + d)
    cdef double rad = hypot(0.5 * (a - d), _cabs(mv[0, 1]))
    return mean - rad, mean + rad


def trace_distance2(rho_in, sigma_in):
    """(1/2) sum |eigenvalues(rho - sigma)| via the exact 2x2 formula."""
    rho = np.ascontiguousarray(rho_in, dtype=np.complex128)
    sigma = np.ascontiguousarray(sigma_in, dtype=np.complex128)
    cdef zdouble[:, ::1] r = rho
    cdef zdouble[:, ::1] s = sigma
    cdef double a = r[0, 0].real - s[0, 0].real
    cdef double d = r[1, 1].real - s[1, 1].real
    cdef zdouble off = 0.5 * ((r[0, 1] - s[0, 1]) + (r[1, 0] - s[1, 0]).conjugate())
    cdef double mean = 0.5 * (a + d)
    cdef double rad = hypot(0.5 * (a - d), _cabs(off))
    cdef double x = mean + rad
    cdef double y = mean - rad
    if x < 0.0:
        x = -x
    if y < 0.0:
        y = -y
    return 0.5 * (x + y)


def kron_left(m_in):
    """m (x) I_2 in the |ab> basis with index 2a+b."""
    m = np.ascontiguousarray(m_in, dtype=np.complex128)
    cdef zdouble[:, ::1] mv = m
    out_arr = np.zeros((4, 4), dtype=np.complex128)
    cdef zdouble[:, ::1] out = out_arr
    cdef int a, b, c
    for a in range(2):
        for c in range(2):
            for b in range(2):
                out[2 * a + b, 2 * c + b] = mv[a, c]
    return out_arr


def apply_local_a(u_in, rho_in):
    """(u (x) I) rho (u^dag (x) I), unnormalized."""
    u = np.ascontiguousarray(u_in, dtype=np.complex128)
    rho = np.ascontiguousarray(rho_in, dtype=np.complex128)
    cdef zdouble[:, ::1] uv = u
    cdef zdouble[:, ::1] rv = rho
    out_arr = np.empty((4, 4), dtype=np.complex128)
    cdef zdouble[:, ::1] out = out_arr
    cdef zdouble tmp[4][4]
    cdef zdouble acc
    cdef int a, b, c, d, e, f
    # tmp = (u (x) I) rho
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    acc = 0.0
                    for e in range(2):
                        acc = acc + uv[a, e] * rv[2 * e + b, 2 * c + d]
                    tmp[2 * a + b][2 * c + d] = acc
    # out = tmp (u^dag (x) I)
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    acc = 0.0
                    for f in range(2):
                        acc = acc + tmp[2 * a + b][2 * f + d] * uv[c, f].conjugate()
                    out[2 * a + b, 2 * c + d] = acc
    return out_arr


def ptrace_a(rho_in):
    """Trace out the first qubit: out[b, b'] = sum_a rho[2a+b, 2a+b']."""
    rho = np.ascontiguousarray(rho_in, dtype=np.complex128)
    cdef zdouble[:, ::1] rv = rho
    out_arr = np.empty((2, 2), dtype=np.complex128)
    cdef zdouble[:, ::1] out = out_arr
    cdef int b, bp
    for b in range(2):
        for bp in range(2):
            out[b, bp] = rv[b, bp] + rv[2 + b, 2 + bp]
    return out_arr


def ptrace_b(rho_in):
    """Trace out the second qubit: out[a, a'] = sum_b rho[2a+b, 2a'+b]."""
    rho = np.ascontiguousarray(rho_in, dtype=np.complex128)
    cdef zdouble[:, ::1] rv = rho
    out_arr = np.empty((2, 2), dtype=np.complex128)
    cdef zdouble[:, ::1] out = out_arr
    cdef int a, ap
    for a in range(2):
        for ap in range(2):
            out[a, ap] = rv[2 * a, 2 * ap] + rv[2 * a + 1, 2 * ap + 1]
    return out_arr
