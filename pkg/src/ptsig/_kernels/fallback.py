"""Pure-numpy implementations of the numeric kernels.

Mirrors ``ptsig._kernels._core`` (the compiled extension) step for step so
both backends produce the same results to rounding. No validation happens
here; the public wrappers in :mod:`ptsig.matrixkit` own the contracts.
"""

import numpy as np

BACKEND_NAME = "python"

_EYE2 = np.eye(2, dtype=complex)

# Eigendecomposition switches to the series path below this relative gap;
# eigenvector conditioning degrades as the eigenvalues coalesce.
EIG_GAP_RTOL = 1e-8


def _phase_fix(v):
    # Rotate so the largest-modulus component is real and nonnegative.
    k = 0 if abs(v[0]) >= abs(v[1]) else 1
    mag = abs(v[k])
    if mag == 0.0:
        return v
    return v * (v[k].conjugate() / mag)


def _eigvals2(a, b, c, d):
    half = 0.5 * (a - d)
    disc = np.sqrt(np.complex128(half * half + b * c))
    mean = 0.5 * (a + d)
    l1 = mean + disc
    l2 = mean - disc
    if (l1.real, l1.imag) <= (l2.real, l2.imag):
        return l1, l2
    return l2, l1


def _eigvec2(a, b, c, d, lam, index):
    c1 = np.array([b, lam - a], dtype=complex)
    c2 = np.array([lam - d, c], dtype=complex)
    n1 = abs(c1[0]) ** 2 + abs(c1[1]) ** 2
    n2 = abs(c2[0]) ** 2 + abs(c2[1]) ** 2
    if max(n1, n2) < 1e-24:
        # (near-)scalar matrix: any basis works, pick it by output slot
        v = np.zeros(2, dtype=complex)
        v[index] = 1.0
        return v
    v = c1 if n1 >= n2 else c2
    v = v / np.sqrt(n1 if n1 >= n2 else n2)
    return _phase_fix(v)


def eig2(m):
    """Closed-form eigendecomposition of a 2x2 complex matrix.

    Returns ``(w, V)`` with eigenvalues sorted ascending by (re, im) and
    unit-norm column eigenvectors with a deterministic phase.
    """
    m = np.asarray(m, dtype=complex)
    scale = np.abs(m).max()
    if scale == 0.0:
        return np.zeros(2, dtype=complex), _EYE2.copy()
    a, b = m[0, 0] / scale, m[0, 1] / scale
    c, d = m[1, 0] / scale, m[1, 1] / scale
    l1, l2 = _eigvals2(a, b, c, d)
    v1 = _eigvec2(a, b, c, d, l1, 0)
    v2 = _eigvec2(a, b, c, d, l2, 1)
    w = np.array([l1 * scale, l2 * scale])
    return w, np.column_stack([v1, v2])


def expm2(m):
    """exp(m) for a 2x2 complex matrix.

    Diagonalizes when the eigenvalue gap is safely resolvable, otherwise
    falls back to a scaled-and-squared truncated power series.
    """
    m = np.asarray(m, dtype=complex)
    fro = np.sqrt((np.abs(m) ** 2).sum())
    if fro == 0.0:
        return _EYE2.copy()
    w, v = eig2(m)
    if abs(w[0] - w[1]) > EIG_GAP_RTOL * fro:
        det = v[0, 0] * v[1, 1] - v[0, 1] * v[1, 0]
        if abs(det) > 1e-6:
            vinv = np.array([[v[1, 1], -v[0, 1]], [-v[1, 0], v[0, 0]]]) / det
            return (v * np.exp(w)) @ vinv
    squarings = max(0, int(np.ceil(np.log2(fro / 0.5))))
    a = m / (2.0**squarings)
    total = _EYE2 + a
    term = a
    for k in range(2, 41):
        term = term @ a / k
        total = total + term
        if np.abs(term).max() < 1e-18:
            break
    for _ in range(squarings):
        total = total @ total
    return total


def herm_eigvals2(m):
    """Real eigenvalues (ascending) of a Hermitian 2x2 matrix."""
    m = np.asarray(m, dtype=complex)
    a = m[0, 0].real
    d = m[1, 1].real
    mean = 0.5 * (a + d)
    rad = np.hypot(0.5 * (a - d), abs(m[0, 1]))
    return mean - rad, mean + rad


def trace_distance2(rho, sigma):
    """(1/2) sum |eigenvalues(rho - sigma)| via the exact 2x2 formula."""
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    a = rho[0, 0].real - sigma[0, 0].real
    d = rho[1, 1].real - sigma[1, 1].real
    off = 0.5 * ((rho[0, 1] - sigma[0, 1]) + (rho[1, 0] - sigma[1, 0]).conjugate())
    mean = 0.5 * (a + d)
    rad = np.hypot(0.5 * (a - d), abs(off))
    return 0.5 * (abs(mean + rad) + abs(mean - rad))


def kron_left(m):
    """m (x) I_2 in the |ab> basis with index 2a+b."""
    return np.kron(np.asarray(m, dtype=complex), _EYE2)


def apply_local_a(u, rho):
    """(u (x) I) rho (u^dag (x) I), unnormalized."""
    k = np.kron(np.asarray(u, dtype=complex), _EYE2)
    return k @ np.asarray(rho, dtype=complex) @ k.conj().T


def ptrace_a(rho):
    """Trace out the first qubit: out[b, b'] = sum_a rho[2a+b, 2a+b']."""
    rho = np.asarray(rho, dtype=complex)
    return rho[0:2, 0:2] + rho[2:4, 2:4]


def ptrace_b(rho):
    """Trace out the second qubit: out[a, a'] = sum_b rho[2a+b, 2a'+b]."""
    rho = np.asarray(rho, dtype=complex)
    return rho[0::2, 0::2] + rho[1::2, 1::2]
