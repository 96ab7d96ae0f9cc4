"""Small dense complex matrix toolkit (2x2 and 4x4).

Thin validation layer over the numeric kernels: every public function checks
its inputs and raises a typed error instead of letting NaN/Inf or malformed
states propagate. The heavy lifting lives in ``ptsig._kernels`` which exists
in two interchangeable flavors (compiled and pure numpy).
"""

import numpy as np

from ptsig import errors
from ptsig._kernels import kernels

HERMITIAN_ATOL = 1e-12
POSDEF_MIN_EIG = 1e-12
DENSITY_ATOL = 1e-9


def _as_square(m, n, name):
    arr = np.asarray(m, dtype=complex)
    if arr.shape != (n, n):
        raise errors.NonFinite(f"{name} must be {n}x{n}, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise errors.NonFinite(f"{name} contains NaN or Inf entries")
    return arr


def hermitian_defect(m):
    """Largest entrywise deviation of m from its conjugate transpose."""
    m = np.asarray(m, dtype=complex)
    return float(np.abs(m - m.conj().T).max())


def density_violations(rho, atol=DENSITY_ATOL):
    """List of human-readable reasons rho is not a qubit density matrix.

    Empty list means valid: Hermitian, unit trace and positive semidefinite
    within atol.
    """
    rho = _as_square(rho, 2, "state")
    found = []
    defect = hermitian_defect(rho)
    if defect > atol:
        found.append(f"not Hermitian (defect {defect:.3g})")
    tr = rho.trace()
    if abs(tr - 1.0) > atol:
        found.append(f"trace is {tr:.6g}, not 1")
    lo, _ = kernels.herm_eigvals2(0.5 * (rho + rho.conj().T))
    if lo < -atol:
        found.append(f"negative eigenvalue {lo:.3g}")
    return found


def check_density2(rho, atol=DENSITY_ATOL, name="state"):
    """Validate a single-qubit density matrix, raising InvalidState."""
    rho = _as_square(rho, 2, name)
    found = density_violations(rho, atol=atol)
    if found:
        raise errors.InvalidState(f"{name}: " + "; ".join(found))
    return rho


def mat_exp2(m):
    """Matrix exponential e^m of a 2x2 complex matrix.

    Uses eigendecomposition when the eigenvalues are well separated and a
    scaled-and-squared power series otherwise, so it stays accurate through
    eigenvalue coalescence.
    """
    m = _as_square(m, 2, "matrix")
    return kernels.expm2(m)


def eig2(m):
    """Eigendecomposition of a 2x2 complex matrix.

    Returns ``(lam1, lam2, v1, v2)`` with eigenvalues ordered ascending by
    (re, im) and unit-norm eigenvectors carrying a deterministic phase.
    """
    m = _as_square(m, 2, "matrix")
    w, v = kernels.eig2(m)
    return w[0], w[1], v[:, 0].copy(), v[:, 1].copy()


def herm_sqrt2(m):
    """Principal square root of a Hermitian positive-definite 2x2 matrix.

    Returns ``(sqrt, inv_sqrt)``. Both come from the Cayley-Hamilton closed
    form: with g = sqrt(det m), sqrt = (m + g*I)/sqrt(tr m + 2g), and the
    inverse is the 2x2 adjugate divided by det(sqrt) = g.
    """
    m = _as_square(m, 2, "matrix")
    defect = hermitian_defect(m)
    if defect > HERMITIAN_ATOL:
        raise errors.NotHermitian(f"Hermiticity defect {defect:.3g} exceeds {HERMITIAN_ATOL}")
    lo, _ = kernels.herm_eigvals2(m)
    if lo <= POSDEF_MIN_EIG:
        raise errors.NotPositiveDefinite(f"smallest eigenvalue {lo:.3g} is not > {POSDEF_MIN_EIG}")
    g = np.sqrt((m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real)
    denom = np.sqrt((m[0, 0] + m[1, 1]).real + 2.0 * g)
    root = (m + g * np.eye(2)) / denom
    inv_root = np.array([[root[1, 1], -root[0, 1]], [-root[1, 0], root[0, 0]]]) / g
    return root, inv_root


def trace_distance2(rho, sigma, atol=DENSITY_ATOL):
    """Trace distance (1/2)*sum|eig(rho - sigma)| between qubit states.

    Both arguments must pass density-matrix validation; the distance itself
    is evaluated with the exact 2x2 Hermitian eigenvalue formula.
    """
    rho = check_density2(rho, atol=atol, name="rho")
    sigma = check_density2(sigma, atol=atol, name="sigma")
    return kernels.trace_distance2(rho, sigma)


def kron_left(m):
    """m tensored with the 2x2 identity, basis |ab> indexed as 2a+b."""
    m = _as_square(m, 2, "matrix")
    return kernels.kron_left(m)


__all__ = [
    "mat_exp2",
    "eig2",
    "herm_sqrt2",
    "trace_distance2",
    "kron_left",
    "check_density2",
    "density_violations",
    "hermitian_defect",
    "HERMITIAN_ATOL",
    "POSDEF_MIN_EIG",
    "DENSITY_ATOL",
]
