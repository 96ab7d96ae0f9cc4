"""The general 2x2 PT-symmetric Hamiltonian and its closed-form eigensystem.

The matrix built here is dimensionless; the overall energy scale J rides
along in PTParams and only enters through the eigenvalues (and through the
dimensionless evolution time used elsewhere). The mixing angle alpha with
sin(alpha) = s/t controls everything interesting: alpha = 0 is the Hermitian
limit, |alpha| -> pi/2 are the branch points where the two eigenvectors
collapse onto each other.
"""

from dataclasses import dataclass

import numpy as np

from ptsig import errors

# below this value of |cos(alpha)| the eigensystem is treated as coalesced
BRANCH_EPS = 1e-9


@dataclass(frozen=True)
class PTParams:
    """Parameters (r, s, t, xi) of the PT-symmetric Hamiltonian, plus the
    energy scale J (nonzero, default 1)."""

    r: float
    s: float
    t: float
    xi: float
    J: float = 1.0

    def __post_init__(self):
        vals = (self.r, self.s, self.t, self.xi, self.J)
        if not all(np.isfinite(v) for v in vals):
            raise errors.NonFinite(f"parameters must be finite, got {vals}")
        if self.J == 0.0:
            raise errors.OutOfRange("energy scale J must be nonzero")


@dataclass(frozen=True)
class Spectrum:
    """Closed-form eigensystem: energies J*(r +/- t*cos(alpha)) with
    unit-norm (generally nonorthogonal) eigenvectors."""

    e_plus: float
    e_minus: float
    v_plus: np.ndarray
    v_minus: np.ndarray
    alpha: float


def alpha(params):
    """Mixing angle arcsin(s/t) in [-pi/2, pi/2].

    s = 0 gives 0 regardless of t. Raises DegenerateScale when t = 0 with
    s != 0, and BrokenPTPhase when s**2 > t**2 (complex spectrum).
    """
    if params.s == 0.0:
        return 0.0
    if params.t == 0.0:
        raise errors.DegenerateScale("t = 0 with s != 0 leaves sin(alpha) = s/t undefined")
    if params.s**2 > params.t**2:
        raise errors.BrokenPTPhase(
            f"s**2 = {params.s**2:.6g} exceeds t**2 = {params.t**2:.6g}; spectrum is complex"
        )
    return float(np.arcsin(params.s / params.t))


def build(params):
    """Dimensionless Hamiltonian matrix (J not multiplied in)."""
    r, s, t, xi = params.r, params.s, params.t, params.xi
    diag_re = t * np.cos(xi)
    diag_im = s * np.sin(xi)
    off = 1j * s * np.cos(xi) + t * np.sin(xi)
    return np.array(
        [
            [r + diag_re - 1j * diag_im, off],
            [off, r - diag_re + 1j * diag_im],
        ],
        dtype=complex,
    )


def parity(phi_tilde):
    """Parity matrix [[cos, sin], [sin, -cos]](phi_tilde); real, involutory."""
    c, sn = np.cos(phi_tilde), np.sin(phi_tilde)
    return np.array([[c, sn], [sn, -c]], dtype=complex)


def check_pt_symmetry(h, phi_tilde):
    """Defect max|P conj(H) P - H| of the combined parity/conjugation symmetry.

    Time reversal is complex conjugation in the computational basis. Returns
    the raw defect; compare it against your own tolerance. The canonical
    parity angle for build(params) is phi_tilde = params.xi.
    """
    h = np.asarray(h, dtype=complex)
    p = parity(phi_tilde)
    return float(np.abs(p @ h.conj() @ p - h).max())


def _unit_fixed_phase(v):
    v = v / np.sqrt(abs(v[0]) ** 2 + abs(v[1]) ** 2)
    k = 0 if abs(v[0]) >= abs(v[1]) else 1
    mag = abs(v[k])
    if mag > 0.0:
        v = v * (v[k].conjugate() / mag)
    return v


def _eigvec_pair(a, b, cos_a, sign):
    # candidates come from the two rows of (M -/+ cos_a * I); pick the one
    # with the larger norm so degenerate limits stay well conditioned
    c1 = np.array([b, sign * cos_a - a], dtype=complex)
    c2 = np.array([a + sign * cos_a, b], dtype=complex)
    n1 = abs(c1[0]) ** 2 + abs(c1[1]) ** 2
    n2 = abs(c2[0]) ** 2 + abs(c2[1]) ** 2
    return _unit_fixed_phase(c1 if n1 >= n2 else c2)


def spectrum(params):
    """Closed-form Spectrum of build(params); energies carry the factor J.

    Raises AtBranchPoint when |cos(alpha)| < BRANCH_EPS (eigenvectors
    coalesce there), and propagates the alpha() errors.
    """
    a_mix = alpha(params)
    cos_a = np.cos(a_mix)
    if abs(cos_a) < BRANCH_EPS:
        raise errors.AtBranchPoint(
            f"|cos(alpha)| = {abs(cos_a):.3g} < {BRANCH_EPS}; eigenvectors coalesce"
        )
    xi = params.xi
    a = np.cos(xi) - 1j * np.sin(a_mix) * np.sin(xi)
    b = np.sin(xi) + 1j * np.sin(a_mix) * np.cos(xi)
    return Spectrum(
        e_plus=float(params.J * (params.r + params.t * cos_a)),
        e_minus=float(params.J * (params.r - params.t * cos_a)),
        v_plus=_eigvec_pair(a, b, cos_a, +1),
        v_minus=_eigvec_pair(a, b, cos_a, -1),
        alpha=float(a_mix),
    )


def overlap_eigenstates(spec):
    """Standard inner product <E+|E-> of the two eigenvectors.

    Zero exactly in the Hermitian limit alpha = 0; its modulus grows as
    |sin(alpha)| and reaches 1 at the branch points.
    """
    return complex(np.vdot(spec.v_plus, spec.v_minus))


__all__ = [
    "BRANCH_EPS",
    "PTParams",
    "Spectrum",
    "alpha",
    "build",
    "parity",
    "check_pt_symmetry",
    "spectrum",
    "overlap_eigenstates",
]
