"""Charge conjugation, the CP metric, and the unitarized propagator.

The CP matrix is Hermitian positive definite away from the branch points,
so exp(+/-Q/2) with exp(Q) = CP is realized through its exact Hermitian
square root rather than a matrix logarithm. The closed-form unitarized
propagator appears here only as a reference expression for tests; the
implementation path is always inv_sqrt(CP) @ U @ sqrt(CP).
"""

from dataclasses import dataclass

import numpy as np

from ptsig import errors, evolution, hamiltonian, matrixkit


def _mixing_angle_checked(params):
    a_mix = hamiltonian.alpha(params)
    if abs(np.cos(a_mix)) < hamiltonian.BRANCH_EPS:
        raise errors.AtBranchPoint(
            f"|cos(alpha)| < {hamiltonian.BRANCH_EPS}; C and CP diverge at the branch points"
        )
    return a_mix


def charge_conjugation(params):
    """The charge-conjugation matrix C; satisfies C @ C = I and [C, H] = 0.

    Reduces to parity(xi) in the Hermitian limit alpha = 0.
    """
    a_mix = _mixing_angle_checked(params)
    xi = params.xi
    sin_a, cos_a = np.sin(a_mix), np.cos(a_mix)
    diag = np.cos(xi) - 1j * sin_a * np.sin(xi)
    off = 1j * sin_a * np.cos(xi) + np.sin(xi)
    return np.array([[diag, off], [off, -diag]], dtype=complex) / cos_a


def charge_conjugation_from_spectrum(params):
    """C rebuilt from the eigensystem, as a consistency check.

    The eigenvectors are nonorthogonal, so the projector decomposition
    needs biorthogonal (left/right) weighting: with V = [v_plus v_minus],
    C = V @ diag(1, -1) @ inv(V). A plain sum of unit-normalized outer
    products does NOT reproduce C; see projector_sum_defect.
    """
    spec = hamiltonian.spectrum(params)
    v = np.column_stack([spec.v_plus, spec.v_minus])
    det = v[0, 0] * v[1, 1] - v[0, 1] * v[1, 0]
    v_inv = np.array([[v[1, 1], -v[0, 1]], [-v[1, 0], v[0, 0]]], dtype=complex) / det
    return v @ np.diag([1.0, -1.0]).astype(complex) @ v_inv


def projector_sum_defect(params):
    """Max-entry mismatch between sum(|E+-><E+-|) with unit-normalized
    eigenvectors (standard inner product) and the actual C matrix.

    Never zero: in the Hermitian limit the plain sum resolves the identity,
    not the signed parity-like C, and away from it the eigenvectors are not
    even orthogonal. Only the biorthogonal rebuild with the (1, -1)
    signature (charge_conjugation_from_spectrum) reproduces C. Returned,
    not raised, so callers can report it.
    """
    spec = hamiltonian.spectrum(params)
    plain = np.outer(spec.v_plus, spec.v_plus.conj()) + np.outer(spec.v_minus, spec.v_minus.conj())
    return float(np.abs(plain - charge_conjugation(params)).max())


def cp_operator(params):
    """The CP metric [[sec a, -i tan a], [i tan a, sec a]], a = alpha.

    Hermitian with eigenvalues sec(alpha) +/- tan(alpha), both positive
    away from the branch points. Equals C @ parity(xi) for every xi.
    """
    a_mix = _mixing_angle_checked(params)
    sec_a = 1.0 / np.cos(a_mix)
    tan_a = np.tan(a_mix)
    return np.array([[sec_a, -1j * tan_a], [1j * tan_a, sec_a]], dtype=complex)


def recover_parity(params):
    """C @ (CP), which is C^-1 @ (CP) since C squares to the identity.

    Real symmetric involutory; reproduces parity(params.xi), pinning the
    parity angle to xi.
    """
    return charge_conjugation(params) @ cp_operator(params)


@dataclass(frozen=True)
class CptKit:
    """Bundle of C, CP and the square-root pair for one parameter set."""

    c_op: np.ndarray
    cp_op: np.ndarray
    sqrt_cp: np.ndarray
    inv_sqrt_cp: np.ndarray
    params: hamiltonian.PTParams


def build_kit(params):
    """Assemble a CptKit (validates the branch-point guard on the way)."""
    c_op = charge_conjugation(params)
    cp_op = cp_operator(params)
    sqrt_cp, inv_sqrt_cp = matrixkit.herm_sqrt2(cp_op)
    return CptKit(c_op=c_op, cp_op=cp_op, sqrt_cp=sqrt_cp, inv_sqrt_cp=inv_sqrt_cp, params=params)


def cpt_propagator(params, tau):
    """Unitarized propagator inv_sqrt(CP) @ exp(-i H tau) @ sqrt(CP).

    Unitary under the standard inner product; local action with it leaves
    the other party's marginal untouched for every shared state.
    """
    kit = build_kit(params)
    u = evolution.propagator(evolution.EvolutionSpec(params=params, tau=tau))
    return kit.inv_sqrt_cp @ u @ kit.sqrt_cp


def cpt_propagator_closed_form(params, tau):
    """Reference closed form of the unitarized propagator (tests only).

    e^(-i r tau) * [[cos t1 - i cos xi sin t1, -i sin xi sin t1],
                    [-i sin xi sin t1, cos t1 + i cos xi sin t1]].
    """
    a_mix = _mixing_angle_checked(params)
    t1 = params.t * tau * np.cos(a_mix)
    xi = params.xi
    phase = np.exp(-1j * params.r * tau)
    c1, s1 = np.cos(t1), np.sin(t1)
    return phase * np.array(
        [
            [c1 - 1j * np.cos(xi) * s1, -1j * np.sin(xi) * s1],
            [-1j * np.sin(xi) * s1, c1 + 1j * np.cos(xi) * s1],
        ],
        dtype=complex,
    )


__all__ = [
    "CptKit",
    "build_kit",
    "charge_conjugation",
    "charge_conjugation_from_spectrum",
    "projector_sum_defect",
    "cp_operator",
    "recover_parity",
    "cpt_propagator",
    "cpt_propagator_closed_form",
]
