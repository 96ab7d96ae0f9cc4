"""The non-unitary propagator U = exp(-i H tau) of the PT Hamiltonian.

tau is dimensionless time. Away from the Hermitian limit the propagator is
not unitary, and its Gram matrix U^dag U (here: gram) carries all of the
norm distortion that produces apparent signaling downstream.
"""

from dataclasses import dataclass

import numpy as np

from ptsig import errors, hamiltonian, matrixkit


@dataclass(frozen=True)
class EvolutionSpec:
    """Hamiltonian parameters plus a dimensionless evolution time.

    Validates at construction: the mixing angle must exist and sit away
    from the branch points.
    """

    params: hamiltonian.PTParams
    tau: float

    def __post_init__(self):
        if not np.isfinite(self.tau):
            raise errors.NonFinite(f"tau must be finite, got {self.tau}")
        a_mix = hamiltonian.alpha(self.params)
        if abs(np.cos(a_mix)) < hamiltonian.BRANCH_EPS:
            raise errors.AtBranchPoint(
                f"|cos(alpha)| < {hamiltonian.BRANCH_EPS}; propagator closed forms diverge"
            )


def t1(spec):
    """Effective rotation angle t*tau*cos(alpha)."""
    return float(spec.params.t * spec.tau * np.cos(hamiltonian.alpha(spec.params)))


def propagator(spec):
    """U = exp(-i * build(params) * tau); generally NOT unitary."""
    h = hamiltonian.build(spec.params)
    return matrixkit.mat_exp2(-1j * spec.tau * h)


def gram(spec):
    """U^dag U. Hermitian positive definite; equals the identity exactly
    when alpha = 0 or sin(t1) = 0."""
    u = propagator(spec)
    return u.conj().T @ u


__all__ = ["EvolutionSpec", "t1", "propagator", "gram"]
