"""Two-qubit state families and the local-operation plumbing around them.

Basis convention everywhere: |ab> with flat index 2a+b, qubit A first.
The families carried here are the maximally mixed-ish Werner line, the
classically correlated diagonal line, the maximally entangled Bell state,
and arbitrary user-supplied (validated) density matrices.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from ptsig import errors
from ptsig._kernels import kernels

ZERO_NORM_EPS = 1e-14
VALIDATE_ATOL = 1e-12

# (|00> + |11>)/sqrt(2)
_BELL = np.zeros(4, dtype=complex)
_BELL[0] = _BELL[3] = 1.0 / np.sqrt(2.0)


class Family(enum.Enum):
    """Tags for the supported shared-state families."""

    WERNER = "werner"
    CLASSICAL = "classical"
    MAX_ENTANGLED = "max_entangled"
    CUSTOM = "custom"


def validate(state, tol=VALIDATE_ATOL):
    """Violation messages for a would-be density matrix (2x2 or 4x4).

    Empty list means Hermitian, unit trace, and PSD all hold within tol.
    """
    state = np.asarray(state, dtype=complex)
    if state.shape not in ((2, 2), (4, 4)):
        return [f"expected a 2x2 or 4x4 matrix, got shape {state.shape}"]
    if not np.isfinite(state).all():
        return ["contains NaN or Inf entries"]
    found = []
    defect = float(np.abs(state - state.conj().T).max())
    if defect > tol:
        found.append(f"not Hermitian (defect {defect:.3g})")
    tr = state.trace()
    if abs(tr - 1.0) > tol:
        found.append(f"trace is {tr:.6g}, not 1")
    eigs = np.linalg.eigvalsh(0.5 * (state + state.conj().T))
    if eigs[0] < -tol:
        found.append(f"negative eigenvalue {eigs[0]:.3g}")
    return found


def werner(p):
    """Werner state p|bell><bell| + (1-p)/4 * I4, p in [-1/3, 1].

    Both marginals are I/2 for every p; the state is entangled exactly
    when p > 1/3 (classification only, nothing here depends on it).
    """
    if not -1.0 / 3.0 <= p <= 1.0:
        raise errors.OutOfRange(f"Werner parameter p = {p} outside [-1/3, 1]")
    return p * np.outer(_BELL, _BELL.conj()) + (1.0 - p) / 4.0 * np.eye(4, dtype=complex)


def werner_entangled(p):
    """Classification flag: the Werner state is entangled iff p > 1/3."""
    return p > 1.0 / 3.0


def classical_correlated(p):
    """Classically correlated diag(p, 0, 0, 1-p), p in [0, 1]; zero discord."""
    if not 0.0 <= p <= 1.0:
        raise errors.OutOfRange(f"classical mixing parameter p = {p} outside [0, 1]")
    return np.diag([p, 0.0, 0.0, 1.0 - p]).astype(complex)


def max_entangled():
    """Projector onto (|00> + |11>)/sqrt(2)."""
    return np.outer(_BELL, _BELL.conj())


@dataclass(frozen=True)
class StateFamily:
    """A family tag plus its parameter; Custom carries an explicit matrix.

    Construction validates: parameter ranges for the named families, full
    density-matrix validation for Custom.
    """

    tag: Family
    p: float | None = None
    matrix: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.tag is Family.CUSTOM:
            if self.matrix is None:
                raise errors.InvalidState("custom family requires an explicit 4x4 matrix")
            arr = np.asarray(self.matrix, dtype=complex)
            if arr.shape != (4, 4):
                raise errors.InvalidState(f"custom state must be 4x4, got shape {arr.shape}")
            found = validate(arr, tol=1e-9)
            if found:
                raise errors.InvalidState("custom state rejected: " + "; ".join(found))
        elif self.tag in (Family.WERNER, Family.CLASSICAL):
            if self.p is None:
                raise errors.OutOfRange(f"family {self.tag.value} requires a parameter p")
            self.state()  # range check

    def state(self):
        """Materialize the 4x4 density matrix."""
        if self.tag is Family.WERNER:
            return werner(self.p)
        if self.tag is Family.CLASSICAL:
            return classical_correlated(self.p)
        if self.tag is Family.MAX_ENTANGLED:
            return max_entangled()
        return np.asarray(self.matrix, dtype=complex).copy()


def apply_local_a(state, m):
    """(m (x) I) state (m^dag (x) I), renormalized.

    Returns (normalized state, pre-normalization trace). The trace is the
    physically meaningful normalizer for non-unitary m, so it is surfaced
    rather than hidden. Raises ZeroNorm when the trace is below 1e-14.
    """
    evolved = kernels.apply_local_a(np.asarray(m, dtype=complex), np.asarray(state, dtype=complex))
    norm = float(evolved.trace().real)
    if norm < ZERO_NORM_EPS:
        raise errors.ZeroNorm(f"post-operation trace {norm:.3g} is too small to renormalize")
    return evolved / norm, norm


def partial_trace_a(state):
    """Trace out qubit A: out[b, b'] = sum_a state[2a+b, 2a+b']."""
    return kernels.ptrace_a(np.asarray(state, dtype=complex))


def partial_trace_b(state):
    """Trace out qubit B: out[a, a'] = sum_b state[2a+b, 2a'+b]."""
    return kernels.ptrace_b(np.asarray(state, dtype=complex))


__all__ = [
    "Family",
    "StateFamily",
    "werner",
    "werner_entangled",
    "classical_correlated",
    "max_entangled",
    "validate",
    "apply_local_a",
    "partial_trace_a",
    "partial_trace_b",
    "ZERO_NORM_EPS",
    "VALIDATE_ATOL",
]
