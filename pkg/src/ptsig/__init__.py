"""ptsig: signaling analysis for local PT-symmetric qubit evolutions.

One party of a shared two-qubit state evolves her qubit under a
PT-symmetric (non-Hermitian, real-spectrum) Hamiltonian. With the naive
matrix-exponential propagator this visibly changes the other party's
reduced state, an apparent violation of no-signaling; after unitarizing
the same evolution with the CPT inner product the effect vanishes for
every shared state. This package computes the effect, its closed forms,
the exact parameter surfaces where it disappears, and the restoration
machinery, all cross-checked by brute-force oracles.

The numeric kernels come in a compiled flavor and a pure-numpy fallback;
see ptsig._kernels (env var PTSIG_PURE_PYTHON forces the fallback).
"""

from ptsig import cpt, errors, evolution, hamiltonian, matrixkit, signaling, states, verify
from ptsig._kernels import BACKEND
from ptsig.errors import (
    AtBranchPoint,
    BrokenPTPhase,
    ConfigError,
    DegenerateScale,
    InvalidState,
    NonFinite,
    NotHermitian,
    NotPositiveDefinite,
    OutOfRange,
    PTSigError,
    ZeroNorm,
)
from ptsig.evolution import EvolutionSpec
from ptsig.hamiltonian import PTParams, Spectrum
from ptsig.signaling import Mode, Scenario, SweepConfig, SweepRecord

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    "cpt",
    "errors",
    "evolution",
    "hamiltonian",
    "matrixkit",
    "signaling",
    "states",
    "verify",
    "PTParams",
    "Spectrum",
    "EvolutionSpec",
    "Mode",
    "Scenario",
    "SweepConfig",
    "SweepRecord",
    "PTSigError",
    "AtBranchPoint",
    "BrokenPTPhase",
    "ConfigError",
    "DegenerateScale",
    "InvalidState",
    "NonFinite",
    "NotHermitian",
    "NotPositiveDefinite",
    "OutOfRange",
    "ZeroNorm",
]
