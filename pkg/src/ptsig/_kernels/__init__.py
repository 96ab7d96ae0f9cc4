"""Numeric kernel backend selection.

The compiled extension is preferred when it imported cleanly; otherwise the
pure-numpy fallback is used. Setting the environment variable
``PTSIG_PURE_PYTHON`` (to any non-empty value) forces the fallback, which the
benchmark uses to compare the two and which also helps debugging.

Both backends export the same callables and agree to rounding error on
well-conditioned inputs: ``eig2``, ``expm2``, ``herm_eigvals2``,
``trace_distance2``, ``kron_left``, ``apply_local_a``, ``ptrace_a``,
``ptrace_b``. Near an eigenvalue coalescence the eigenVECTORS of eig2 are
ill conditioned, so there the two backends' rounding differences get
amplified; each still satisfies the residual contract, and expm2 sidesteps
the issue by switching to its series path.
"""

import os

from ptsig._kernels import fallback

if os.environ.get("PTSIG_PURE_PYTHON"):
    kernels = fallback
else:
    try:
        from ptsig._kernels import _core as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = fallback

BACKEND = kernels.BACKEND_NAME

eig2 = kernels.eig2
expm2 = kernels.expm2
herm_eigvals2 = kernels.herm_eigvals2
trace_distance2 = kernels.trace_distance2
kron_left = kernels.kron_left
apply_local_a = kernels.apply_local_a
ptrace_a = kernels.ptrace_a
ptrace_b = kernels.ptrace_b

__all__ = [
    "BACKEND",
    "kernels",
    "fallback",
    "eig2",
    "expm2",
    "herm_eigvals2",
    "trace_distance2",
    "kron_left",
    "apply_local_a",
    "ptrace_a",
    "ptrace_b",
]
