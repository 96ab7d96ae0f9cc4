"""Exception hierarchy shared by every ptsig module.

All domain failures derive from :class:`PTSigError` so callers (and the CLI)
can map them to a single "domain error" outcome while still catching the
specific condition when they care.
"""


class PTSigError(Exception):
    """Base class for every error raised by ptsig."""


class NonFinite(PTSigError):
    """An input matrix contains NaN or Inf entries."""


class NotHermitian(PTSigError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class NotPositiveDefinite(PTSigError):
    """A matrix required to be positive definite has a non-positive eigenvalue."""


class InvalidState(PTSigError):
    """A matrix fails density-matrix validation (Hermiticity, trace, positivity)."""


class BrokenPTPhase(PTSigError):
    """Parameters fall in the complex-spectrum regime (s^2 > t^2)."""


class DegenerateScale(PTSigError):
    """t = 0 with s != 0: the mixing angle is undefined."""


class AtBranchPoint(PTSigError):
    """|cos(alpha)| is below the branch-point guard; the eigenbasis degenerates."""


class OutOfRange(PTSigError):
    """A family or model parameter lies outside its admissible range."""


class ZeroNorm(PTSigError):
    """A state cannot be renormalized because its trace is (numerically) zero."""


class ConfigError(PTSigError):
    """A sweep or CLI configuration is malformed."""
