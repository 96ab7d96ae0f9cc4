"""Signaling analysis: marginals, closed forms, predicates, and sweeps.

The signaling measure is the trace distance between Bob's marginal before
and after Alice's local evolution. Two tolerance tiers run through this
module: NO_SIGNAL_TOL (1e-10) separates "signals" from "does not" when
checking analytic claims, while IDENTITY_TOL (1e-12) is reserved for
floating-point identities that hold by construction.
"""

import enum
import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ptsig import errors, evolution, hamiltonian, matrixkit, states
from ptsig._kernels import kernels

NO_SIGNAL_TOL = 1e-10
IDENTITY_TOL = 1e-12
_PRED_EPS = 1e-12


class Mode(enum.Enum):
    """Which propagator Alice applies."""

    NAIVE = "naive"
    CPT = "cpt"


@dataclass(frozen=True)
class Scenario:
    """One shared state, one local evolution, one mode."""

    family: states.StateFamily
    spec: evolution.EvolutionSpec
    mode: Mode


def before_marginal(family):
    """Bob's marginal of the shared state before Alice acts."""
    return states.partial_trace_a(family.state())


def _alice_operator(spec, mode):
    # import-time binding would defeat fault-injection hooks in verify,
    # so resolve cpt lazily here
    from ptsig import cpt

    if mode is Mode.CPT:
        return cpt.cpt_propagator(spec.params, spec.tau)
    return evolution.propagator(spec)


def _marginals(sc):
    state = sc.family.state()
    u = _alice_operator(sc.spec, sc.mode)
    evolved, norm = states.apply_local_a(state, u)
    return states.partial_trace_a(state), states.partial_trace_a(evolved), norm


def bob_marginal(sc):
    """Bob's marginal after Alice's local evolution, renormalized."""
    _, after, _ = _marginals(sc)
    return after


@dataclass(frozen=True)
class ScenarioResult:
    """Everything one scenario evaluation produces."""

    before: np.ndarray
    after: np.ndarray
    norm: float
    signaling: float


def evaluate(sc):
    """Both marginals, the pre-renormalization trace, and the measure."""
    before, after, norm = _marginals(sc)
    return ScenarioResult(
        before=before, after=after, norm=norm,
        signaling=matrixkit.trace_distance2(before, after),
    )


def signaling_measure(sc):
    """Trace distance between Bob's before and after marginals, in [0, 1]."""
    return evaluate(sc).signaling


def werner_norm_factor(spec):
    """Pre-renormalization trace for any state whose A marginal is I/2.

    Equals 2*sec(alpha)**2*sin(t1)**2 + cos(2*t1), which is also
    1 + 2*sin(t1)**2*tan(alpha)**2, hence always >= 1.
    """
    a_mix = hamiltonian.alpha(spec.params)
    th = evolution.t1(spec)
    return float(2.0 * np.sin(th) ** 2 / np.cos(a_mix) ** 2 + np.cos(2.0 * th))


def gram_closed_form(spec):
    """Closed-form U^dag U, the analytic twin of evolution.gram."""
    a_mix = hamiltonian.alpha(spec.params)
    th = evolution.t1(spec)
    xi = spec.params.xi
    tan_a = np.tan(a_mix)
    sec_a = 1.0 / np.cos(a_mix)
    n2 = werner_norm_factor(spec)
    shift = tan_a * np.sin(2.0 * th) * np.sin(xi)
    off = 2.0 * tan_a * np.sin(th) * (np.cos(th) * np.cos(xi) + 1j * sec_a * np.sin(th))
    return np.array([[n2 - shift, off], [off.conjugate(), n2 + shift]], dtype=complex)


def classical_norm_factor(p, spec):
    """Pre-renormalization trace for the classically correlated family:
    (1 - 2p)*tan(alpha)*sin(xi)*sin(2*t1) + [Werner factor]."""
    a_mix = hamiltonian.alpha(spec.params)
    th = evolution.t1(spec)
    shift = np.tan(a_mix) * np.sin(spec.params.xi) * np.sin(2.0 * th)
    return float((1.0 - 2.0 * p) * shift + werner_norm_factor(spec))


def closed_form_werner_marginal(p, spec):
    """Bob's post-evolution marginal for the Werner family, closed form.

    The off-diagonal coefficient is the brute-force-reconciled one:
    p*tan(alpha)*sin(t1)*(cos(t1)*cos(xi) + i*sec(alpha)*sin(t1)), i.e.
    half of the widely quoted 2p... form, which double-counts (the brute
    force oracle arbitrates; see README).
    """
    if not -1.0 / 3.0 <= p <= 1.0:
        raise errors.OutOfRange(f"Werner parameter p = {p} outside [-1/3, 1]")
    a_mix = hamiltonian.alpha(spec.params)
    th = evolution.t1(spec)
    xi = spec.params.xi
    tan_a = np.tan(a_mix)
    sec_a = 1.0 / np.cos(a_mix)
    n2 = werner_norm_factor(spec)
    shift = p * tan_a * np.sin(2.0 * th) * np.sin(xi)
    lower = p * tan_a * np.sin(th) * (np.cos(th) * np.cos(xi) + 1j * sec_a * np.sin(th))
    return (
        np.array(
            [[0.5 * (n2 - shift), lower.conjugate()], [lower, 0.5 * (n2 + shift)]],
            dtype=complex,
        )
        / n2
    )


def closed_form_classical_marginal(p, spec):
    """Bob's post-evolution marginal for the classical family, closed form:
    diag(p*<0|U^dag U|0>, (1-p)*<1|U^dag U|1>) / [classical factor]."""
    if not 0.0 <= p <= 1.0:
        raise errors.OutOfRange(f"classical mixing parameter p = {p} outside [0, 1]")
    g = gram_closed_form(spec)
    n3 = p * g[0, 0].real + (1.0 - p) * g[1, 1].real
    if n3 < states.ZERO_NORM_EPS:
        raise errors.ZeroNorm(f"classical normalizer {n3:.3g} too small")
    return np.diag([p * g[0, 0].real / n3, (1.0 - p) * g[1, 1].real / n3]).astype(complex)


def no_signaling_predicate(family, spec):
    """Analytic verdict: does this scenario leave Bob's marginal unchanged
    under the naive (non-unitarized) evolution?

    Werner family: alpha = 0, or sin(t1) = 0, or p = 0.
    Classical family: alpha = 0, or sin(2*t1) = 0, or xi = 0 mod pi, or
    p in {0, 1}. Note sin(2*t1) = 0, not sin(t1) = 0: every deviation term
    in the diagonal closed form carries sin(2*t1), so the quarter-period
    points t1 = pi/2 mod pi are silent too (the brute force confirms).

    Agrees with signaling_measure <= NO_SIGNAL_TOL away from razor-edge
    inputs. The maximally entangled family is the Werner line at p = 1.
    """
    a_mix = hamiltonian.alpha(spec.params)
    th = evolution.t1(spec)
    hermitian_or_idle = abs(a_mix) <= _PRED_EPS
    if family.tag is states.Family.WERNER:
        return hermitian_or_idle or abs(np.sin(th)) <= _PRED_EPS or abs(family.p) <= _PRED_EPS
    if family.tag is states.Family.MAX_ENTANGLED:
        return hermitian_or_idle or abs(np.sin(th)) <= _PRED_EPS
    if family.tag is states.Family.CLASSICAL:
        return (
            hermitian_or_idle
            or abs(np.sin(2.0 * th)) <= _PRED_EPS
            or abs(np.sin(spec.params.xi)) <= _PRED_EPS
            or abs(family.p) <= _PRED_EPS
            or abs(family.p - 1.0) <= _PRED_EPS
        )
    raise errors.OutOfRange("no analytic no-signaling predicate for custom states")


@dataclass(frozen=True)
class SweepRecord:
    """One grid point's outcome; non-ok statuses leave the derived numeric
    fields as NaN."""

    r: float
    s: float
    t: float
    xi: float
    tau: float
    alpha: float
    t1: float
    family: str
    p: float
    mode: str
    norm: float
    signaling: float
    status: str


_SWEEP_FAMILIES = (states.Family.WERNER, states.Family.CLASSICAL)


@dataclass(frozen=True)
class SweepConfig:
    """Cartesian sweep description. Grids are tuples of floats; iteration
    order is family, mode, r, s, t, xi, tau, p with p varying fastest."""

    r: tuple
    s: tuple
    t: tuple
    xi: tuple
    tau: tuple
    p: tuple
    families: tuple
    modes: tuple

    def __post_init__(self):
        for name in ("r", "s", "t", "xi", "tau", "p"):
            grid = getattr(self, name)
            if len(grid) == 0:
                raise errors.ConfigError(f"grid for {name} is empty")
            if not all(np.isfinite(v) for v in grid):
                raise errors.ConfigError(f"grid for {name} contains non-finite values")
        if not self.families:
            raise errors.ConfigError("no state families selected")
        if not self.modes:
            raise errors.ConfigError("no modes selected")
        for fam in self.families:
            if fam not in _SWEEP_FAMILIES:
                raise errors.ConfigError(
                    f"sweep supports families {[f.value for f in _SWEEP_FAMILIES]}, got {fam.value!r}"
                )
            lo, hi = (-1.0 / 3.0, 1.0) if fam is states.Family.WERNER else (0.0, 1.0)
            bad = [v for v in self.p if not lo <= v <= hi]
            if bad:
                raise errors.ConfigError(
                    f"p values {bad} invalid for family {fam.value!r} (range [{lo:g}, {hi:g}])"
                )

    def points(self):
        """Grid points in ascending grid-index order."""
        return itertools.product(
            self.families, self.modes, self.r, self.s, self.t, self.xi, self.tau, self.p
        )

    def size(self):
        return (
            len(self.families)
            * len(self.modes)
            * len(self.r)
            * len(self.s)
            * len(self.t)
            * len(self.xi)
            * len(self.tau)
            * len(self.p)
        )


def _sweep_point(point, op_cache):
    fam_tag, mode, r, s, t, xi, tau, p = point
    nan = float("nan")

    def flagged(status):
        return SweepRecord(
            r=r, s=s, t=t, xi=xi, tau=tau, alpha=nan, t1=nan,
            family=fam_tag.value, p=p, mode=mode.value, norm=nan,
            signaling=nan, status=status,
        )

    try:
        params = hamiltonian.PTParams(r=r, s=s, t=t, xi=xi)
        spec = evolution.EvolutionSpec(params=params, tau=tau)
    except (errors.BrokenPTPhase, errors.DegenerateScale):
        # the two "no real spectrum scale" failures share a CSV status
        return flagged("broken_phase")
    except errors.AtBranchPoint:
        return flagged("branch_point")

    key = (mode, r, s, t, xi, tau)
    u = op_cache.get(key)
    if u is None:
        try:
            u = _alice_operator(spec, mode)
        except errors.AtBranchPoint:
            return flagged("branch_point")
        op_cache[key] = u

    state = states.werner(p) if fam_tag is states.Family.WERNER else states.classical_correlated(p)
    try:
        evolved, norm = states.apply_local_a(state, u)
    except errors.ZeroNorm:
        return flagged("zero_norm")
    before = kernels.ptrace_a(state)
    after = kernels.ptrace_a(evolved)
    measure = kernels.trace_distance2(before, after)
    return SweepRecord(
        r=r, s=s, t=t, xi=xi, tau=tau,
        alpha=hamiltonian.alpha(params), t1=evolution.t1(spec),
        family=fam_tag.value, p=p, mode=mode.value,
        norm=norm, signaling=measure, status="ok",
    )


def sweep(config):
    """Evaluate the signaling measure over the whole Cartesian grid.

    Records come back in ascending grid-index order whatever the execution
    schedule. Degenerate points are flagged through the status field
    (broken_phase, branch_point, zero_norm) instead of being dropped.
    PTSIG_THREADS > 1 fans points out over a thread pool; the propagator
    cache is shared and idempotent, so racing fills are harmless.
    """
    op_cache = {}
    points = list(config.points())
    workers = int(os.environ.get("PTSIG_THREADS", "1") or "1")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda pt: _sweep_point(pt, op_cache), points))
    return [_sweep_point(pt, op_cache) for pt in points]


__all__ = [
    "Mode",
    "Scenario",
    "SweepConfig",
    "SweepRecord",
    "NO_SIGNAL_TOL",
    "IDENTITY_TOL",
    "ScenarioResult",
    "before_marginal",
    "bob_marginal",
    "evaluate",
    "signaling_measure",
    "gram_closed_form",
    "werner_norm_factor",
    "classical_norm_factor",
    "closed_form_werner_marginal",
    "closed_form_classical_marginal",
    "no_signaling_predicate",
    "sweep",
]
