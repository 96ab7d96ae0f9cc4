"""Deterministic self-verification suites.

Every analytic identity the library leans on is re-derived here against
randomized inputs with a seeded generator, so one `ptsig verify` run (or
`verify.run_all()`) re-certifies the whole chain: kernels, Hamiltonian
closed forms, propagators, the CPT machinery, and the signaling claims.

All operator lookups go through the owning module at call time, which keeps
the suites honest under fault injection (tests monkeypatch e.g.
cpt.charge_conjugation and expect the matching suite to fail).
"""

from dataclasses import dataclass

import numpy as np

from ptsig import cpt, errors, evolution, hamiltonian, matrixkit, signaling, states

DEFAULT_SEED = 123456789


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one suite: worst residual against its threshold."""

    name: str
    worst: float
    threshold: float

    @property
    def passed(self):
        return self.worst <= self.threshold


def _sample_params(rng, j_scale=False):
    t = rng.uniform(0.3, 1.5)
    a_mix = rng.uniform(-1.4, 1.4)
    j = rng.choice([-2.0, 1.0, 3.0]) if j_scale else 1.0
    return hamiltonian.PTParams(
        r=rng.uniform(-1.0, 1.0),
        s=t * np.sin(a_mix),
        t=t,
        xi=rng.uniform(-np.pi, np.pi),
        J=float(j),
    )


def _sample_spec(rng):
    return evolution.EvolutionSpec(params=_sample_params(rng), tau=rng.uniform(0.1, 3.0))


def _random_matrix2(rng, scale=1.0):
    return scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))


def _random_density(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / rho.trace().real


def _random_unitary2(rng):
    h = _random_matrix2(rng)
    return matrixkit.mat_exp2(-1j * (h + h.conj().T))


def _max_abs(m):
    return float(np.abs(m).max())


_EYE2 = np.eye(2)


def _suite_exp_inverse(rng):
    worst = 0.0
    for _ in range(100):
        m = _random_matrix2(rng)
        m *= rng.uniform(0.0, 5.0) / max(np.linalg.norm(m), 1e-30)
        worst = max(worst, _max_abs(matrixkit.mat_exp2(m) @ matrixkit.mat_exp2(-m) - _EYE2))
    return worst


def _suite_eig_residual(rng):
    worst = 0.0
    for _ in range(200):
        m = _random_matrix2(rng, scale=rng.uniform(0.1, 10.0))
        lam1, lam2, v1, v2 = matrixkit.eig2(m)
        scale = np.linalg.norm(m)
        worst = max(
            worst,
            float(np.linalg.norm(m @ v1 - lam1 * v1)) / scale,
            float(np.linalg.norm(m @ v2 - lam2 * v2)) / scale,
        )
    return worst


def _suite_herm_sqrt(rng):
    worst = 0.0
    for k in range(100):
        if k % 2 == 0:
            g = _random_matrix2(rng)
            m = g @ g.conj().T + 0.05 * _EYE2
        else:
            m = cpt.cp_operator(_sample_params(rng))
        root, inv_root = matrixkit.herm_sqrt2(m)
        worst = max(
            worst,
            _max_abs(root @ root - m),
            _max_abs(root @ inv_root - _EYE2),
        )
    return worst


def _suite_trace_distance_metric(rng):
    worst = 0.0
    for _ in range(100):
        a, b, c = (_random_density(rng, 2) for _ in range(3))
        dab = matrixkit.trace_distance2(a, b)
        worst = max(
            worst,
            abs(dab - matrixkit.trace_distance2(b, a)),
            -min(0.0, dab),
            matrixkit.trace_distance2(a, c) - dab - matrixkit.trace_distance2(b, c),
            matrixkit.trace_distance2(a, a),
        )
    return worst


def _suite_kron_homomorphism(rng):
    worst = 0.0
    for _ in range(100):
        a = _random_matrix2(rng)
        b = _random_matrix2(rng)
        worst = max(
            worst,
            _max_abs(matrixkit.kron_left(a) @ matrixkit.kron_left(b) - matrixkit.kron_left(a @ b)),
        )
    return worst


def _suite_pt_symmetry(rng):
    worst = 0.0
    for _ in range(200):
        params = _sample_params(rng)
        h = hamiltonian.build(params)
        worst = max(worst, hamiltonian.check_pt_symmetry(h, params.xi))
    return worst


def _suite_spectrum_closed_form(rng):
    worst = 0.0
    for _ in range(200):
        params = _sample_params(rng, j_scale=True)
        spec = hamiltonian.spectrum(params)
        h = hamiltonian.build(params)
        lam1, lam2, _, _ = matrixkit.eig2(h)
        scaled = sorted((params.J * lam1.real, params.J * lam2.real))
        expected = sorted((spec.e_minus, spec.e_plus))
        worst = max(
            worst,
            abs(lam1.imag),
            abs(lam2.imag),
            abs(scaled[0] - expected[0]),
            abs(scaled[1] - expected[1]),
            float(np.linalg.norm(h @ spec.v_plus - (spec.e_plus / params.J) * spec.v_plus)),
            float(np.linalg.norm(h @ spec.v_minus - (spec.e_minus / params.J) * spec.v_minus)),
        )
    return worst


def _suite_eigenstate_overlap(rng):
    worst = 0.0
    for _ in range(200):
        params = _sample_params(rng)
        spec = hamiltonian.spectrum(params)
        overlap = hamiltonian.overlap_eigenstates(spec)
        worst = max(worst, abs(abs(overlap) - abs(np.sin(spec.alpha))))
        hermitian = hamiltonian.PTParams(r=params.r, s=0.0, t=params.t, xi=params.xi)
        worst = max(
            worst,
            abs(hamiltonian.overlap_eigenstates(hamiltonian.spectrum(hermitian))),
        )
    return worst


def _suite_propagator_det(rng):
    worst = 0.0
    for _ in range(100):
        spec = _sample_spec(rng)
        u = evolution.propagator(spec)
        det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
        worst = max(worst, abs(det - np.exp(-2j * spec.params.r * spec.tau)))
    return worst


def _suite_propagator_semigroup(rng):
    worst = 0.0
    for _ in range(100):
        params = _sample_params(rng)
        tau1, tau2 = rng.uniform(0.1, 2.0, size=2)
        u1 = evolution.propagator(evolution.EvolutionSpec(params=params, tau=float(tau1)))
        u2 = evolution.propagator(evolution.EvolutionSpec(params=params, tau=float(tau2)))
        u12 = evolution.propagator(evolution.EvolutionSpec(params=params, tau=float(tau1 + tau2)))
        worst = max(worst, _max_abs(u1 @ u2 - u12))
    return worst


def _suite_gram_closed_form(rng):
    worst = 0.0
    for _ in range(200):
        spec = _sample_spec(rng)
        worst = max(worst, _max_abs(evolution.gram(spec) - signaling.gram_closed_form(spec)))
    return worst


def _suite_norm_factor_identity(rng):
    worst = 0.0
    for _ in range(200):
        spec = _sample_spec(rng)
        a_mix = hamiltonian.alpha(spec.params)
        th = evolution.t1(spec)
        n2 = signaling.werner_norm_factor(spec)
        worst = max(
            worst,
            abs(n2 - (1.0 + 2.0 * np.sin(th) ** 2 * np.tan(a_mix) ** 2)),
            1.0 - n2,
        )
        p = rng.uniform(0.0, 1.0)
        n3 = signaling.classical_norm_factor(p, spec)
        if n3 <= 0.0:
            worst = max(worst, 1.0)
    return worst


def _suite_charge_conjugation_square(rng):
    worst = 0.0
    for _ in range(200):
        c = cpt.charge_conjugation(_sample_params(rng))
        worst = max(worst, _max_abs(c @ c - _EYE2))
    return worst


def _suite_charge_conjugation_commutant(rng):
    worst = 0.0
    for _ in range(200):
        params = _sample_params(rng)
        c = cpt.charge_conjugation(params)
        h = hamiltonian.build(params)
        worst = max(worst, _max_abs(c @ h - h @ c))
    return worst


def _suite_charge_conjugation_spectral(rng):
    worst = 0.0
    for _ in range(200):
        params = _sample_params(rng)
        worst = max(
            worst,
            _max_abs(cpt.charge_conjugation_from_spectrum(params) - cpt.charge_conjugation(params)),
        )
    return worst


def _suite_cp_metric(rng):
    worst = 0.0
    for _ in range(200):
        params = _sample_params(rng)
        cp_op = cpt.cp_operator(params)
        a_mix = hamiltonian.alpha(params)
        sec_a, tan_a = 1.0 / np.cos(a_mix), np.tan(a_mix)
        lo, hi = matrixkit.eig2(cp_op)[:2]
        worst = max(
            worst,
            _max_abs(cp_op - cpt.charge_conjugation(params) @ hamiltonian.parity(params.xi)),
            matrixkit.hermitian_defect(cp_op),
            abs(lo - (sec_a - abs(tan_a))),
            abs(hi - (sec_a + abs(tan_a))),
            -min(0.0, lo.real),
        )
    return worst


def _suite_parity_recovery(rng):
    worst = 0.0
    for _ in range(200):
        params = _sample_params(rng)
        recovered = cpt.recover_parity(params)
        worst = max(
            worst,
            _max_abs(recovered - hamiltonian.parity(params.xi)),
            _max_abs(recovered.imag),
            _max_abs(recovered @ recovered - _EYE2),
        )
    return worst


def _suite_unitarized_unitarity(rng):
    worst = 0.0
    for _ in range(200):
        params = _sample_params(rng)
        u = cpt.cpt_propagator(params, rng.uniform(0.0, 10.0))
        worst = max(worst, _max_abs(u.conj().T @ u - _EYE2))
    return worst


def _suite_unitarized_closed_form(rng):
    worst = 0.0
    for _ in range(200):
        params = _sample_params(rng)
        tau = rng.uniform(0.0, 10.0)
        worst = max(
            worst,
            _max_abs(cpt.cpt_propagator(params, tau) - cpt.cpt_propagator_closed_form(params, tau)),
        )
    return worst


def _suite_unitary_invariance(rng):
    worst = 0.0
    for _ in range(50):
        u = _random_unitary2(rng)
        state = _random_density(rng, 4)
        evolved, norm = states.apply_local_a(state, u)
        worst = max(
            worst,
            abs(norm - 1.0),
            _max_abs(states.partial_trace_a(evolved) - states.partial_trace_a(state)),
        )
    return worst


def _suite_restoration(rng):
    worst = 0.0
    for _ in range(60):
        spec = _sample_spec(rng)
        fams = [
            states.StateFamily(tag=states.Family.WERNER, p=float(rng.uniform(-1.0 / 3.0, 1.0))),
            states.StateFamily(tag=states.Family.CLASSICAL, p=float(rng.uniform(0.0, 1.0))),
            states.StateFamily(tag=states.Family.MAX_ENTANGLED),
            states.StateFamily(tag=states.Family.CUSTOM, matrix=_random_density(rng, 4)),
        ]
        for fam in fams:
            sc = signaling.Scenario(family=fam, spec=spec, mode=signaling.Mode.CPT)
            worst = max(worst, signaling.signaling_measure(sc))
    return worst


def _suite_werner_marginal_closed_form(rng):
    worst = 0.0
    for _ in range(150):
        spec = _sample_spec(rng)
        p = float(rng.uniform(-1.0 / 3.0, 1.0))
        fam = states.StateFamily(tag=states.Family.WERNER, p=p)
        sc = signaling.Scenario(family=fam, spec=spec, mode=signaling.Mode.NAIVE)
        _, norm = states.apply_local_a(fam.state(), evolution.propagator(spec))
        worst = max(
            worst,
            _max_abs(signaling.bob_marginal(sc) - signaling.closed_form_werner_marginal(p, spec)),
            abs(norm - signaling.werner_norm_factor(spec)) / max(1.0, norm),
        )
    return worst


def _suite_classical_marginal_closed_form(rng):
    worst = 0.0
    for _ in range(150):
        spec = _sample_spec(rng)
        p = float(rng.uniform(0.0, 1.0))
        fam = states.StateFamily(tag=states.Family.CLASSICAL, p=p)
        sc = signaling.Scenario(family=fam, spec=spec, mode=signaling.Mode.NAIVE)
        _, norm = states.apply_local_a(fam.state(), evolution.propagator(spec))
        worst = max(
            worst,
            _max_abs(signaling.bob_marginal(sc) - signaling.closed_form_classical_marginal(p, spec)),
            abs(norm - signaling.classical_norm_factor(p, spec)) / max(1.0, norm),
        )
    return worst


def _predicate_points(rng):
    # generic points plus every analytic kill switch, both families
    for _ in range(40):
        params = _sample_params(rng)
        tau = float(rng.uniform(0.1, 3.0))
        p_w = float(rng.uniform(0.05, 1.0))
        p_c = float(rng.uniform(0.05, 0.95))
        t_cos = params.t * np.cos(hamiltonian.alpha(params))
        yield states.Family.WERNER, p_w, params, tau
        yield states.Family.CLASSICAL, p_c, params, tau
        hermitian = hamiltonian.PTParams(r=params.r, s=0.0, t=params.t, xi=params.xi)
        yield states.Family.WERNER, p_w, hermitian, tau
        yield states.Family.CLASSICAL, p_c, hermitian, tau
        yield states.Family.WERNER, 0.0, params, tau
        yield states.Family.CLASSICAL, 0.0, params, tau
        yield states.Family.CLASSICAL, 1.0, params, tau
        no_xi = hamiltonian.PTParams(r=params.r, s=params.s, t=params.t, xi=0.0)
        yield states.Family.CLASSICAL, p_c, no_xi, tau
        # sin(t1) = 0 and the classical-only quarter period sin(2 t1) = 0
        yield states.Family.WERNER, p_w, params, float(np.pi / t_cos)
        yield states.Family.CLASSICAL, p_c, params, float(np.pi / t_cos)
        yield states.Family.CLASSICAL, p_c, params, float(0.5 * np.pi / t_cos)


def _suite_predicate_agreement(rng):
    disagreements = 0.0
    for fam_tag, p, params, tau in _predicate_points(rng):
        fam = states.StateFamily(tag=fam_tag, p=p)
        spec = evolution.EvolutionSpec(params=params, tau=tau)
        predicted_silent = signaling.no_signaling_predicate(fam, spec)
        sc = signaling.Scenario(family=fam, spec=spec, mode=signaling.Mode.NAIVE)
        measured_silent = signaling.signaling_measure(sc) <= signaling.NO_SIGNAL_TOL
        if predicted_silent != measured_silent:
            disagreements += 1.0
    return disagreements


def _suite_branch_point_guard(rng):
    bad = 0.0
    for _ in range(20):
        t = float(rng.uniform(0.3, 1.5))
        params = hamiltonian.PTParams(r=0.0, s=t, t=t, xi=float(rng.uniform(-np.pi, np.pi)))
        for op in (
            lambda: hamiltonian.spectrum(params),
            lambda: cpt.charge_conjugation(params),
            lambda: cpt.cp_operator(params),
            lambda: cpt.cpt_propagator(params, 1.0),
            lambda: evolution.EvolutionSpec(params=params, tau=1.0),
        ):
            try:
                value = op()
            except errors.AtBranchPoint:
                continue
            bad += 1.0
            if hasattr(value, "dtype") and not np.isfinite(np.asarray(value)).all():
                bad += 1.0
    return bad


_SUITES = (
    ("exp-inverse-identity", _suite_exp_inverse, 1e-10),
    ("eig-residual", _suite_eig_residual, 1e-12),
    ("herm-sqrt-roundtrip", _suite_herm_sqrt, 1e-12),
    ("trace-distance-metric", _suite_trace_distance_metric, 1e-12),
    ("kron-homomorphism", _suite_kron_homomorphism, 1e-12),
    ("pt-symmetry-defect", _suite_pt_symmetry, 1e-13),
    ("spectrum-closed-form", _suite_spectrum_closed_form, 1e-12),
    ("eigenstate-overlap", _suite_eigenstate_overlap, 1e-12),
    ("propagator-determinant", _suite_propagator_det, 1e-10),
    ("propagator-semigroup", _suite_propagator_semigroup, 1e-10),
    ("gram-closed-form", _suite_gram_closed_form, 1e-10),
    ("norm-factor-identity", _suite_norm_factor_identity, 1e-12),
    ("charge-conjugation-square", _suite_charge_conjugation_square, 1e-12),
    ("charge-conjugation-commutant", _suite_charge_conjugation_commutant, 1e-12),
    ("charge-conjugation-spectral", _suite_charge_conjugation_spectral, 1e-12),
    ("cp-metric", _suite_cp_metric, 1e-12),
    ("parity-recovery", _suite_parity_recovery, 1e-12),
    ("unitarized-unitarity", _suite_unitarized_unitarity, 1e-12),
    ("unitarized-closed-form", _suite_unitarized_closed_form, 1e-10),
    ("unitary-invariance", _suite_unitary_invariance, 1e-12),
    ("restoration", _suite_restoration, 1e-12),
    ("werner-marginal-closed-form", _suite_werner_marginal_closed_form, 1e-10),
    ("classical-marginal-closed-form", _suite_classical_marginal_closed_form, 1e-10),
    ("predicate-agreement", _suite_predicate_agreement, 0.5),
    ("branch-point-guard", _suite_branch_point_guard, 0.5),
)

SUITE_NAMES = tuple(name for name, _, _ in _SUITES)


def run_all(seed=DEFAULT_SEED):
    """Run every suite with a deterministic seed; returns SuiteResults."""
    results = []
    for name, func, threshold in _SUITES:
        rng = np.random.default_rng([seed, len(name)] + [ord(ch) for ch in name])
        results.append(SuiteResult(name=name, worst=float(func(rng)), threshold=threshold))
    return results


def format_report(results, precision=6):
    """Fixed-layout text report; byte-identical for identical results."""
    lines = []
    width = max(len(r.name) for r in results)
    for r in results:
        verdict = "pass" if r.passed else "FAIL"
        lines.append(
            f"{r.name:<{width}}  {verdict}  worst={r.worst:.{precision}g}"
            f"  threshold={r.threshold:.{precision}g}"
        )
    total = sum(1 for r in results if r.passed)
    lines.append(f"{total}/{len(results)} suites passed")
    return "\n".join(lines) + "\n"


__all__ = ["DEFAULT_SEED", "SUITE_NAMES", "SuiteResult", "run_all", "format_report"]
