import numpy as np
from pytest import raises, mark, approx

from oregonator.bounds import checks
from oregonator.bounds.base import Violation
from oregonator.model.constants import derive_constants, l2_asymptote
from oregonator.simulate.base import SpectralState, Trajectory, IntegratorConfig
from oregonator.simulate.initialize import make_initial_state
from oregonator.simulate.integrate import simulate
from oregonator.spectral import SineBasis


def test_entry_times():
    times = np.arange(5, dtype=float)
    assert checks.first_permanent_entry(times, [3, 2, 1, 0.5, 0.1], 1.) == 2.
    assert checks.first_permanent_entry(times, [0, 2, 0, 0, 0], 1.) == 2.
    assert checks.first_permanent_entry(times, [0, 0, 0, 0, 0], 1.) == 0.
    assert checks.first_permanent_entry(times, [0, 0, 0, 0, 2], 1.) is None


def test_analytic_entry(ones, domain):
    asymptote = l2_asymptote(ones, domain)
    assert checks.analytic_entry_time(ones, domain, 0., 2 * asymptote) == 0.
    assert checks.analytic_entry_time(ones, domain, 10., asymptote / 2) == float('inf')
    time = checks.analytic_entry_time(ones, domain, 10., 2 * asymptote)
    assert checks.l2_envelope(ones, domain, 10., np.array([time]))[0] == approx(2 * asymptote)


@mark.timeout(120)
def test_all_ones(trajectory, ones, domain, embedding, config):
    report = checks.verify_trajectory(trajectory, ones, domain, embedding, config)
    assert report.passed, report.violations
    assert set(report.checks) == {'positivity', 'l2-envelope', 'l6-envelope', 'absorbing', 'gradient', 'linf', 'holder'}

    # Entry is finite and no later than the envelope predicts
    consts = derive_constants(ones, domain, embedding)
    energy_0 = report.samples['E_w'].iloc[0]
    assert 0 < report.entry_time <= checks.analytic_entry_time(ones, domain, energy_0, consts.K1) + 0.05
    assert report.samples['E_w'].iloc[-20:].mean() <= consts.K1 * 1.001
    assert report.samples['L6_w'].iloc[-20:].mean() <= consts.K3 * 1.001
    assert report.holder_exponent >= 0.45

    # The measured table has every column
    assert list(report.samples.columns) == ['t', 'E_w', 'L6', 'L6_w', 'L4_radius', 'grad_sq', 'beta', 'rho_t', 'linf', 'min_value']
    summary = report.summary()
    assert summary['passed'].all()
    assert report.checks['gradient'].details['window_integral_sup'] <= consts.M5


def test_zero_data(ones, domain, embedding, config):
    traj = simulate(SpectralState.zeros(domain.coefficient_shape), ones, domain, config, horizon=1.5, cadence=0.1)
    report = checks.verify_trajectory(traj, ones, domain, embedding, config)
    assert report.passed
    assert report.entry_time == 0.
    assert report.holder_exponent is None  # Displacements are all zero
    assert report.checks['l2-envelope'].measured_sup == 0.


def test_envelope_violation(ones, domain):
    # A sample which gains energy violates the envelope
    coeffs = np.zeros((2, 3, domain.modes))
    coeffs[0, 0, 0] = 1.
    coeffs[1, 0, 0] = 10.
    traj = Trajectory(np.array([0., 1.]), coeffs, np.zeros(2))

    result = checks.check_l2_envelope(traj, ones, domain, rel_slack=0.)
    assert not result.passed
    violation, = result.violations
    assert isinstance(violation, Violation)
    assert violation.t == 1.
    assert violation.measured == approx(100.)
    assert violation.excess > 0

    # The same trajectory passes once the slack is large enough
    assert checks.check_l2_envelope(traj, ones, domain, rel_slack=1e3).passed


def test_l6_envelopes(ones, domain):
    elapsed = np.linspace(0, 1, 5)
    literal = checks.l6_envelope(ones, domain, 1., elapsed, corrected=False)
    corrected = checks.l6_envelope(ones, domain, 1., elapsed)
    assert literal[0] < corrected[0]  # Larger asymptote
    assert np.all(np.diff(corrected) < 0)


def test_holder_fit(domain):
    times = np.linspace(0, 0.01, 11)
    direction = np.zeros((3, domain.modes))
    direction[0, 0] = 1.
    coeffs = np.array([np.sqrt(t) * direction for t in times])
    fit = checks.time_holder_exponent(Trajectory(times, coeffs, np.zeros(11)))
    assert fit.exponent == approx(0.5, abs=1e-8)
    assert fit.passed

    rough = checks.time_holder_exponent(Trajectory(times, np.array([t ** 0.25 * direction for t in times]), np.zeros(11)))
    assert not rough.passed

    # The threshold is a lower bound: the violation records the exponent as measured and the shortfall as excess
    result = checks.check_holder(rough, 0.5)
    violation, = result.violations
    assert violation.measured == approx(0.25, abs=1e-8)
    assert violation.bound == 0.45
    assert violation.excess == approx(0.2, abs=1e-8)
    assert result.measured_sup == violation.measured
    assert checks.check_holder(fit, 0.5).passed

    with raises(checks.DegenerateFit):
        checks.time_holder_exponent(Trajectory(times, np.zeros((11, 3, domain.modes)), np.zeros(11)))
    with raises(ValueError):
        checks.time_holder_exponent(Trajectory(times[:2], coeffs[:2], np.zeros(2)))


def test_positivity_check():
    traj = Trajectory(np.array([0., 1., 2.]), np.zeros((3, 3, 4)), np.array([0., -1e-9, -1e-3]))
    result = checks.check_positivity(traj, 1e-8)
    assert len(result.violations) == 1
    assert result.violations[0].t == 2.


def test_local_lipschitz(ones):
    assert checks.local_lipschitz(ones, 0.) == 2.
    assert checks.local_lipschitz(ones, 1.) == 6.


@mark.timeout(60)
def test_absorbing_entry(ones, domain, embedding, config):
    consts = derive_constants(ones, domain, embedding)
    g0 = make_initial_state('random', ones, SineBasis(domain), seed=2, energy=100 * consts.K1)
    traj = simulate(g0, ones, domain, config, horizon=1., cadence=0.05)
    entry = checks.absorbing_entry_time(traj, ones, consts.K1 * 1.001)
    assert entry is not None
    assert 0 < entry <= checks.analytic_entry_time(ones, domain, 100 * consts.K1, consts.K1) + 0.05

    # The energy stays positive, so the zero ball is never entered
    assert checks.absorbing_entry_time(traj, ones, 0.) is None


def test_linf_check(trajectory, ones, domain, embedding):
    consts = derive_constants(ones, domain, embedding)
    post_entry = trajectory.segment(1.)
    result = checks.check_linf_bound(post_entry, consts, domain)
    assert result.passed
    assert result.bound == consts.linf_bound
    assert 0 < result.measured_sup < consts.linf_bound
    assert result.checked == len(post_entry)


def _worst_excess(result) -> float:
    return max((v.excess for v in result.violations), default=0.)


@mark.timeout(120)
def test_step_refinement(ones, domain, embedding):
    """Envelope violations without any slack come from the time discretization, so they shrink with the step"""
    consts = derive_constants(ones, domain, embedding)
    g0 = make_initial_state('random', ones, SineBasis(domain), seed=5, energy=100 * consts.K1)
    excess = {}
    for dt in [4e-3, 2e-3]:
        traj = simulate(g0, ones, domain, IntegratorConfig(dt=dt), horizon=1., cadence=0.02)
        samples = checks.measure_trajectory(traj, ones, domain)
        excess[dt] = (
            _worst_excess(checks.check_l2_envelope(traj, ones, domain, rel_slack=0., samples=samples)),
            _worst_excess(checks.check_l6_envelope(traj, ones, domain, rel_slack=0., samples=samples)),
        )

    for coarse, fine in zip(excess[4e-3], excess[2e-3]):
        assert fine <= coarse / 2

    # The asymptotic weighted L^6 energy stays within the absorbing bound
    assert samples['L6_w'].iloc[-10:].mean() <= consts.K3 * 1.001
