"""Numerical verification of the explicit estimates along simulated trajectories

Each check compares a measured quantity against its bound plus a slack of
``rel_slack * bound + dt * power * ell * bound``, where ``ell`` is a local Lipschitz estimate of the reaction
built from the sup-norm of the sample and ``power`` is the homogeneity of the measured quantity.
The second term is omitted when no step size is given.
Violations are returned as data and never raised.
"""
from dataclasses import dataclass
from math import log
import logging

import numpy as np
import pandas as pd
from more_itertools import chunked
from scipy.integrate import trapezoid

from oregonator.bounds.base import Violation, CheckResult, BoundsReport
from oregonator.bounds import norms
from oregonator.model.constants import DerivedConstants, derive_constants, l2_asymptote, l6_asymptote, l6_decay_rate, compute_M4
from oregonator.model.params import OregonatorParams, DomainSpec, EmbeddingConstants
from oregonator.simulate.base import Trajectory, IntegratorConfig
from oregonator.simulate.integrate import GalerkinIntegrator
from oregonator.spectral import SineBasis

logger = logging.getLogger(__name__)


@dataclass
class DegenerateFit(ValueError):
    """The displacements of a trajectory are too small to fit a power law"""

    max_displacement: float = ...
    """Largest displacement from the first sample"""

    def __str__(self):
        return f'Displacements are below the fitting threshold (largest: {self.max_displacement:.3g})'


@dataclass(frozen=True)
class HolderFit:
    """Least-squares power law fitted to the displacement of a trajectory from its first sample"""

    exponent: float = ...
    """Fitted exponent"""
    intercept: float = ...
    """Logarithm of the fitted prefactor"""
    threshold: float = 0.45
    """Smallest exponent accepted"""

    @property
    def passed(self) -> bool:
        return self.exponent >= self.threshold


def local_lipschitz(p: OregonatorParams, sup: np.ndarray | float) -> np.ndarray | float:
    """Largest absolute row sum of f'(g) over states with sup-norm at most ``sup``"""
    row1 = p.a1 + p.b1 + (2 * p.F + 2 * p.G1) * sup
    row2 = p.b2 + p.c2 + 2 * p.G2 * sup
    row3 = p.a3 + p.c3
    return np.maximum(np.maximum(row1, row2), row3)


def measure_trajectory(traj: Trajectory, p: OregonatorParams, dom: DomainSpec,
                       emb: EmbeddingConstants | None = None, chunk_size: int = 32) -> pd.DataFrame:
    """Evaluate every norm functional at every sample

    Args:
        traj: Trajectory to measure
        p: Rate constants
        dom: Domain and resolution of the trajectory
        emb: Embedding constants, used for the gradient growth rate
        chunk_size: Number of samples synthesized at once
    Returns:
        Columns: t, E_w, L6, L6_w, L4_radius, grad_sq, beta, rho_t, linf, min_value
    """
    emb = EmbeddingConstants() if emb is None else emb
    basis = SineBasis(dom)

    l6, l4, linf = [], [], []
    for chunk in chunked(range(len(traj)), chunk_size):
        values = basis.synthesize(traj.coeffs[chunk[0]:chunk[-1] + 1])
        l6.append(norms.lp_series(values, basis, 6))
        l4.append(norms.l4_radius(values, basis))
        linf.append(norms.sup_norm_series(values, basis))
    l6 = np.concatenate(l6)

    gradients = norms.gradient_series(traj.coeffs, basis)
    beta = norms.beta_functional(gradients, p)
    return pd.DataFrame({
        't': traj.times,
        'E_w': norms.l2_energy_series(traj.coeffs, p, dom.n),
        'L6': norms.l6_energy(l6),
        'L6_w': norms.weighted_l6_energy(l6, p),
        'L4_radius': np.concatenate(l4),
        'grad_sq': norms.gradient_energy(gradients),
        'beta': beta,
        'rho_t': norms.gradient_growth_rate(beta, p, emb),
        'linf': np.concatenate(linf),
        'min_value': traj.min_values,
    })


def _slack(bound: np.ndarray, rel_slack: float, dt: float | None, lipschitz: np.ndarray, power: int) -> np.ndarray:
    output = rel_slack * bound
    if dt is not None:
        output = output + dt * power * lipschitz * bound
    return output


def _compare(name: str, times: np.ndarray, measured: np.ndarray, bound: np.ndarray, slack: np.ndarray) -> CheckResult:
    bound = np.broadcast_to(bound, measured.shape)
    slack = np.broadcast_to(slack, measured.shape)
    failed = measured > bound + slack
    violations = [Violation(name, float(t), float(m), float(b), float(s))
                  for t, m, b, s in zip(times[failed], measured[failed], bound[failed], slack[failed])]
    if len(violations) > 0:
        worst = max(violations, key=lambda v: v.excess)
        logger.info(f'Check {name} failed at {len(violations)} samples. Worst excess {worst.excess:.3e} at t={worst.t:.4g}')
    return CheckResult(name, violations, measured_sup=float(measured.max()) if measured.size > 0 else 0., checked=len(measured))


def l2_envelope(p: OregonatorParams, dom: DomainSpec, energy_0: float, elapsed: np.ndarray) -> np.ndarray:
    """Gronwall bound e^(-2 gamma d0 t) E_w(0) + M1^3 |Omega| / (3 gamma d0 F^2)"""
    return np.exp(-2 * dom.gamma * p.d0 * elapsed) * energy_0 + l2_asymptote(p, dom)


def l6_envelope(p: OregonatorParams, dom: DomainSpec, l6_0: float, elapsed: np.ndarray, corrected: bool = True) -> np.ndarray:
    """Gronwall bound of the unweighted L^6 energy with the max/min(1, M4) prefactor

    The literal bound decays at 10 gamma d0. Since ||grad u^3||^2 = 9 ||u^2 grad u||^2, the dissipation
    of the L^6 energy identity only supports a third of that rate, which the corrected bound uses
    together with the matching asymptote.
    """
    M4 = compute_M4(p)
    rate = l6_decay_rate(p, dom, corrected)
    return max(1., M4) / min(1., M4) * np.exp(-rate * elapsed) * l6_0 + l6_asymptote(p, dom, corrected)


def check_l2_envelope(traj: Trajectory, p: OregonatorParams, dom: DomainSpec, rel_slack: float = 1e-6,
                      dt: float | None = None, samples: pd.DataFrame | None = None) -> CheckResult:
    """Check the weighted L^2 energy against its Gronwall envelope at every sample

    Args:
        traj: Trajectory, started from nonnegative data
        p: Rate constants
        dom: Domain
        rel_slack: Relative slack on the bound
        dt: Step size of the integration, which enables the discretization allowance
        samples: Output of :func:`measure_trajectory`, if already computed
    Returns:
        Result of the check
    """
    if samples is None:
        samples = measure_trajectory(traj, p, dom)
    elapsed = samples['t'].values - samples['t'].values[0]
    energy = samples['E_w'].values
    bound = l2_envelope(p, dom, energy[0], elapsed)
    slack = _slack(bound, rel_slack, dt, local_lipschitz(p, samples['linf'].values), 2)
    return _compare('l2-envelope', samples['t'].values, energy, bound, slack)


def check_l6_envelope(traj: Trajectory, p: OregonatorParams, dom: DomainSpec, rel_slack: float = 1e-6,
                      dt: float | None = None, samples: pd.DataFrame | None = None, corrected: bool = True) -> CheckResult:
    """Check the unweighted L^6 energy against its Gronwall envelope at every sample

    Arguments are as in :func:`check_l2_envelope`. ``corrected`` selects the envelope described in :func:`l6_envelope`.
    """
    if samples is None:
        samples = measure_trajectory(traj, p, dom)
    elapsed = samples['t'].values - samples['t'].values[0]
    energy = samples['L6'].values
    bound = l6_envelope(p, dom, energy[0], elapsed, corrected)
    slack = _slack(bound, rel_slack, dt, local_lipschitz(p, samples['linf'].values), 6)
    return _compare('l6-envelope', samples['t'].values, energy, bound, slack)


def first_permanent_entry(times: np.ndarray, values: np.ndarray, radius: float) -> float | None:
    """Earliest sample time after which a series stays at or below a radius

    Args:
        times: Time of each sample
        values: Series to test
        radius: Threshold
    Returns:
        Time of entry, or ``None`` if the last sample is outside
    """
    outside = np.flatnonzero(np.asarray(values) > radius)
    if len(outside) == 0:
        return float(times[0])
    last = outside[-1]
    if last == len(times) - 1:
        return None
    return float(times[last + 1])


def absorbing_entry_time(traj: Trajectory, p: OregonatorParams, radius: float) -> float | None:
    """Time after which the weighted L^2 energy stays within a ball for the rest of the trajectory

    Args:
        traj: Trajectory to inspect
        p: Rate constants, which set the weight M2
        radius: Radius of the ball, in units of the energy
    Returns:
        Time of entry or ``None`` if the trajectory ends outside the ball
    """
    energy = norms.l2_energy_series(traj.coeffs, p, traj.coeffs.ndim - 2)
    return first_permanent_entry(traj.times, energy, radius)


def analytic_entry_time(p: OregonatorParams, dom: DomainSpec, energy_0: float, radius: float) -> float:
    """Time at which the L^2 envelope starting from ``energy_0`` falls to ``radius``

    Returns zero if the envelope starts inside, and infinity if its asymptote is not below the radius.
    """
    asymptote = l2_asymptote(p, dom)
    if energy_0 + asymptote <= radius:
        return 0.
    if radius <= asymptote:
        return float('inf')
    return log(energy_0 / (radius - asymptote)) / (2 * dom.gamma * p.d0)


def check_gradient_bound(traj: Trajectory, p: OregonatorParams, dom: DomainSpec, emb: EmbeddingConstants,
                         rel_slack: float = 1e-6, dt: float | None = None, samples: pd.DataFrame | None = None,
                         consts: DerivedConstants | None = None) -> CheckResult:
    """Check the gradient energy against K_E one time unit after entering B_0, and unit-window integrals of beta against M5

    Args:
        traj: Trajectory to check
        p: Rate constants
        dom: Domain
        emb: Embedding constants, which set K_E
        rel_slack: Relative slack
        dt: Step size, enabling the discretization allowance
        samples: Output of :func:`measure_trajectory`, if already computed
        consts: Derived constants, if already computed
    Returns:
        Result of the check. ``details`` holds the entry time, K_E and the largest windowed integral
    """
    consts = derive_constants(p, dom, emb) if consts is None else consts
    if samples is None:
        samples = measure_trajectory(traj, p, dom, emb)
    times = samples['t'].values
    entry = first_permanent_entry(times, samples['E_w'].values, consts.K1)
    if entry is None:
        logger.info('Trajectory never enters B_0. Skipping the gradient check')
        return CheckResult('gradient', bound=consts.K_E, details={'entry_time': None, 'K_E': consts.K_E, 'M5': consts.M5})

    # Pointwise bound
    mask = times >= entry + 1
    grad = samples['grad_sq'].values[mask]
    lipschitz = local_lipschitz(p, samples['linf'].values[mask])
    result = _compare('gradient', times[mask], grad, np.full_like(grad, consts.K_E),
                      _slack(np.full_like(grad, consts.K_E), rel_slack, dt, lipschitz, 2))
    result.bound = consts.K_E

    # Windowed integral of beta
    beta = samples['beta'].values
    window_sup = 0.
    for start in np.flatnonzero(times >= entry):
        end = np.searchsorted(times, times[start] + 1, side='right') - 1
        if times[end] < times[start] + 1 - 1e-9 or end == start:
            break
        integral = float(trapezoid(beta[start:end + 1], times[start:end + 1]))
        window_sup = max(window_sup, integral)
        slack = float(_slack(np.array(consts.M5), rel_slack, dt, local_lipschitz(p, samples['linf'].values[start:end + 1].max()), 2))
        if integral > consts.M5 + slack:
            result.violations.append(Violation('gradient-window', float(times[start]), integral, consts.M5, slack))
    result.details = {'entry_time': entry, 'K_E': consts.K_E, 'M5': consts.M5, 'window_integral_sup': window_sup}
    return result


def check_linf_bound(traj: Trajectory, consts: DerivedConstants, dom: DomainSpec, samples: pd.DataFrame | None = None) -> CheckResult:
    """Compare the sup-norm of every sample against the attractor bound

    Args:
        traj: Post-entry segment of a trajectory
        consts: Derived constants, holding the bound
        dom: Domain and resolution of the trajectory
        samples: Output of :func:`measure_trajectory`, if already computed
    Returns:
        Result of the check with the measured supremum
    """
    if samples is None:
        basis = SineBasis(dom)
        linf = np.array([float(norms.sup_norm_series(basis.synthesize(c), basis)) for c in traj.coeffs])
        times = traj.times
    else:
        linf = samples['linf'].values
        times = samples['t'].values
    result = _compare('linf', times, linf, np.full_like(linf, consts.linf_bound), np.zeros_like(linf))
    result.bound = consts.linf_bound
    return result


def time_holder_exponent(traj: Trajectory, threshold: float = 0.45, min_displacement: float = 1e-13) -> HolderFit:
    """Fit the exponent of ||g(t) - g(t_0)|| ~ (t - t_0)^theta over a short trajectory segment

    Args:
        traj: Segment with at least two samples after the first. Eight or more are recommended
        threshold: Smallest exponent counted as a pass
        min_displacement: Smallest displacement usable in the fit
    Returns:
        Fitted exponent and intercept
    Raises:
        DegenerateFit: If any displacement is below ``min_displacement``
    """
    if len(traj) < 3:
        raise ValueError(f'Need at least 3 samples to fit an exponent. Got {len(traj)}')
    n = traj.coeffs.ndim - 2
    diff = traj.coeffs[1:] - traj.coeffs[:1]
    displacement = np.sqrt(norms.component_l2_sq(diff, n).sum(axis=-1))
    if displacement.min() < min_displacement:
        raise DegenerateFit(float(displacement.max()))
    slope, intercept = np.polyfit(np.log(traj.times[1:] - traj.times[0]), np.log(displacement), 1)
    return HolderFit(float(slope), float(intercept), threshold)


def check_holder(fit: HolderFit, t: float) -> CheckResult:
    """Compare a fitted time exponent against its threshold, which is a lower bound"""
    result = CheckResult('holder', bound=fit.threshold, checked=1, measured_sup=fit.exponent)
    if not fit.passed:
        result.violations.append(Violation('holder', t, fit.exponent, fit.threshold, lower=True))
    return result


def check_positivity(traj: Trajectory, pos_tol: float) -> CheckResult:
    """Find samples whose smallest grid value is below ``-pos_tol``"""
    result = _compare('positivity', traj.times, -traj.min_values, np.zeros(len(traj)), np.full(len(traj), pos_tol))
    result.bound = 0.
    return result


def verify_trajectory(traj: Trajectory, p: OregonatorParams, dom: DomainSpec, emb: EmbeddingConstants,
                      cfg: IntegratorConfig, rel_slack: float = 1e-6, dt_allowance: bool = True,
                      l6_corrected: bool = True, holder_steps: int = 10) -> BoundsReport:
    """Run every check on one trajectory

    Args:
        traj: Trajectory started from nonnegative data
        p: Rate constants
        dom: Domain and resolution
        emb: Embedding constants
        cfg: Integrator settings used to produce the trajectory
        rel_slack: Relative slack of every bound
        dt_allowance: Whether to add the discretization allowance to the slack
        l6_corrected: Whether to use the corrected L^6 envelope
        holder_steps: Number of steps integrated from the entry state to fit the time-Holder exponent
    Returns:
        Report with the per-sample norms and the result of each check
    """
    consts = derive_constants(p, dom, emb)
    samples = measure_trajectory(traj, p, dom, emb)
    dt = cfg.dt if dt_allowance else None

    report = BoundsReport(samples)
    report.checks['positivity'] = check_positivity(traj, cfg.pos_tol)
    report.checks['l2-envelope'] = check_l2_envelope(traj, p, dom, rel_slack, dt, samples)
    report.checks['l6-envelope'] = check_l6_envelope(traj, p, dom, rel_slack, dt, samples, l6_corrected)

    # Entry into the absorbing balls
    times = samples['t'].values
    report.entry_time = first_permanent_entry(times, samples['E_w'].values, consts.K1)
    report.entry_time_E = first_permanent_entry(times, samples['grad_sq'].values, consts.K_E)
    absorbing = CheckResult('absorbing', bound=consts.K1, checked=len(traj), measured_sup=float(samples['E_w'].values[-1]))
    if report.entry_time is None:
        absorbing.violations.append(Violation('absorbing', float(times[-1]), float(samples['E_w'].values[-1]), consts.K1))
    report.checks['absorbing'] = absorbing
    logger.info(f'Entry into B_0 at t={report.entry_time}, into B_1 at t={report.entry_time_E}')

    report.checks['gradient'] = check_gradient_bound(traj, p, dom, emb, rel_slack, dt, samples, consts)
    if report.entry_time is not None:
        mask = samples['t'] >= report.entry_time + 1
        report.checks['linf'] = check_linf_bound(traj, consts, dom, samples[mask])

        # Short, finely-sampled run from the entry state for the time regularity
        start = traj.state(int(np.flatnonzero(times >= report.entry_time)[0]))
        segment = GalerkinIntegrator(p, SineBasis(dom), cfg).run(start, holder_steps * cfg.dt)
        try:
            fit = time_holder_exponent(segment)
        except DegenerateFit as exc:
            logger.info(f'Skipping the time-regularity fit: {exc}')
        else:
            report.holder_exponent = fit.exponent
            report.checks['holder'] = check_holder(fit, start.t)

    logger.info(f'Checked {len(report.checks)} bounds. Found {len(report.violations)} violations')
    return report
