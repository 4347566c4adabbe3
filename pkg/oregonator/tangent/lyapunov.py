"""Lyapunov exponents by repeated reorthonormalization, and the dimension estimates built from them"""
from math import prod
import logging

import numpy as np
from tqdm import tqdm

from oregonator.model.params import OregonatorParams, DomainSpec
from oregonator.simulate.base import IntegratorConfig, SpectralState, Trajectory
from oregonator.spectral import SineBasis
from oregonator.tangent.base import TangentBundle, SpectrumEstimate, NotConverged
from oregonator.tangent.variational import TangentPropagator, gram_schmidt, orthonormalize, trace_terms

logger = logging.getLogger(__name__)


def random_frame(m: int, coefficient_shape: tuple[int, ...], rng: np.random.Generator) -> np.ndarray:
    """Draw an orthonormal frame of ``m`` tangent vectors with Gaussian coefficients"""
    frames, _ = gram_schmidt(rng.normal(size=(m, 3, *coefficient_shape)))
    return frames


def lyapunov_spectrum(g0: SpectralState, p: OregonatorParams, dom: DomainSpec, cfg: IntegratorConfig, m: int,
                      horizon: float, transient: float = 2., reorth_every: int = 10, windows: int = 4,
                      drift_tol: float = 0.05, pinned_base: bool = False, seed: int = 0,
                      frames: np.ndarray | None = None, progress: bool = False) -> SpectrumEstimate:
    """Estimate the leading Lyapunov exponents along a trajectory

    The base and an ``m``-frame are advanced together. Every ``reorth_every`` steps the frame is orthonormalized
    and, once the transient has passed, the logarithms of the growth factors are accumulated.
    The trace of the linearized operator on the leading directions is sampled after each orthonormalization.

    Args:
        g0: Starting state of the base
        p: Rate constants
        dom: Domain and resolution
        cfg: Integrator settings
        m: Number of exponents
        horizon: Length of the accumulation period, after the transient
        transient: Time integrated before accumulation starts
        reorth_every: Number of steps between orthonormalizations
        windows: Number of equal windows the accumulation is split into to judge convergence
        drift_tol: Largest change in an exponent between the last two windows, relative to max(1, |mu_1|)
        pinned_base: Hold the base at zero, which leaves the constant-coefficient linear flow
        seed: Seed for the initial frame
        frames: Initial frame, which replaces the random one
        progress: Whether to display a progress bar
    Returns:
        Exponents, largest first, and time-averaged traces
    Raises:
        NotConverged: If the exponents drift between windows. The estimate is attached to the error
        RankDeficient: If the frame collapses
    """
    n_dof = 3 * prod(dom.coefficient_shape)
    if not 1 <= m <= n_dof:
        raise ValueError(f'Number of exponents must be between 1 and {n_dof}. Got {m}')
    basis = SineBasis(dom)
    propagator = TangentPropagator(p, basis, cfg)
    rng = np.random.default_rng(seed)
    if frames is None:
        frames = random_frame(m, dom.coefficient_shape, rng)

    base = np.zeros_like(g0.coeffs) if pinned_base else g0.coeffs.copy()
    t = g0.t
    n_transient = int(round(transient / cfg.dt))
    n_steps = int(round(horizon / cfg.dt))
    if n_steps < 1:
        raise ValueError(f'Horizon {horizon} is shorter than one step of {cfg.dt}')

    # Discard the growth during the transient
    for i in range(1, n_transient + 1):
        base, frames = propagator.advance(base, frames, t, pinned_base)
        t += cfg.dt
        if i % reorth_every == 0:
            frames, _ = gram_schmidt(frames)
    frames, _ = gram_schmidt(frames)

    # Accumulate block by block, starting from empty accumulators
    bundle = TangentBundle(SpectralState(base, t), frames, pinned=pinned_base)
    logs, durations, traces = [], [], []
    last = 0
    for i in tqdm(range(1, n_steps + 1), disable=not progress, desc='Tangent flow'):
        base, frames = propagator.advance(base, frames, t, pinned_base)
        t += cfg.dt
        if i % reorth_every == 0 or i == n_steps:
            duration = (i - last) * cfg.dt
            last = i
            bundle, growth = orthonormalize(TangentBundle(SpectralState(base, t), frames, bundle.log_growth, bundle.elapsed + duration, pinned_base))
            frames = bundle.frames
            logs.append(np.log(growth))
            durations.append(duration)
            traces.append(trace_terms(bundle, p, basis, cfg.reaction))
            logger.debug(f'Reorthonormalized at t={t:.4g}. Growth factors: {growth}')

    logs = np.array(logs)
    durations = np.array(durations)
    exponents = bundle.log_growth / bundle.elapsed

    # Convergence across windows
    groups = [g for g in np.array_split(np.arange(len(logs)), max(1, windows)) if len(g) > 0]
    window_exponents = np.array([logs[g].sum(axis=0) / durations[g].sum() for g in groups])
    drift = float(np.abs(window_exponents[-1] - window_exponents[-2]).max()) if len(groups) > 1 else 0.

    trace_average = np.average(np.cumsum(np.array(traces), axis=1), axis=0, weights=durations)
    estimate = SpectrumEstimate(np.sort(exponents)[::-1], trace_average, window_exponents, drift)
    logger.info(f'Lyapunov exponents over t={durations.sum():.4g}: {estimate.exponents}. Window drift {drift:.3g}')
    if drift > drift_tol * max(1., abs(estimate.exponents[0])):
        raise NotConverged(drift, estimate)
    return estimate


def kaplan_yorke(exponents: np.ndarray) -> float:
    """Kaplan-Yorke dimension j + (mu_1 + ... + mu_j) / |mu_{j+1}|, with j the largest count whose partial sum is nonnegative

    Returns zero if the largest exponent is negative and the number of exponents if no partial sum is negative.
    """
    exponents = np.sort(np.asarray(exponents, dtype=float))[::-1]
    partial = np.cumsum(exponents)
    if partial[0] < 0:
        return 0.
    j = int(np.flatnonzero(partial >= 0)[-1])
    if j == len(exponents) - 1:
        return float(len(exponents))
    return (j + 1) + partial[j] / abs(exponents[j + 1])


def fractal_dimension_bound(q: np.ndarray, m: int) -> float:
    """Upper bound m * max_{j<m} (1 + max(q_j, 0) / |q_m|) on the fractal dimension

    Args:
        q: Values of q_k for k=1..len(q)
        m: Count at which q_m < 0
    Returns:
        The bound
    """
    q = np.asarray(q, dtype=float)
    if q[m - 1] >= 0:
        raise ValueError(f'q_{m} must be negative. Got {q[m - 1]}')
    ratios = [1 + max(q[j], 0.) / abs(q[m - 1]) for j in range(m - 1)]
    return m * max(ratios, default=1.)


def sampled_trace_sup(traj: Trajectory, p: OregonatorParams, dom: DomainSpec, cfg: IntegratorConfig, m: int,
                      horizon: float, n_bases: int = 10, n_frames: int = 3, reorth_every: int = 10,
                      seed: int = 0) -> tuple[np.ndarray, int]:
    """Largest time-averaged trace over sampled base points and initial frames

    The supremum over the attractor and over all frames is not computable.
    The maximum over samples is a lower estimate of it.

    Args:
        traj: Trajectory after absorbing entry. Base points are spread evenly over its samples
        p: Rate constants
        dom: Domain and resolution
        cfg: Integrator settings
        m: Largest number of directions
        horizon: Averaging time from each base point
        n_bases: Number of base points
        n_frames: Number of random frames per base point
        reorth_every: Steps between orthonormalizations
        seed: Seed for the frames
    Returns:
        - Largest time-averaged trace for k=1..m
        - Number of combinations sampled
    """
    rng = np.random.default_rng(seed)
    indices = np.unique(np.linspace(0, len(traj) - 1, n_bases).round().astype(int))
    best = np.full(m, -np.inf)
    count = 0
    for index in indices:
        for _ in range(n_frames):
            frames = random_frame(m, dom.coefficient_shape, rng)
            estimate = lyapunov_spectrum(traj.state(index), p, dom, cfg, m, horizon, transient=0.,
                                         reorth_every=reorth_every, windows=1, frames=frames)
            best = np.maximum(best, estimate.trace_average)
            count += 1
    logger.info(f'Sampled traces from {count} base points and frames. Largest q_k: {best}')
    return best, count
