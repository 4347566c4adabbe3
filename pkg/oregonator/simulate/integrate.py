"""Time integration of the Galerkin system with exact diffusion and explicit reaction"""
from math import ceil
import logging

import numpy as np
from tqdm import tqdm

from oregonator.model.params import OregonatorParams, DomainSpec
from oregonator.simulate.base import SpectralState, IntegratorConfig, Trajectory, check_finite
from oregonator.simulate.reaction import reaction_values
from oregonator.spectral import SineBasis

logger = logging.getLogger(__name__)


class GalerkinIntegrator:
    """Advance the truncated system by integrating-factor (Lawson) IMEX schemes

    The diffusion of mode ``j`` of component ``i`` is integrated exactly through the factor
    ``exp(-d_i lambda_j dt)``, and the reaction is evaluated pseudospectrally and treated explicitly.

    Args:
        params: Rate constants
        basis: Transform plan for the domain
        config: Step size and scheme
    """

    def __init__(self, params: OregonatorParams, basis: SineBasis, config: IntegratorConfig):
        self.params = params
        self.basis = basis
        self.config = config

        diffusion = np.reshape(params.diffusion, (3,) + (1,) * basis.n)
        self.decay = np.exp(-diffusion * basis.eigenvalues * config.dt)
        self.clipped = 0

    def reaction_term(self, coeffs: np.ndarray, t: float) -> np.ndarray:
        """Galerkin projection of the reaction terms for a state"""
        if not self.config.reaction:
            return np.zeros_like(coeffs)
        values = self.basis.synthesize(coeffs)
        check_finite(values, t, self.config.blowup)
        return self.basis.analyze(reaction_values(self.params, values))

    def advance(self, coeffs: np.ndarray, t: float) -> np.ndarray:
        """Compute the coefficients one step later"""
        dt = self.config.dt
        rate = self.reaction_term(coeffs, t)
        if self.config.scheme == 'imex-euler':
            output = self.decay * (coeffs + dt * rate)
        else:
            predicted = self.decay * (coeffs + dt * rate)
            output = self.decay * (coeffs + dt / 2 * rate) + dt / 2 * self.reaction_term(predicted, t + dt)

        if self.config.clip_negatives:
            output = self._clip(output)
        check_finite(output, t + dt, self.config.blowup)
        return output

    def _clip(self, coeffs: np.ndarray) -> np.ndarray:
        values = self.basis.synthesize(coeffs)
        negative = values < 0
        count = int(negative.sum())
        if count == 0:
            return coeffs
        self.clipped += count
        logger.debug(f'Clipped {count} negative grid values')
        return self.basis.analyze(np.where(negative, 0., values))

    def step(self, state: SpectralState) -> SpectralState:
        """Advance a state by one step"""
        return SpectralState(self.advance(state.coeffs, state.t), state.t + self.config.dt)

    def min_value(self, coeffs: np.ndarray) -> float:
        """Smallest grid value over all components"""
        return float(np.min(self.basis.synthesize(coeffs)))

    def run(self, start: SpectralState, horizon: float, cadence: float | None = None, progress: bool = False) -> Trajectory:
        """Integrate from a starting state, storing samples at a fixed cadence

        Args:
            start: Initial state
            horizon: Length of time to integrate
            cadence: Time between samples. Defaults to every step
            progress: Whether to display a progress bar
        Returns:
            Samples including the initial and final states
        Raises:
            NonFiniteState: If the state blows up
        """
        dt = self.config.dt
        n_steps = int(round(horizon / dt))
        every = 1 if cadence is None else max(1, int(round(cadence / dt)))

        check_finite(start.coeffs, start.t, self.config.blowup)
        coeffs = start.coeffs.copy()
        times = [start.t]
        samples = [coeffs.copy()]
        min_values = [self.min_value(coeffs)]
        self.clipped = 0
        for i in tqdm(range(1, n_steps + 1), disable=not progress, desc='Integrating', total=n_steps):
            coeffs = self.advance(coeffs, start.t + (i - 1) * dt)
            if i % every == 0 or i == n_steps:
                times.append(start.t + i * dt)
                samples.append(coeffs.copy())
                min_values.append(self.min_value(coeffs))

        return Trajectory(np.array(times), np.array(samples), np.array(min_values), clipped=self.clipped)


def step(state: SpectralState, p: OregonatorParams, dom: DomainSpec, cfg: IntegratorConfig) -> SpectralState:
    """Advance a state by a single time step

    Args:
        state: Current state
        p: Rate constants
        dom: Domain and resolution
        cfg: Integrator settings
    Returns:
        State at ``t + dt``
    Raises:
        NonFiniteState: If the new state is not finite or exceeds the blow-up threshold
    """
    return GalerkinIntegrator(p, SineBasis(dom), cfg).step(state)


def simulate(g0: SpectralState, p: OregonatorParams, dom: DomainSpec, cfg: IntegratorConfig,
             horizon: float, cadence: float | None = None, progress: bool = False) -> Trajectory:
    """Integrate the Galerkin system and sample the trajectory

    Args:
        g0: Initial state
        p: Rate constants
        dom: Domain and resolution
        cfg: Integrator settings
        horizon: Length of the integration. Zero returns only the initial state
        cadence: Time between samples. Defaults to every step
        progress: Whether to display a progress bar
    Returns:
        Sampled trajectory with the smallest grid value of each sample
    Raises:
        NonFiniteState: With the time of failure
    """
    if horizon < 0:
        raise ValueError(f'Horizon must be nonnegative. Got {horizon}')
    integrator = GalerkinIntegrator(p, SineBasis(dom), cfg)
    traj = integrator.run(g0, horizon, cadence, progress)
    n_negative = len(traj.positivity_violations(cfg.pos_tol))
    logger.info(f'Integrated to t={traj.times[-1]:.4g} with {ceil(horizon / cfg.dt) if horizon > 0 else 0} steps.'
                f' Minimum grid value {traj.min_values.min():.3e}, {n_negative} samples below -{cfg.pos_tol:.1e}')
    return traj
