"""The norm quotient of the difference of two solutions and its growth certificate"""
from dataclasses import dataclass
import logging

import numpy as np

from oregonator.bounds.base import CheckResult, Violation
from oregonator.bounds.norms import l4_radius
from oregonator.model.constants import DerivedConstants
from oregonator.model.params import OregonatorParams, DomainSpec
from oregonator.simulate.base import SpectralState, Trajectory, IntegratorConfig
from oregonator.simulate.initialize import positive_profile
from oregonator.simulate.integrate import GalerkinIntegrator
from oregonator.spectral import SineBasis

logger = logging.getLogger(__name__)


@dataclass
class ZeroDifference(ValueError):
    """The two states are identical, so their norm quotient is undefined"""

    def __str__(self):
        return 'The difference of the two states is zero'


def gamma_quotient(y: np.ndarray, basis: SineBasis, weighted: bool = False, diffusion: tuple[float, float, float] | None = None) -> float:
    """Rayleigh quotient ||(-Laplacian)^(1/2) y||^2 / ||y||^2 of a difference of states

    Args:
        y: Coefficients of the difference. Shape: (3, *modes)
        basis: Basis for the domain
        weighted: Whether to weight each component by its diffusion coefficient
        diffusion: Diffusion coefficients, required when ``weighted``
    Returns:
        The quotient
    Raises:
        ZeroDifference: If ``y`` is zero
    """
    norms = basis.l2_norm_sq(y)
    total = float(norms.sum())
    if total == 0:
        raise ZeroDifference()
    gradients = basis.gradient_norm_sq(y)
    if weighted:
        if diffusion is None:
            raise ValueError('Diffusion coefficients are required for the weighted quotient')
        gradients = np.asarray(diffusion) * gradients
    return float(gradients.sum()) / total


def quotient_series(traj_1: Trajectory, traj_2: Trajectory, basis: SineBasis) -> np.ndarray:
    """Norm quotient at each common sample of two trajectories"""
    if not np.allclose(traj_1.times, traj_2.times):
        raise ValueError('Trajectories must be sampled at the same times')
    return np.array([gamma_quotient(a - b, basis) for a, b in zip(traj_1.coeffs, traj_2.coeffs)])


def check_gamma_growth(traj_1: Trajectory, traj_2: Trajectory, consts: DerivedConstants, dom: DomainSpec,
                       rel_slack: float = 1e-6) -> CheckResult:
    """Check the forward-difference growth of the norm quotient against rho(R) times the quotient

    ``R`` is the largest (sum of ||.||_4^4)^(1/2) over the samples of both trajectories. Each interval
    is compared as ``(Gamma_{k+1} - Gamma_k) / dt_k <= rho max(Gamma_k, Gamma_{k+1}) (1 + rel_slack)``.

    Args:
        traj_1: First trajectory
        traj_2: Second trajectory, sampled at the same times
        consts: Derived constants, holding N(R) and d0
        dom: Domain and resolution
        rel_slack: Relative slack
    Returns:
        Result of the check. ``details`` holds R, rho and the largest observed dGamma/dt - rho Gamma
    """
    basis = SineBasis(dom)
    gamma = quotient_series(traj_1, traj_2, basis)
    radius = max(float(l4_radius(basis.synthesize(c), basis).max()) for c in (traj_1.coeffs, traj_2.coeffs))
    rho = consts.rho(radius)

    rate = np.diff(gamma) / np.diff(traj_1.times)
    reference = np.maximum(gamma[:-1], gamma[1:])
    bound = rho * reference
    failed = rate > bound * (1 + rel_slack)
    violations = [Violation('gamma-growth', float(t), float(r), float(b), float(b * rel_slack))
                  for t, r, b in zip(traj_1.times[:-1][failed], rate[failed], bound[failed])]
    margin = float((rate - bound).max()) if len(rate) > 0 else -np.inf
    logger.info(f'Norm quotient grew at most {margin:.3g} faster than rho Gamma with rho={rho:.4g} (R={radius:.4g})')
    return CheckResult('gamma-growth', violations, measured_sup=float(gamma.max()), checked=len(rate),
                       details={'R_measured': radius, 'rho': rho, 'margin': margin, 'gamma_min': float(gamma.min())})


def nearby_pair(state: SpectralState, basis: SineBasis, rng: np.random.Generator, offset: float, n_cosines: int = 4) -> SpectralState:
    """Perturb a state by a nonnegative bump with L^2 norm ``offset``, which keeps nonnegative states nonnegative"""
    bump = np.stack([positive_profile(basis, rng, n_cosines) for _ in range(3)])
    coeffs = basis.analyze(bump)
    coeffs *= offset / np.sqrt(basis.l2_norm_sq(coeffs).sum())
    return SpectralState(state.coeffs + coeffs, state.t)


def run_gamma_pairs(traj: Trajectory, p: OregonatorParams, dom: DomainSpec, cfg: IntegratorConfig, consts: DerivedConstants,
                    pairs: int = 5, horizon: float = 5., offset: float = 1e-3, cadence: float = 0.1,
                    rel_slack: float = 1e-6, seed: int = 0) -> list[CheckResult]:
    """Check the norm-quotient growth along pairs of trajectories started from nearby post-entry states

    Args:
        traj: Post-entry trajectory supplying the starting states, spread evenly over its samples
        p: Rate constants
        dom: Domain and resolution
        cfg: Integrator settings
        consts: Derived constants
        pairs: Number of pairs
        horizon: Length of each pair of trajectories
        offset: L^2 distance between the starting states of a pair
        cadence: Time between samples of the pair trajectories
        rel_slack: Relative slack of the check
        seed: Seed for the perturbations
    Returns:
        Result of the check for each pair
    """
    rng = np.random.default_rng(seed)
    basis = SineBasis(dom)
    integrator = GalerkinIntegrator(p, basis, cfg)
    output = []
    for index in np.linspace(0, len(traj) - 1, pairs).round().astype(int):
        start = traj.state(index)
        other = nearby_pair(start, basis, rng, offset)
        traj_1 = integrator.run(start, horizon, cadence)
        traj_2 = integrator.run(other, horizon, cadence)
        output.append(check_gamma_growth(traj_1, traj_2, consts, dom, rel_slack))
    return output
