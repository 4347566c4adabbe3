"""Numerical lower bounds for the embedding constants"""
import logging

import numpy as np

from oregonator.model.params import DomainSpec
from oregonator.spectral import SineBasis

logger = logging.getLogger(__name__)


def sobolev_ratio(coeffs: np.ndarray, basis: SineBasis) -> float:
    """The ratio ||phi||_{L^4} / ||grad phi|| for a nonzero field"""
    l4 = float(basis.lp_integral(basis.synthesize(coeffs), 4)) ** 0.25
    return l4 / float(np.sqrt(basis.gradient_norm_sq(coeffs)))


def calibrate_eta(dom: DomainSpec, trials: int, seed: int = 0, n_modes: int = 8) -> float:
    """Estimate the embedding constant eta of ||phi||_{L^4} <= eta ||grad phi|| from below

    The first trial is the lowest mode. Each further trial draws Gaussian coefficients on the lowest
    ``n_modes`` modes per axis, damped by 1/lambda_j so low modes dominate. The result is the running maximum
    of the ratio, which is a lower bound on the true constant and never decreases as trials are added.

    Args:
        dom: Domain and resolution
        trials: Number of fields to evaluate
        seed: Seed of the random generator
        n_modes: Number of modes per axis excited in random trials
    Returns:
        Largest ratio observed
    """
    if trials < 1:
        raise ValueError(f'Need at least one trial. Got {trials}')
    basis = SineBasis(dom)
    rng = np.random.default_rng(seed)
    n_modes = min(n_modes, dom.modes)

    best = sobolev_ratio(basis.unit_mode((1,) * dom.n), basis)
    active = (slice(0, n_modes),) * dom.n
    for _ in range(trials - 1):
        coeffs = np.zeros(dom.coefficient_shape)
        coeffs[active] = rng.normal(size=(n_modes,) * dom.n) / basis.eigenvalues[active]
        best = max(best, sobolev_ratio(coeffs, basis))
    logger.info(f'Largest L^4 / H^1_0 ratio over {trials} trials: {best:.4f}')
    return best
