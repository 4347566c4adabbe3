"""Functions which produce initial states"""
import logging

import numpy as np

from oregonator.model.params import OregonatorParams
from oregonator.simulate.base import SpectralState
from oregonator.spectral import SineBasis

logger = logging.getLogger(__name__)


def positive_profile(basis: SineBasis, rng: np.random.Generator, n_cosines: int) -> np.ndarray:
    """Grid values of a random, nonnegative field which is exactly representable in the basis

    Along each axis the profile is ``sin(pi x / L) * (c_0 + sum_k c_k cos(k pi x / L))`` with ``c_0 > sum_k |c_k|``,
    so it is nonnegative and a combination of the first ``n_cosines + 1`` sine modes.
    The field is the product of the axis profiles.

    Args:
        basis: Basis for the domain
        rng: Random number generator
        n_cosines: Number of cosine modulations along each axis
    Returns:
        Grid values, shape ``grid_shape``
    """
    if n_cosines + 1 > basis.modes:
        raise ValueError(f'{n_cosines} modulations require at least {n_cosines + 1} modes. Have {basis.modes}')

    output = np.ones(basis.dom.grid_shape)
    for axis, (x, length) in enumerate(zip(basis.coordinates, basis.dom.lengths)):
        weights = rng.uniform(-1, 1, size=n_cosines)
        offset = np.abs(weights).sum() + rng.uniform(0.1, 1.)
        k = np.arange(1, n_cosines + 1)
        modulation = offset + np.cos(np.pi * np.outer(x, k) / length) @ weights
        profile = np.sin(np.pi * x / length) * modulation

        shape = [1] * basis.n
        shape[axis] = len(x)
        output = output * profile.reshape(shape)
    return output


def scale_to_energy(state: SpectralState, p: OregonatorParams, basis: SineBasis, energy: float) -> SpectralState:
    """Rescale a nonzero state so that ||u||^2 + ||v||^2 + M2 ||w||^2 equals a target"""
    norms = basis.l2_norm_sq(state.coeffs)
    current = norms[0] + norms[1] + p.M2 * norms[2]
    if current <= 0:
        raise ValueError('Cannot rescale the zero state')
    return SpectralState(state.coeffs * np.sqrt(energy / current), state.t)


def random_positive_state(p: OregonatorParams, basis: SineBasis, rng: np.random.Generator,
                          energy: float, n_cosines: int = 4) -> SpectralState:
    """Make a state with nonnegative, band-limited components and a prescribed weighted energy

    Args:
        p: Rate constants, which define the weights of the energy
        basis: Basis for the domain
        rng: Random number generator. Determines the state completely
        energy: Target value of ||u||^2 + ||v||^2 + M2 ||w||^2
        n_cosines: Number of cosine modulations of each component
    Returns:
        State at t=0
    """
    values = np.stack([positive_profile(basis, rng, n_cosines) for _ in range(3)])
    state = SpectralState(basis.analyze(values))
    return scale_to_energy(state, p, basis, energy)


def negative_state(p: OregonatorParams, basis: SineBasis, rng: np.random.Generator,
                   energy: float, n_cosines: int = 4) -> SpectralState:
    """Make a state whose u component is a negative bump and whose v, w are zero

    Such data lie outside the invariant cone, and the -F u^2 term drives large ones to blow up.
    """
    coeffs = np.zeros((3, *basis.dom.coefficient_shape))
    coeffs[0] = -basis.analyze(positive_profile(basis, rng, n_cosines))
    return scale_to_energy(SpectralState(coeffs), p, basis, energy)


def make_initial_state(kind: str, p: OregonatorParams, basis: SineBasis, seed: int, energy: float, n_cosines: int = 4) -> SpectralState:
    """Build the initial state named in a run configuration

    Args:
        kind: One of ``random``, ``zero`` or ``negative``
        p: Rate constants
        basis: Basis for the domain
        seed: Seed for the random generator
        energy: Target weighted energy of random states
        n_cosines: Number of cosine modulations of random states
    Returns:
        State at t=0
    """
    rng = np.random.default_rng(seed)
    if kind == 'random':
        return random_positive_state(p, basis, rng, energy, n_cosines)
    elif kind == 'zero':
        return SpectralState.zeros(basis.dom.coefficient_shape)
    elif kind == 'negative':
        return negative_state(p, basis, rng, energy, n_cosines)
    raise ValueError(f'Unrecognized initial state: {kind}')
