"""Norm functionals evaluated on states and along trajectories

Coefficient arrays carry the three components on the axis just before the ``n`` spatial axes,
so the same functions serve a single state, shape ``(3, *modes)``, and a trajectory, shape ``(count, 3, *modes)``.
"""
import numpy as np

from oregonator.model.constants import gradient_growth_coefficient
from oregonator.model.params import OregonatorParams, EmbeddingConstants
from oregonator.simulate.base import SpectralState
from oregonator.simulate.reaction import rescale_w
from oregonator.spectral import SineBasis


def _weighted_sum(per_component: np.ndarray, weight: float) -> np.ndarray:
    return per_component[..., 0] + per_component[..., 1] + weight * per_component[..., 2]


def component_l2_sq(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Squared L^2 norm of each component, reducing the trailing ``n`` axes"""
    return np.sum(np.asarray(coeffs) ** 2, axis=tuple(range(-n, 0)))


def weighted_l2_energy(state: SpectralState, p: OregonatorParams) -> float:
    """The energy ||u||^2 + ||v||^2 + M2 ||w||^2 of the rescaled L^2 estimate"""
    n = state.coeffs.ndim - 1
    return float(_weighted_sum(component_l2_sq(state.coeffs, n), p.M2))


def rescaled_l2_energy(state: SpectralState, p: OregonatorParams) -> float:
    """The same energy written in the rescaled variable, ||u||^2 + ||v||^2 + (b2 / c3) ||W||^2"""
    n = state.coeffs.ndim - 1
    norms = component_l2_sq(state.coeffs, n)
    return float(norms[0] + norms[1] + p.b2 / p.c3 * np.sum(rescale_w(p, state.w) ** 2))


def l2_energy_series(coeffs: np.ndarray, p: OregonatorParams, n: int) -> np.ndarray:
    """Weighted L^2 energy of every sample of a trajectory"""
    return _weighted_sum(component_l2_sq(coeffs, n), p.M2)


def gradient_series(coeffs: np.ndarray, basis: SineBasis) -> np.ndarray:
    """Squared gradient norm of each component of each sample. Shape: (count, 3)"""
    return basis.gradient_norm_sq(coeffs)


def gradient_energy(gradients: np.ndarray) -> np.ndarray:
    """Unweighted gradient energy ||grad u||^2 + ||grad v||^2 + ||grad w||^2"""
    return gradients.sum(axis=-1)


def beta_functional(gradients: np.ndarray, p: OregonatorParams) -> np.ndarray:
    """Rescaled gradient energy ||grad u||^2 + ||grad v||^2 + M2 ||grad w||^2"""
    return _weighted_sum(gradients, p.M2)


def gradient_growth_rate(beta: np.ndarray, p: OregonatorParams, emb: EmbeddingConstants) -> np.ndarray:
    """Rate (G1^2 / 2d1 + G2^2 / 2d2) eta^4 beta(t) of the uniform Gronwall step"""
    return gradient_growth_coefficient(p) * emb.eta ** 4 * beta


def lp_series(values: np.ndarray, basis: SineBasis, power: float) -> np.ndarray:
    """Integral of |.|^power of each component, computed by grid quadrature. Shape: (count, 3)"""
    return basis.lp_integral(values, power)


def l6_energy(l6: np.ndarray) -> np.ndarray:
    """Unweighted L^6 energy, the sum of the three integrals of |.|^6"""
    return l6.sum(axis=-1)


def weighted_l6_energy(l6: np.ndarray, p: OregonatorParams) -> np.ndarray:
    """Rescaled L^6 energy, ||u||_6^6 + ||v||_6^6 + M4 ||w||_6^6"""
    return _weighted_sum(l6, p.c2 ** 6 / (p.b2 ** 5 * p.c3))


def l4_radius(values: np.ndarray, basis: SineBasis) -> np.ndarray:
    """The quantity (sum of the components' ||.||_4^4)^(1/2) of each sample"""
    return np.sqrt(basis.lp_integral(values, 4).sum(axis=-1))


def sup_norm_series(values: np.ndarray, basis: SineBasis) -> np.ndarray:
    """Largest magnitude over all components of each sample"""
    return basis.sup_norm(values).max(axis=-1)
