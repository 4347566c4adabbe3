"""The variational system of the Galerkin flow and operations on frames of tangent vectors"""
import logging

import numpy as np
from scipy.linalg import expm

from oregonator.model.params import OregonatorParams, DomainSpec
from oregonator.simulate.base import IntegratorConfig, SpectralState, check_finite
from oregonator.simulate.integrate import GalerkinIntegrator
from oregonator.simulate.reaction import linearization_at_zero
from oregonator.spectral import SineBasis, ShapeMismatch
from oregonator.tangent.base import TangentBundle, RankDeficient

logger = logging.getLogger(__name__)


def jacobian_apply(p: OregonatorParams, base: np.ndarray, tangent: np.ndarray) -> np.ndarray:
    """Apply the derivative of the reaction map at a base point to tangent vectors, pointwise

    Args:
        p: Rate constants
        base: Values of (u, v, w). Shape: (3, *grid)
        tangent: Values of (U, V, W), possibly with leading axes. Shape: (..., 3, *grid)
    Returns:
        f'(u, v, w)(U, V, W), same shape as ``tangent``
    """
    base = np.asarray(base, dtype=float)
    tangent = np.asarray(tangent, dtype=float)
    if tangent.shape[tangent.ndim - base.ndim:] != base.shape:
        raise ShapeMismatch(base.shape, tangent.shape)
    u, v, _ = base
    U, V, W = np.moveaxis(tangent, -base.ndim, 0)
    return np.stack([
        p.a1 * U + p.b1 * V - 2 * p.F * u * U - p.G1 * v * U - p.G1 * u * V,
        -p.b2 * V + p.c2 * W - p.G2 * v * U - p.G2 * u * V,
        p.a3 * U - p.c3 * W
    ], axis=-base.ndim)


def quadratic_jacobian_apply(p: OregonatorParams, base: np.ndarray, tangent: np.ndarray) -> np.ndarray:
    """The part f'(g) - f'(0) of the derivative, which depends on the base point"""
    u, v, _ = base
    U, V, _ = np.moveaxis(tangent, -base.ndim, 0)
    cross = v * U + u * V
    return np.stack([
        -2 * p.F * u * U - p.G1 * cross,
        -p.G2 * cross,
        np.zeros(np.broadcast_shapes(U.shape, u.shape))
    ], axis=-base.ndim)


class TangentPropagator:
    """Advance tangent vectors along with their base state

    The constant part of the linearized operator, ``A + f'(0)``, couples the three components of each mode
    and is integrated exactly through the 3x3 matrix exponential of every mode.
    The part depending on the base is evaluated at the start of each step and applied explicitly.
    When the reaction is switched off, only ``A`` remains, matching the linear flow of the base.

    Args:
        params: Rate constants
        basis: Transform plan for the domain
        config: Step size shared with the base integrator
    """

    def __init__(self, params: OregonatorParams, basis: SineBasis, config: IntegratorConfig):
        self.params = params
        self.basis = basis
        self.config = config
        self.integrator = GalerkinIntegrator(params, basis, config)

        # One 3x3 block per mode: -lambda_j diag(d) + f'(0), or the diffusion alone when the reaction is off
        blocks = -basis.eigenvalues[..., None, None] * np.diag(params.diffusion)
        if config.reaction:
            blocks = blocks + linearization_at_zero(params)
        self.blocks = blocks
        self.propagators = expm(config.dt * blocks)

    def apply_propagators(self, frames: np.ndarray) -> np.ndarray:
        """Multiply the components of every mode of every frame by its propagator"""
        moved = np.moveaxis(frames, -self.basis.n - 1, -1)
        return np.moveaxis(np.einsum('...il,...l->...i', self.propagators, moved), -1, -self.basis.n - 1)

    def advance(self, base: np.ndarray, frames: np.ndarray, t: float, pinned: bool = False) -> tuple[np.ndarray, np.ndarray]:
        """Advance base coefficients and tangent frames by one step

        Args:
            base: Coefficients of the base. Shape: (3, *modes)
            frames: Coefficients of the tangents. Shape: (m, 3, *modes)
            t: Current time
            pinned: Whether to hold the base at zero
        Returns:
            New base and new frames
        """
        if pinned or not self.config.reaction:
            increment = frames
        else:
            base_values = self.basis.synthesize(base)
            forcing = quadratic_jacobian_apply(self.params, base_values, self.basis.synthesize(frames))
            increment = frames + self.config.dt * self.basis.analyze(forcing)
        new_frames = self.apply_propagators(increment)
        check_finite(new_frames, t + self.config.dt, self.config.blowup)

        new_base = base if pinned else self.integrator.advance(base, t)
        return new_base, new_frames


def evolve_tangent(bundle: TangentBundle, p: OregonatorParams, dom: DomainSpec, cfg: IntegratorConfig,
                   delta_t: float, propagator: TangentPropagator | None = None) -> TangentBundle:
    """Advance a bundle and its base state over an interval

    Args:
        bundle: Base state and tangent frame
        p: Rate constants
        dom: Domain and resolution
        cfg: Integrator settings
        delta_t: Length of the interval, rounded to a whole number of steps
        propagator: Precomputed propagator for these settings
    Returns:
        Bundle at the end of the interval. ``elapsed`` grows by the interval and ``log_growth`` is carried over unchanged
    Raises:
        NonFiniteState: If the base or tangents blow up
    """
    propagator = TangentPropagator(p, SineBasis(dom), cfg) if propagator is None else propagator
    base, frames, t = bundle.base.coeffs, bundle.frames, bundle.base.t
    n_steps = int(round(delta_t / cfg.dt))
    for _ in range(n_steps):
        base, frames = propagator.advance(base, frames, t, bundle.pinned)
        t += cfg.dt
    return TangentBundle(SpectralState(base, t), frames, bundle.log_growth.copy(), bundle.elapsed + n_steps * cfg.dt, bundle.pinned)


def gram_schmidt(frames: np.ndarray, rank_tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Modified Gram-Schmidt in the L^2 inner product of coefficient triples

    Args:
        frames: Tangent vectors. Shape: (m, 3, *modes)
        rank_tol: Relative size below which a remaining norm counts as dependence
    Returns:
        - Orthonormal frames, same shape
        - Norm of each direction after removing its projections on the previous ones (the diagonal of R)
    Raises:
        RankDeficient: If a direction is dependent on the previous ones
    """
    flat = np.array(frames, dtype=float).reshape(len(frames), -1)
    growth = np.zeros(len(flat))
    for i in range(len(flat)):
        before = np.linalg.norm(flat[i])
        for j in range(i):
            flat[i] -= np.dot(flat[j], flat[i]) * flat[j]
        norm = np.linalg.norm(flat[i])
        if norm < max(1e-300, rank_tol * before):
            raise RankDeficient(i, float(norm))
        flat[i] /= norm
        growth[i] = norm
    return flat.reshape(np.shape(frames)), growth


def orthonormalize(bundle: TangentBundle, rank_tol: float = 1e-12) -> tuple[TangentBundle, np.ndarray]:
    """Orthonormalize the frame of a bundle and add the logarithms of the growth factors to its accumulators

    Args:
        bundle: Base state and tangent frame
        rank_tol: Relative size below which a remaining norm counts as dependence
    Returns:
        - Bundle with an orthonormal frame, the same base and ``elapsed``, and updated ``log_growth``
        - Growth factor of each direction (the diagonal of R)
    Raises:
        RankDeficient: If a direction is dependent on the previous ones
    """
    frames, growth = gram_schmidt(bundle.frames, rank_tol)
    return TangentBundle(bundle.base, frames, bundle.log_growth + np.log(growth), bundle.elapsed, bundle.pinned), growth


def trace_terms(bundle: TangentBundle, p: OregonatorParams, basis: SineBasis, reaction: bool = True) -> np.ndarray:
    """The quadratic forms <(A + f'(g)) phi_j, phi_j> of each direction of an orthonormal frame, or <A phi_j, phi_j> without reaction"""
    frames = bundle.frames
    diffusion = np.reshape(p.diffusion, (3,) + (1,) * basis.n)
    laplacian = -np.sum(diffusion * basis.eigenvalues * frames ** 2, axis=tuple(range(1, frames.ndim)))
    if not reaction:
        return laplacian

    values = basis.synthesize(frames)
    base_values = np.zeros(values.shape[1:]) if bundle.pinned else basis.synthesize(bundle.base.coeffs)
    reaction = basis.grid_integral(np.sum(jacobian_apply(p, base_values, values) * values, axis=1))
    return laplacian + reaction


def trace_qm(bundle: TangentBundle, p: OregonatorParams, dom: DomainSpec) -> float:
    """Trace of the linearized operator restricted to the span of an orthonormal frame

    Args:
        bundle: Base state and orthonormal frame
        p: Rate constants
        dom: Domain and resolution
    Returns:
        Sum over the frame of <(A + f'(g)) phi_j, phi_j>
    """
    return float(trace_terms(bundle, p, SineBasis(dom)).sum())
