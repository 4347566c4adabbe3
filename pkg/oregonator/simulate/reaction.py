"""The reaction map f and the rescaling of the w component"""
import numpy as np

from oregonator.model.params import OregonatorParams


def reaction(p: OregonatorParams, u: np.ndarray, v: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Evaluate the reaction terms pointwise

    Args:
        p: Rate constants
        u, v, w: Concentrations. Any shape, provided they broadcast
    Returns:
        The three rows of f(u, v, w)
    """
    uv = u * v
    f1 = p.a1 * u + p.b1 * v - p.F * u ** 2 - p.G1 * uv
    f2 = -p.b2 * v + p.c2 * w - p.G2 * uv
    f3 = p.a3 * u - p.c3 * w
    return f1, f2, f3


def reaction_values(p: OregonatorParams, values: np.ndarray) -> np.ndarray:
    """Evaluate the reaction terms on an array whose leading axis holds (u, v, w)"""
    return np.stack(reaction(p, values[0], values[1], values[2]))


def linearization_at_zero(p: OregonatorParams) -> np.ndarray:
    """The constant matrix f'(0) acting on (U, V, W)"""
    return np.array([
        [p.a1, p.b1, 0.],
        [0., -p.b2, p.c2],
        [p.a3, 0., -p.c3]
    ])


def rescale_w(p: OregonatorParams, w: np.ndarray | float) -> np.ndarray | float:
    """Change variables to W = (c2 / b2) w, in which the L^2 energy closes"""
    return p.c2 / p.b2 * w


def unscale_w(p: OregonatorParams, W: np.ndarray | float) -> np.ndarray | float:
    """Recover w from W = (c2 / b2) w"""
    return p.b2 / p.c2 * W
