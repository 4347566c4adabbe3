"""Data types for the linearized flow and the dimension estimates"""
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from oregonator.simulate.base import SpectralState


@dataclass
class RankDeficient(ArithmeticError):
    """A tangent direction became linearly dependent on the previous ones"""

    index: int = ...
    """Position of the direction in the frame, starting from zero"""
    growth: float = ...
    """Norm remaining after removing the projections on the previous directions"""

    def __str__(self):
        return f'Tangent direction {self.index} is dependent on the previous ones (remaining norm: {self.growth:.3g})'


@dataclass
class NotConverged(RuntimeError):
    """The Lyapunov exponents still drift between the last two accumulation windows"""

    drift: float = ...
    """Largest change of an exponent between the last two windows"""
    report: 'SpectrumEstimate' = field(default=None, repr=False)
    """Estimate computed despite the failure"""

    def __str__(self):
        return f'Lyapunov exponents drifted by {self.drift:.3g} between the last two windows'


@dataclass
class TangentBundle:
    """A base state with an ``m``-frame of tangent vectors advanced along with it"""

    base: SpectralState = ...
    """Point of the trajectory the tangents are linearized about"""
    frames: np.ndarray = field(default=None, repr=False)
    """Coefficients of the tangent vectors. Shape: (m, 3, *coefficient_shape)"""
    log_growth: np.ndarray = field(default=None, repr=False)
    """Accumulated logarithm of the growth of each direction, added to by :func:`~oregonator.tangent.variational.orthonormalize`"""
    elapsed: float = 0.
    """Time over which ``log_growth`` was accumulated"""
    pinned: bool = False
    """Whether the base is held fixed at zero rather than advanced"""

    def __post_init__(self):
        self.frames = np.asarray(self.frames, dtype=float)
        if self.log_growth is None:
            self.log_growth = np.zeros(len(self.frames))

    @property
    def m(self) -> int:
        """Number of tangent directions"""
        return len(self.frames)


@dataclass
class SpectrumEstimate:
    """Lyapunov exponents and trace averages from one Benettin run"""

    exponents: np.ndarray = ...
    """Estimated exponents, largest first"""
    trace_average: np.ndarray = ...
    """Time average of the trace of the linearized operator on the leading k directions, for k=1..m"""
    window_exponents: np.ndarray = field(default=None, repr=False)
    """Exponents estimated from each accumulation window. Shape: (windows, m)"""
    drift: float = 0.
    """Largest change of an exponent between the last two windows"""

    @property
    def q(self) -> np.ndarray:
        """Partial sums of the exponents, q_k = mu_1 + ... + mu_k"""
        return np.cumsum(self.exponents)

    @property
    def m_star(self) -> int | None:
        """Smallest k with q_k < 0, if any"""
        return least_negative(self.q)


def least_negative(q: np.ndarray) -> int | None:
    """One-based position of the first negative entry, or ``None``"""
    negative = np.flatnonzero(np.asarray(q) < 0)
    return int(negative[0]) + 1 if len(negative) > 0 else None


@dataclass
class DimensionReport:
    """Numerical dimension estimates next to the certificate computed from the constants"""

    spectrum: SpectrumEstimate = ...
    """Exponents from the primary run"""
    sampled_q: np.ndarray = ...
    """Largest time-averaged trace on k directions over all sampled base points and frames, for k=1..m"""
    kaplan_yorke: float = ...
    """Kaplan-Yorke dimension of the exponents"""
    m_star: int | None = ...
    """Least k with sampled q_k < 0"""
    dim_bound_m: int = ...
    """Dimension bound certified by the trace estimate"""
    fractal_bound: float | None = None
    """Bound on the fractal dimension from the sampled q_k, evaluated at m_star"""
    samples: int = 0
    """Number of (base point, frame) combinations sampled"""
    gamma_margin: float | None = None
    """Largest observed dGamma/dt - rho Gamma over all pairs"""
    gamma_passed: bool | None = None
    """Whether the norm-quotient growth certificate held"""

    @property
    def certified(self) -> bool:
        """Whether the numerical m* does not exceed the certified bound"""
        return self.m_star is not None and self.m_star <= self.dim_bound_m

    def to_frame(self) -> pd.DataFrame:
        """One row per direction count: m, sampled q_m, partial sum of exponents, mu_m"""
        m = np.arange(1, len(self.sampled_q) + 1)
        return pd.DataFrame({
            'm': m,
            'q_m': self.sampled_q,
            'q_m_exponents': self.spectrum.q,
            'mu_m': self.spectrum.exponents
        })
