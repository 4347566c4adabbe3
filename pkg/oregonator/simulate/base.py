"""Data types shared by the Galerkin integrators"""
from dataclasses import dataclass, field
from typing import Literal, get_args

import numpy as np
import pandas as pd

from oregonator.model.params import NonPositiveParameter

Scheme = Literal['imex-euler', 'imex-rk2']
"""Names of the available time-stepping schemes"""

SCHEMES: tuple[str, ...] = get_args(Scheme)

COMPONENTS = ('u', 'v', 'w')
"""Names of the three concentrations, in storage order"""


@dataclass
class NonFiniteState(ArithmeticError):
    """The state left the range where the integration is meaningful"""

    time: float = ...
    """Simulation time at which the failure was detected"""
    max_abs: float = ...
    """Largest magnitude found in the offending state"""

    def __str__(self):
        return f'State became non-finite or exceeded the blow-up threshold at t={self.time:.6g} (max |value|={self.max_abs:.3g})'


def check_finite(values: np.ndarray, time: float, threshold: float = 1e12) -> None:
    """Raise if any entry of an array is NaN, infinite or larger in magnitude than a threshold

    Args:
        values: Array to check
        time: Simulation time, recorded in the error
        threshold: Largest magnitude allowed
    Raises:
        NonFiniteState: If the check fails
    """
    max_abs = float(np.max(np.abs(values))) if values.size > 0 else 0.
    if not np.isfinite(max_abs) or max_abs > threshold:
        raise NonFiniteState(time, max_abs)


@dataclass
class SpectralState:
    """The triple (u, v, w) stored as sine coefficients"""

    coeffs: np.ndarray = field(repr=False)
    """Coefficients of each component. Shape: (3, *coefficient_shape)"""
    t: float = 0.
    """Nondimensional time"""

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.coeffs.shape[0] != 3:
            raise ValueError(f'Expected 3 components. Got an array of shape {self.coeffs.shape}')

    @property
    def u(self) -> np.ndarray:
        return self.coeffs[0]

    @property
    def v(self) -> np.ndarray:
        return self.coeffs[1]

    @property
    def w(self) -> np.ndarray:
        return self.coeffs[2]

    def copy(self) -> 'SpectralState':
        return SpectralState(self.coeffs.copy(), self.t)

    @classmethod
    def zeros(cls, coefficient_shape: tuple[int, ...], t: float = 0.) -> 'SpectralState':
        """Make the zero state"""
        return cls(np.zeros((3, *coefficient_shape)), t)


@dataclass(frozen=True)
class IntegratorConfig:
    """Settings for the time integrator"""

    dt: float = 1e-3
    """Step size"""
    scheme: Scheme = 'imex-euler'
    """Time-stepping scheme"""
    pos_tol: float = 1e-8
    """Tolerance below zero before a grid value counts as a positivity violation"""
    clip_negatives: bool = False
    """Whether to set negative grid values to zero after each step"""
    reaction: bool = True
    """Whether to include the reaction terms. Disabling them leaves pure diffusion"""
    blowup: float = 1e12
    """Largest magnitude of a grid value before the integration is aborted"""

    def __post_init__(self):
        if not self.dt > 0:
            raise NonPositiveParameter('dt', self.dt)
        if self.scheme not in SCHEMES:
            raise ValueError(f'Scheme must be one of {", ".join(SCHEMES)}. Got {self.scheme}')


@dataclass
class Trajectory:
    """States sampled at a regular cadence along one integration"""

    times: np.ndarray = field(repr=False)
    """Time of each sample. Shape: (count,)"""
    coeffs: np.ndarray = field(repr=False)
    """Coefficients of each sample. Shape: (count, 3, *coefficient_shape)"""
    min_values: np.ndarray = field(repr=False)
    """Smallest grid value over all three components at each sample"""
    clipped: int = 0
    """Number of grid values set to zero by clipping over the run which produced the samples"""

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> SpectralState:
        """The last sample"""
        return self.state(-1)

    def state(self, index: int) -> SpectralState:
        """Retrieve one sample as a state"""
        return SpectralState(self.coeffs[index].copy(), float(self.times[index]))

    def segment(self, start: float, end: float | None = None) -> 'Trajectory':
        """Subset of samples with ``start <= t <= end``, keeping the clipping count of the whole run"""
        mask = self.times >= start
        if end is not None:
            mask &= self.times <= end
        return Trajectory(self.times[mask], self.coeffs[mask], self.min_values[mask], clipped=self.clipped)

    def positivity_violations(self, pos_tol: float) -> np.ndarray:
        """Times of the samples whose smallest grid value is below ``-pos_tol``"""
        return self.times[self.min_values < -pos_tol]

    def to_frame(self) -> pd.DataFrame:
        """Summarize each sample: time, L^2 norm of each component and the smallest grid value"""
        axes = tuple(range(2, self.coeffs.ndim))
        norms = np.sqrt(np.sum(self.coeffs ** 2, axis=axes))
        output = pd.DataFrame({'t': self.times})
        for i, name in enumerate(COMPONENTS):
            output[f'{name}_l2'] = norms[:, i]
        output['min_value'] = self.min_values
        return output
