"""Parameters of the diffusive Oregonator system, the box domain, and the embedding constants"""
from dataclasses import dataclass, field, fields, asdict
from math import pi, prod
import logging

logger = logging.getLogger(__name__)


@dataclass
class NonPositiveParameter(ValueError):
    """A constant which must be strictly positive was not"""

    name: str = ...
    """Name of the offending field"""
    value: float = ...
    """Value provided for it"""

    def __str__(self):
        return f'Parameter {self.name} must be positive. Got {self.value}'


@dataclass(frozen=True)
class OregonatorParams:
    """Rate and diffusion constants of the dimensionless diffusive Oregonator system

    .. math::

        u_t = d_1 \\Delta u + a_1 u + b_1 v - F u^2 - G_1 u v

        v_t = d_2 \\Delta v - b_2 v + c_2 w - G_2 u v

        w_t = d_3 \\Delta w + a_3 u - c_3 w
    """

    # Diffusion
    d1: float = 1.
    """Diffusion coefficient of u"""
    d2: float = 1.
    """Diffusion coefficient of v"""
    d3: float = 1.
    """Diffusion coefficient of w"""

    # Linear rates
    a1: float = 1.
    """Autocatalytic growth rate of u"""
    b1: float = 1.
    """Production of u from v"""
    b2: float = 1.
    """Decay rate of v"""
    c2: float = 1.
    """Production of v from w"""
    a3: float = 1.
    """Production of w from u"""
    c3: float = 1.
    """Decay rate of w"""

    # Quadratic rates
    F: float = 1.
    """Rate of the u^2 disproportionation"""
    G1: float = 1.
    """Rate at which the uv reaction consumes u"""
    G2: float = 1.
    """Rate at which the uv reaction consumes v"""

    @property
    def diffusion(self) -> tuple[float, float, float]:
        """Diffusion coefficients of (u, v, w)"""
        return self.d1, self.d2, self.d3

    @property
    def d0(self) -> float:
        """Smallest diffusion coefficient"""
        return min(self.diffusion)

    @property
    def M2(self) -> float:
        """Weight of ||w||^2 in the rescaled energy, c_2^2 / (b_2 c_3)"""
        return self.c2 ** 2 / (self.b2 * self.c3)

    def replace(self, **changes) -> 'OregonatorParams':
        """Make a copy with some fields changed"""
        return OregonatorParams(**{**asdict(self), **changes})


PARAM_NAMES: tuple[str, ...] = tuple(f.name for f in fields(OregonatorParams))
"""Names of the rate constants, in the order of the dataclass"""


def validate_params(p: OregonatorParams):
    """Ensure every constant of the system is strictly positive

    Args:
        p: Parameters to check
    Raises:
        NonPositiveParameter: Naming the first non-positive field
    """
    for name in PARAM_NAMES:
        value = getattr(p, name)
        if not value > 0:
            raise NonPositiveParameter(name, value)


@dataclass(frozen=True)
class DomainSpec:
    """An interval (n=1) or rectangle (n=2) with homogeneous Dirichlet boundaries

    Args:
        lengths: Side length of each axis. One entry per spatial dimension
        modes: Number of sine modes retained per axis
        grid_points: Number of interior grid points per axis used for pseudospectral products.
            Defaults to twice the number of modes
    """

    lengths: tuple[float, ...] = (1.,)
    modes: int = 128
    grid_points: int | None = None

    def __post_init__(self):
        object.__setattr__(self, 'lengths', tuple(float(x) for x in self.lengths))
        if self.grid_points is None:
            object.__setattr__(self, 'grid_points', 2 * self.modes)

        if len(self.lengths) not in (1, 2):
            raise ValueError(f'Only 1D and 2D boxes are supported. Got {len(self.lengths)} side lengths')
        for i, length in enumerate(self.lengths):
            if not length > 0:
                raise NonPositiveParameter(f'L{i + 1}', length)
        if self.modes < 1:
            raise NonPositiveParameter('modes', self.modes)
        if 3 * self.modes >= 2 * (self.grid_points + 1):
            raise ValueError(f'{self.grid_points} grid points cannot dealias products of {self.modes} modes. '
                             f'Need at least {(3 * self.modes) // 2} points')

    @property
    def n(self) -> int:
        """Spatial dimension"""
        return len(self.lengths)

    @property
    def volume(self) -> float:
        """Measure of the domain, |Omega|"""
        return prod(self.lengths)

    @property
    def gamma(self) -> float:
        """Poincare constant: the smallest eigenvalue of the Dirichlet Laplacian"""
        return poincare_gamma(self)

    @property
    def coefficient_shape(self) -> tuple[int, ...]:
        """Shape of the coefficient array of one scalar field"""
        return (self.modes,) * self.n

    @property
    def grid_shape(self) -> tuple[int, ...]:
        """Shape of the grid-value array of one scalar field"""
        return (self.grid_points,) * self.n

    @property
    def cell_volume(self) -> float:
        """Quadrature weight of a single grid point"""
        return prod(length / (self.grid_points + 1) for length in self.lengths)

    def with_modes(self, modes: int) -> 'DomainSpec':
        """Make a copy at a different resolution, keeping the grid-to-mode ratio"""
        ratio = self.grid_points / self.modes
        return DomainSpec(self.lengths, modes, int(round(ratio * modes)))


def poincare_gamma(dom: DomainSpec) -> float:
    """Smallest Dirichlet eigenvalue of -Laplacian on a box, pi^2 * sum_i 1/L_i^2

    Args:
        dom: Domain description
    Returns:
        Poincare constant
    """
    return pi ** 2 * sum(1. / length ** 2 for length in dom.lengths)


@dataclass(frozen=True)
class EmbeddingConstants:
    """Constants of functional inequalities which the a-priori bounds are parameterized by

    None of these has a constructive value. They default to 1 and are treated as inputs.
    """

    eta: float = 1.
    """Constant of the Sobolev embedding ||phi||_{L^4} <= eta ||grad phi||"""
    gn_C: float = 1.
    """Constant of the Gagliardo-Nirenberg interpolation ||phi||_{L^4} <= C ||grad phi||^{n/4} ||phi||^{1-n/4}"""
    lt_Psi: float = 1.
    """Constant of the Sobolev-Lieb-Thirring inequality for orthonormal families"""
    reg_C2: float = 1.
    """Constant of the L^2 -> L^infinity smoothing of the diffusion semigroup"""
    corrected_poincare_direction: bool = True
    """Whether the norm-quotient rate divides (rather than multiplies) the linear group by gamma"""
    N0: float | None = field(default=None)
    """Holder constant of the semiflow in time. Recorded only"""
    N1: float | None = field(default=None)
    """Lipschitz constant of the semiflow. Recorded only"""

    def __post_init__(self):
        for name in ['eta', 'gn_C', 'lt_Psi', 'reg_C2']:
            value = getattr(self, name)
            if not value > 0:
                raise NonPositiveParameter(name, value)
