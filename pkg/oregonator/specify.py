"""Run configuration: parameters, domain, integrator and per-command options read from a YAML file"""
from dataclasses import dataclass, field, fields, asdict, replace, MISSING
from hashlib import sha512
from pathlib import Path
from typing import Any, Literal, get_args, get_origin
import json
import logging

import yaml

from oregonator.model.params import OregonatorParams, DomainSpec, EmbeddingConstants, NonPositiveParameter, PARAM_NAMES, validate_params
from oregonator.model.constants import derive_constants
from oregonator.simulate.base import IntegratorConfig, SpectralState
from oregonator.simulate.initialize import make_initial_state
from oregonator.spectral import SineBasis

logger = logging.getLogger(__name__)


@dataclass
class ConfigParse(ValueError):
    """The run configuration could not be understood"""

    key: str = ...
    """Dotted path of the offending entry"""
    reason: str = ...
    """What is wrong with it"""

    def __str__(self):
        return f'Configuration error at {self.key}: {self.reason}'


@dataclass(frozen=True)
class RunOptions:
    """Options for producing a trajectory"""

    horizon: float = 20.
    """Length of the integration"""
    cadence: float = 0.1
    """Time between stored samples"""
    seed: int = 0
    """Seed of the random initial data. Fully determines it"""
    initial_energy: float = 10.
    """Weighted L^2 energy of random initial data, in units of K1"""
    initial_modes: int = 4
    """Number of cosine modulations of random initial data"""
    initial: Literal['random', 'zero', 'negative'] = 'random'
    """Kind of initial data"""
    dump_coefficients: bool = False
    """Whether to write every sample's coefficients to a binary file"""


@dataclass(frozen=True)
class VerifyOptions:
    """Options for checking the estimates"""

    rel_slack: float = 1e-6
    """Relative slack of every bound"""
    dt_allowance: bool = True
    """Whether to add an allowance proportional to the step size"""
    ensemble: int = 1
    """Number of random initial fields to check"""
    l6_corrected: bool = True
    """Whether to use the corrected decay rate of the L^6 envelope"""


@dataclass(frozen=True)
class DimensionOptions:
    """Options for the Lyapunov exponents, trace sampling and norm-quotient pairs"""

    m_max: int = 4
    """Number of tangent directions"""
    reorth_every: int = 10
    """Steps between orthonormalizations"""
    horizon: float = 10.
    """Accumulation time of the exponents and of each trace sample"""
    transient: float = 2.
    """Time integrated before accumulation starts"""
    windows: int = 4
    """Number of windows used to judge convergence"""
    drift_tol: float = 0.05
    """Largest allowed change of an exponent between the last two windows"""
    n_bases: int = 10
    """Number of post-entry base points for the trace samples"""
    n_frames: int = 3
    """Number of random frames per base point"""
    pinned_base: bool = False
    """Hold the base at zero, leaving the linear flow"""
    pairs: int = 5
    """Number of trajectory pairs for the norm-quotient certificate"""
    pair_horizon: float = 5.
    """Length of each pair of trajectories"""
    pair_offset: float = 1e-3
    """Distance between the starting states of a pair"""


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce a run"""

    params: OregonatorParams = ...
    """Rate constants"""
    domain: DomainSpec = ...
    """Domain and resolution"""
    embedding: EmbeddingConstants = field(default_factory=EmbeddingConstants)
    """Constants of the functional inequalities"""
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    """Time stepping"""
    run: RunOptions = field(default_factory=RunOptions)
    """Trajectory options"""
    verify: VerifyOptions = field(default_factory=VerifyOptions)
    """Options of the bound checks"""
    dimension: DimensionOptions = field(default_factory=DimensionOptions)
    """Options of the dimension estimates"""
    sweep: dict[str, list[float]] = field(default_factory=dict)
    """Values of each parameter to sweep over"""

    def to_dict(self) -> dict[str, Any]:
        """Render as plain types, suitable for JSON"""
        output = asdict(self)
        output['domain'] = {'lengths': list(self.domain.lengths), 'modes': self.domain.modes, 'grid_points': self.domain.grid_points}
        return output

    def digest(self) -> str:
        """Short hash of the configuration, used to name run directories"""
        hasher = sha512()
        hasher.update(json.dumps(self.to_dict(), sort_keys=True).encode())
        return hasher.hexdigest()[:8]


def _coerce(key: str, value: Any, kind: Any) -> Any:
    """Check a value against the annotated type of a field"""
    if get_origin(kind) is Literal:
        if value not in get_args(kind):
            raise ConfigParse(key, f'must be one of {", ".join(map(str, get_args(kind)))}. Got {value!r}')
        return value
    if get_origin(kind) is not None:  # Unions with None
        if value is None:
            return None
        kind = next(k for k in get_args(kind) if k is not type(None))
    if kind is bool:
        if not isinstance(value, bool):
            raise ConfigParse(key, f'expected true or false. Got {value!r}')
    elif kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigParse(key, f'expected an integer. Got {value!r}')
    elif kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigParse(key, f'expected a number. Got {value!r}')
        value = float(value)
    elif kind is str:
        if not isinstance(value, str):
            raise ConfigParse(key, f'expected a string. Got {value!r}')
    return value


def _parse_section(name: str, section: Any, cls: type, required: bool = False) -> Any:
    """Build one option dataclass from a mapping, rejecting unknown keys"""
    if section is None:
        section = {}
    if not isinstance(section, dict):
        raise ConfigParse(name, 'expected a mapping')
    known = {f.name: f for f in fields(cls)}
    for key in section:
        if key not in known:
            raise ConfigParse(f'{name}.{key}', 'unknown key')
    kwargs = {}
    for key, f in known.items():
        if key in section:
            kwargs[key] = _coerce(f'{name}.{key}', section[key], f.type)
        elif required or (f.default is MISSING and f.default_factory is MISSING):
            raise ConfigParse(f'{name}.{key}', 'missing required key')
    try:
        return cls(**kwargs)
    except NonPositiveParameter:
        raise
    except ValueError as exc:
        raise ConfigParse(name, str(exc)) from exc


def _parse_domain(section: Any) -> DomainSpec:
    if not isinstance(section, dict):
        raise ConfigParse('domain', 'expected a mapping')
    allowed = {'L1', 'L2', 'modes', 'grid_points'}
    for key in section:
        if key not in allowed:
            raise ConfigParse(f'domain.{key}', 'unknown key')
    if 'L1' not in section:
        raise ConfigParse('domain.L1', 'missing required key')
    lengths = [_coerce('domain.L1', section['L1'], float)]
    if 'L2' in section:
        lengths.append(_coerce('domain.L2', section['L2'], float))
    modes = _coerce('domain.modes', section.get('modes', 128), int)
    grid_points = section.get('grid_points')
    if grid_points is not None:
        grid_points = _coerce('domain.grid_points', grid_points, int)
    return DomainSpec(tuple(lengths), modes, grid_points)


def _parse_sweep(section: Any) -> dict[str, list[float]]:
    if section is None:
        return {}
    if not isinstance(section, dict):
        raise ConfigParse('sweep', 'expected a mapping of parameter names to lists of values')
    output = {}
    for key, values in section.items():
        if key not in PARAM_NAMES:
            raise ConfigParse(f'sweep.{key}', f'not a rate constant. Choose from {", ".join(PARAM_NAMES)}')
        if not isinstance(values, list) or len(values) == 0:
            raise ConfigParse(f'sweep.{key}', 'expected a nonempty list of values')
        output[key] = [_coerce(f'sweep.{key}', v, float) for v in values]
    return output


_SECTIONS = ('params', 'domain', 'embedding', 'integrator', 'run', 'verify', 'dimension', 'sweep')


def parse_config(content: dict[str, Any]) -> RunConfig:
    """Build a run configuration from parsed YAML

    Args:
        content: Mapping of section name to section content
    Returns:
        Validated configuration
    Raises:
        ConfigParse: Naming the first offending key
    """
    if not isinstance(content, dict):
        raise ConfigParse('<root>', 'expected a mapping of sections')
    for key in content:
        if key not in _SECTIONS:
            raise ConfigParse(key, 'unknown section')
    if 'params' not in content:
        raise ConfigParse('params', 'missing required section')
    if 'domain' not in content:
        raise ConfigParse('domain', 'missing required section')

    try:
        domain = _parse_domain(content['domain'])
    except (ConfigParse, NonPositiveParameter):
        raise
    except ValueError as exc:
        raise ConfigParse('domain', str(exc)) from exc

    params = _parse_section('params', content['params'], OregonatorParams, required=True)
    validate_params(params)
    return check_consistency(RunConfig(
        params=params,
        domain=domain,
        embedding=_parse_section('embedding', content.get('embedding'), EmbeddingConstants),
        integrator=_parse_section('integrator', content.get('integrator'), IntegratorConfig),
        run=_parse_section('run', content.get('run'), RunOptions),
        verify=_parse_section('verify', content.get('verify'), VerifyOptions),
        dimension=_parse_section('dimension', content.get('dimension'), DimensionOptions),
        sweep=_parse_sweep(content.get('sweep')),
    ))


def check_consistency(config: RunConfig) -> RunConfig:
    """Check the constraints which involve more than one section

    Args:
        config: Configuration to check
    Returns:
        The same configuration
    Raises:
        ConfigParse: Naming the entry which conflicts with the rest
    """
    dt = config.integrator.dt
    if config.dimension.horizon < dt:
        raise ConfigParse('dimension.horizon', f'must cover at least one step of {dt}. Got {config.dimension.horizon}')
    if config.run.initial != 'zero' and config.run.initial_modes + 1 > config.domain.modes:
        raise ConfigParse('run.initial_modes', f'needs {config.run.initial_modes + 1} modes. The domain has {config.domain.modes}')
    return config


def load_config(path: Path | str) -> RunConfig:
    """Read a run configuration from a YAML file

    Args:
        path: Path to the file
    Returns:
        Validated configuration
    Raises:
        ConfigParse: If the file is missing, not valid YAML, or has a bad entry
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigParse(str(path), 'no such file')
    try:
        content = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ConfigParse(str(path), f'not valid YAML: {exc}') from exc
    config = parse_config(content)
    logger.info(f'Loaded configuration from {path}. Digest: {config.digest()}')
    return config


def apply_overrides(config: RunConfig, seed: int | None = None, dt: float | None = None, horizon: float | None = None,
                    modes: int | None = None, m_max: int | None = None, corrected_gamma: bool | None = None) -> RunConfig:
    """Replace configuration values with those given on the command line

    Args:
        config: Loaded configuration
        seed: Seed of the random initial data
        dt: Step size
        horizon: Length of the trajectory
        modes: Modes per axis. The grid keeps its ratio to the modes
        m_max: Number of tangent directions
        corrected_gamma: Whether the norm-quotient rate uses the corrected linear group
    Returns:
        Updated configuration
    Raises:
        ConfigParse: If the new values conflict with the rest of the configuration
    """
    if seed is not None:
        config = replace(config, run=replace(config.run, seed=seed))
    if dt is not None:
        config = replace(config, integrator=replace(config.integrator, dt=dt))
    if horizon is not None:
        config = replace(config, run=replace(config.run, horizon=horizon))
    if modes is not None:
        config = replace(config, domain=config.domain.with_modes(modes))
    if m_max is not None:
        config = replace(config, dimension=replace(config.dimension, m_max=m_max))
    if corrected_gamma is not None:
        config = replace(config, embedding=replace(config.embedding, corrected_poincare_direction=corrected_gamma))
    return check_consistency(config)


def build_initial_state(config: RunConfig, seed: int | None = None) -> SpectralState:
    """Make the initial state described by a configuration

    Random data are scaled to ``initial_energy`` times the absorbing radius K1.

    Args:
        config: Run configuration
        seed: Seed replacing the one in the configuration
    Returns:
        State at t=0
    """
    seed = config.run.seed if seed is None else seed
    consts = derive_constants(config.params, config.domain, config.embedding)
    energy = config.run.initial_energy * consts.K1
    return make_initial_state(config.run.initial, config.params, SineBasis(config.domain), seed, energy, config.run.initial_modes)
