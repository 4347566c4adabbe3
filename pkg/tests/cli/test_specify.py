from dataclasses import replace

import numpy as np
from pytest import raises, mark

from oregonator.model.params import NonPositiveParameter
from oregonator.specify import ConfigParse, parse_config, load_config, apply_overrides, build_initial_state, RunConfig
from oregonator.spectral import SineBasis
from oregonator.sweep import sweep_points


def test_parse(base_config):
    config = parse_config(base_config)
    assert isinstance(config, RunConfig)
    assert config.domain.lengths == (1.,)
    assert config.domain.modes == 32
    assert config.integrator.scheme == 'imex-euler'
    assert config.dimension.m_max == 2
    assert config.verify.l6_corrected

    # Integers are accepted where numbers are expected
    base_config['params']['F'] = 2
    assert parse_config(base_config).params.F == 2.


@mark.parametrize('section,key,value,path', [
    ('params', 'G1', 'one', 'params.G1'),
    ('run', 'seed', 0.5, 'run.seed'),
    ('run', 'initial', 'uniform', 'run.initial'),
    ('verify', 'dt_allowance', 'yes', 'verify.dt_allowance'),
    ('integrator', 'order', 2, 'integrator.order'),
    ('domain', 'L3', 1., 'domain.L3'),
])
def test_bad_entries(base_config, section, key, value, path):
    base_config[section][key] = value
    with raises(ConfigParse) as exc:
        parse_config(base_config)
    assert exc.value.key == path
    assert path in str(exc.value)


def test_missing(base_config):
    del base_config['domain']['L1']
    with raises(ConfigParse) as exc:
        parse_config(base_config)
    assert exc.value.key == 'domain.L1'

    with raises(ConfigParse) as exc:
        parse_config({'params': {}, 'domain': {'L1': 1.}})
    assert exc.value.key == 'params.d1'

    with raises(ConfigParse):
        parse_config({'params': {}, 'domain': {'L1': 1.}, 'extra': {}})
    with raises(ConfigParse):
        parse_config([1, 2])


def test_cross_section(base_config):
    base_config['dimension']['horizon'] = 1e-4
    with raises(ConfigParse) as exc:
        parse_config(base_config)
    assert exc.value.key == 'dimension.horizon'

    # Overrides are checked against the rest of the configuration too
    base_config['dimension']['horizon'] = 0.5
    config = parse_config(base_config)
    with raises(ConfigParse) as exc:
        apply_overrides(config, dt=1.)
    assert exc.value.key == 'dimension.horizon'

    base_config['domain']['modes'] = 4
    with raises(ConfigParse) as exc:
        parse_config(base_config)
    assert exc.value.key == 'run.initial_modes'
    base_config['run']['initial'] = 'zero'
    assert parse_config(base_config).domain.modes == 4


def test_nonpositive(base_config):
    base_config['params']['c3'] = 0.
    with raises(NonPositiveParameter) as exc:
        parse_config(base_config)
    assert exc.value.name == 'c3'


def test_load(base_config, write_config, tmp_path):
    config = load_config(write_config(base_config))
    assert config == parse_config(base_config)

    bad = tmp_path / 'bad.yml'
    bad.write_text('params: [1, 2\n')
    with raises(ConfigParse):
        load_config(bad)
    with raises(ConfigParse):
        load_config(tmp_path / 'missing.yml')


def test_digest(base_config):
    config = parse_config(base_config)
    assert len(config.digest()) == 8
    assert config.digest() == parse_config(base_config).digest()
    assert apply_overrides(config, seed=4).digest() != config.digest()

    content = config.to_dict()
    assert content['domain'] == {'lengths': [1.], 'modes': 32, 'grid_points': config.domain.grid_points}
    assert content['params']['d1'] == 1.


def test_overrides(base_config):
    config = parse_config(base_config)
    assert apply_overrides(config) == config

    changed = apply_overrides(config, seed=3, dt=1e-2, horizon=5., modes=16, m_max=3, corrected_gamma=False)
    assert changed.run.seed == 3
    assert changed.integrator.dt == 1e-2
    assert changed.run.horizon == 5.
    assert changed.domain.modes == 16
    assert changed.domain.grid_points < config.domain.grid_points
    assert changed.dimension.m_max == 3
    assert not changed.embedding.corrected_poincare_direction


def test_initial_state(base_config):
    config = parse_config(base_config)
    state = build_initial_state(config)
    assert np.array_equal(state.coeffs, build_initial_state(config).coeffs)
    assert not np.array_equal(state.coeffs, build_initial_state(config, seed=1).coeffs)
    assert SineBasis(config.domain).synthesize(state.coeffs).min() >= -1e-12

    zero = build_initial_state(replace(config, run=replace(config.run, initial='zero')))
    assert not zero.coeffs.any()


def test_sweep_grid(base_config):
    base_config['sweep'] = {'F': [1., 2.], 'b2': [0.5, 1., 2.]}
    config = parse_config(base_config)
    points = sweep_points(config)
    assert len(points) == 6
    assert points[0] == {'F': 1., 'b2': 0.5}
    assert points[-1] == {'F': 2., 'b2': 2.}

    with raises(ConfigParse):
        sweep_points(replace(config, sweep={}))

    base_config['sweep'] = {'H': [1.]}
    with raises(ConfigParse) as exc:
        parse_config(base_config)
    assert exc.value.key == 'sweep.H'

    base_config['sweep'] = {'F': []}
    with raises(ConfigParse):
        parse_config(base_config)
