from pathlib import Path
from typing import Callable

import yaml
from pytest import fixture


@fixture()
def base_config() -> dict:
    """Small all-ones problem which runs every command in seconds"""
    return {
        'params': {name: 1. for name in ['d1', 'd2', 'd3', 'a1', 'b1', 'b2', 'c2', 'a3', 'c3', 'F', 'G1', 'G2']},
        'domain': {'L1': 1., 'modes': 32},
        'integrator': {'dt': 1e-3},
        'run': {'horizon': 2., 'cadence': 0.1, 'seed': 0},
        'verify': {'ensemble': 1},
        'dimension': {'m_max': 2, 'horizon': 0.5, 'transient': 0.1, 'windows': 2, 'drift_tol': 10.,
                      'n_bases': 2, 'n_frames': 1, 'pairs': 1, 'pair_horizon': 0.2},
    }


@fixture()
def write_config(tmp_path) -> Callable[[dict], Path]:
    """Save a configuration to a YAML file in the temporary directory"""

    def _write(content: dict, name: str = 'config.yml') -> Path:
        path = tmp_path / name
        path.write_text(yaml.safe_dump(content))
        return path

    return _write
