"""Run the bound checks over a grid of rate constants"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from itertools import product
from multiprocessing import get_context
import logging

import pandas as pd

from oregonator.bounds.checks import verify_trajectory
from oregonator.model.constants import derive_constants
from oregonator.simulate.base import NonFiniteState
from oregonator.simulate.integrate import simulate
from oregonator.specify import RunConfig, ConfigParse, build_initial_state
from oregonator.tangent.base import NotConverged, RankDeficient
from oregonator.tangent.lyapunov import lyapunov_spectrum

logger = logging.getLogger(__name__)


def sweep_points(config: RunConfig) -> list[dict[str, float]]:
    """Cartesian product of the values listed for each swept parameter

    Args:
        config: Configuration with a nonempty ``sweep`` section
    Returns:
        Parameter changes for each point, in the order of the product
    """
    if len(config.sweep) == 0:
        raise ConfigParse('sweep', 'no parameters to sweep over')
    names = list(config.sweep)
    return [dict(zip(names, values)) for values in product(*config.sweep.values())]


def evaluate_point(config: RunConfig, changes: dict[str, float]) -> dict[str, object]:
    """Check the bounds and estimate m* at one point of the grid

    Numerical failures are recorded in the ``error`` column rather than raised
    so that one point cannot stop the sweep.

    Args:
        config: Base configuration
        changes: Rate constants to replace
    Returns:
        Summary row: the changes, K1, entry time, violation count, m* and any error
    """
    row: dict[str, object] = dict(changes)
    try:
        point = replace(config, params=config.params.replace(**changes))
        consts = derive_constants(point.params, point.domain, point.embedding)
        row['K1'] = consts.K1
        row['dim_bound_m'] = consts.dim_bound_m

        traj = simulate(build_initial_state(point), point.params, point.domain, point.integrator,
                        point.run.horizon, point.run.cadence)
        report = verify_trajectory(traj, point.params, point.domain, point.embedding, point.integrator,
                                   point.verify.rel_slack, point.verify.dt_allowance, point.verify.l6_corrected)
        row['entry_time'] = report.entry_time
        row['violations'] = len(report.violations)

        dim = point.dimension
        try:
            spectrum = lyapunov_spectrum(traj.final, point.params, point.domain, point.integrator, dim.m_max, dim.horizon,
                                         dim.transient, dim.reorth_every, dim.windows, dim.drift_tol, seed=point.run.seed)
        except NotConverged as exc:
            spectrum = exc.report
            row['error'] = str(exc)
        row['m_star'] = spectrum.m_star
        row['mu_1'] = float(spectrum.exponents[0])
    except (NonFiniteState, RankDeficient, ValueError) as exc:
        logger.warning(f'Sweep point {changes} failed: {exc}')
        row['error'] = f'{type(exc).__name__}: {exc}'
    return row


def run_sweep(config: RunConfig, jobs: int = 1) -> pd.DataFrame:
    """Evaluate every point of the grid

    Args:
        config: Configuration with a ``sweep`` section
        jobs: Number of points evaluated concurrently
    Returns:
        One row per grid point, in the order of :meth:`sweep_points`
    """
    points = sweep_points(config)
    logger.info(f'Sweeping over {len(points)} points with {jobs} workers')
    if jobs == 1:
        rows = [evaluate_point(config, changes) for changes in points]
    else:
        with ProcessPoolExecutor(max_workers=jobs, mp_context=get_context('spawn')) as pool:
            rows = list(pool.map(evaluate_point, [config] * len(points), points))

    output = pd.DataFrame(rows)
    for column in ['K1', 'dim_bound_m', 'entry_time', 'violations', 'm_star', 'mu_1', 'error']:
        if column not in output.columns:
            output[column] = None
    return output
