"""Interface which runs the simulator and the certificate checks from the command line"""
from argparse import ArgumentParser, Namespace
from contextlib import contextmanager
from dataclasses import fields
from pathlib import Path
import logging
import sys

import numpy as np
import pandas as pd
from tabulate import tabulate

from oregonator import __version__
from oregonator.bounds.checks import verify_trajectory, first_permanent_entry
from oregonator.bounds.norms import l2_energy_series
from oregonator.model.constants import derive_constants
from oregonator.model.params import NonPositiveParameter
from oregonator.reporting.manifest import RunManifest
from oregonator.reporting.markdown import MarkdownReporter
from oregonator.simulate.base import NonFiniteState
from oregonator.simulate.integrate import simulate
from oregonator.specify import RunConfig, ConfigParse, load_config, apply_overrides, build_initial_state
from oregonator.sweep import run_sweep
from oregonator.tangent.base import DimensionReport, NotConverged, RankDeficient, SpectrumEstimate, least_negative
from oregonator.tangent.lyapunov import lyapunov_spectrum, kaplan_yorke, fractal_dimension_bound, sampled_trace_sup
from oregonator.tangent.quotient import run_gamma_pairs
from oregonator.utils.conversions import write_csv, write_coefficients

logger = logging.getLogger(__name__)

_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

EXIT_CODES = {'passed': 0, 'violated': 1, 'config': 2, 'failed': 3}
"""Exit code for each outcome of a command"""


@contextmanager
def _log_to_file(run_dir: Path):
    """Copy the package log into the run directory while a command runs"""
    handler = logging.FileHandler(run_dir / 'run.log', mode='w')
    handler.setFormatter(logging.Formatter(_FORMAT))
    package_logger = logging.getLogger('oregonator')
    package_logger.addHandler(handler)
    try:
        yield
    finally:
        package_logger.removeHandler(handler)
        handler.close()


def _describe_failure(exc: Exception) -> dict[str, object]:
    """Render a numerical failure for the manifest"""
    output = {'error': type(exc).__name__, 'message': str(exc)}
    for f in fields(exc):
        value = getattr(exc, f.name)
        if isinstance(value, (int, float, str)):
            output[f.name] = value
    return output


def run_constants(config: RunConfig, run_dir: Path, written: list[Path]) -> str:
    """Print the derived constants and save them as CSV"""
    consts = derive_constants(config.params, config.domain, config.embedding)
    table = pd.DataFrame(consts.table())
    print(tabulate(table, headers='keys', showindex=False, floatfmt='.8g'))
    written.append(write_csv(table, run_dir / 'constants.csv'))
    return 'passed'


def run_simulate(config: RunConfig, run_dir: Path, written: list[Path]) -> str:
    """Integrate from the configured initial state and save the trajectory"""
    g0 = build_initial_state(config)
    traj = simulate(g0, config.params, config.domain, config.integrator, config.run.horizon, config.run.cadence, progress=True)
    written.append(write_csv(traj.to_frame(), run_dir / 'trajectory.csv'))
    if config.run.dump_coefficients:
        written.append(write_coefficients(traj.coeffs, run_dir / 'coefficients.bin'))
    return 'passed'


def run_verify(config: RunConfig, run_dir: Path, written: list[Path]) -> str:
    """Check every bound along one trajectory per member of the ensemble"""
    summary, violations = [], []
    for member in range(config.verify.ensemble):
        seed = config.run.seed + member
        logger.info(f'Checking member {member} of the ensemble, seed={seed}')
        g0 = build_initial_state(config, seed)
        traj = simulate(g0, config.params, config.domain, config.integrator, config.run.horizon, config.run.cadence, progress=True)
        report = verify_trajectory(traj, config.params, config.domain, config.embedding, config.integrator,
                                   config.verify.rel_slack, config.verify.dt_allowance, config.verify.l6_corrected)

        written.append(write_csv(report.samples, run_dir / f'bounds-{member:03d}.csv'))
        written.append(write_csv(report.summary(), run_dir / f'checks-{member:03d}.csv'))
        violations.extend({'member': member, 'check': v.check, 't': v.t, 'measured': v.measured,
                           'bound': v.bound, 'slack': v.slack, 'excess': v.excess} for v in report.violations)
        summary.append({
            'member': member,
            'seed': seed,
            'E_w_initial': float(report.samples['E_w'].iloc[0]),
            'E_w_final': float(report.samples['E_w'].iloc[-1]),
            'entry_time': report.entry_time,
            'entry_time_E': report.entry_time_E,
            'holder_exponent': report.holder_exponent,
            'violations': len(report.violations),
            'passed': report.passed
        })

    written.append(write_csv(pd.DataFrame(summary), run_dir / 'summary.csv'))
    columns = ['member', 'check', 't', 'measured', 'bound', 'slack', 'excess']
    written.append(write_csv(pd.DataFrame(violations, columns=columns), run_dir / 'violations.csv'))
    return 'violated' if len(violations) > 0 else 'passed'


def _write_dimension(report: DimensionReport, run_dir: Path, written: list[Path]):
    """Save the q_m table and the scalar estimates of a dimension run"""
    written.append(write_csv(report.to_frame(), run_dir / 'dimension.csv'))
    windows = pd.DataFrame(report.spectrum.window_exponents, columns=[f'mu_{i + 1}' for i in range(len(report.spectrum.exponents))])
    windows.insert(0, 'window', np.arange(len(windows)))
    written.append(write_csv(windows, run_dir / 'exponent-windows.csv'))
    written.append(write_csv(pd.DataFrame([
        {'name': 'kaplan_yorke', 'value': report.kaplan_yorke},
        {'name': 'm_star', 'value': report.m_star},
        {'name': 'dim_bound_m', 'value': report.dim_bound_m},
        {'name': 'fractal_bound', 'value': report.fractal_bound},
        {'name': 'samples', 'value': report.samples},
        {'name': 'drift', 'value': report.spectrum.drift},
        {'name': 'gamma_margin', 'value': report.gamma_margin},
        {'name': 'gamma_passed', 'value': report.gamma_passed},
        {'name': 'certified', 'value': report.certified},
    ]), run_dir / 'dimension-summary.csv'))


def run_dimension(config: RunConfig, run_dir: Path, written: list[Path]) -> str:
    """Estimate Lyapunov exponents and traces, and check the norm-quotient certificate"""
    p, dom, cfg, dim = config.params, config.domain, config.integrator, config.dimension
    n_dof = 3 * dom.modes ** dom.n
    if not 1 <= dim.m_max <= n_dof:
        raise ConfigParse('dimension.m_max', f'must be between 1 and {n_dof}, three times the retained modes')
    consts = derive_constants(p, dom, config.embedding)

    # Produce the attractor samples the estimates are taken from
    traj = simulate(build_initial_state(config), p, dom, cfg, config.run.horizon, config.run.cadence, progress=True)
    entry_time = first_permanent_entry(traj.times, l2_energy_series(traj.coeffs, p, dom.n), consts.K1)
    if entry_time is None:
        logger.warning('Trajectory never entered the absorbing ball. Sampling from its second half')
        entry_time = traj.times[-1] / 2
    post_entry = traj.segment(entry_time)
    logger.info(f'Sampling base points from {len(post_entry)} samples after t={entry_time:.4g}')

    def _report(spectrum: SpectrumEstimate, sampled_q: np.ndarray, samples: int) -> DimensionReport:
        m_star = least_negative(sampled_q)
        return DimensionReport(
            spectrum=spectrum,
            sampled_q=sampled_q,
            kaplan_yorke=kaplan_yorke(spectrum.exponents),
            m_star=m_star,
            dim_bound_m=consts.dim_bound_m,
            fractal_bound=fractal_dimension_bound(sampled_q, m_star) if m_star is not None else None,
            samples=samples
        )

    try:
        spectrum = lyapunov_spectrum(post_entry.final, p, dom, cfg, dim.m_max, dim.horizon, dim.transient, dim.reorth_every,
                                     dim.windows, dim.drift_tol, dim.pinned_base, seed=config.run.seed, progress=True)
    except NotConverged as exc:
        _write_dimension(_report(exc.report, exc.report.trace_average, 1), run_dir, written)
        raise

    if dim.pinned_base:
        report = _report(spectrum, spectrum.trace_average, 1)
    else:
        sampled_q, count = sampled_trace_sup(post_entry, p, dom, cfg, dim.m_max, dim.horizon, dim.n_bases, dim.n_frames,
                                             dim.reorth_every, seed=config.run.seed)
        report = _report(spectrum, sampled_q, count)

        # Certificate on the growth of the norm quotient
        pairs = run_gamma_pairs(post_entry, p, dom, cfg, consts, dim.pairs, dim.pair_horizon, dim.pair_offset,
                                config.run.cadence, config.verify.rel_slack, seed=config.run.seed)
        report.gamma_margin = max(r.details['margin'] for r in pairs)
        report.gamma_passed = all(r.passed for r in pairs)
        written.append(write_csv(pd.DataFrame([{
            'pair': i,
            'R_measured': r.details['R_measured'],
            'rho': r.details['rho'],
            'margin': r.details['margin'],
            'gamma_min': r.details['gamma_min'],
            'gamma_max': r.measured_sup,
            'violations': len(r.violations)
        } for i, r in enumerate(pairs)]), run_dir / 'gamma-pairs.csv'))

    _write_dimension(report, run_dir, written)
    logger.info(f'Numerical m*={report.m_star}, certified bound m={report.dim_bound_m}, Kaplan-Yorke {report.kaplan_yorke:.4g}')
    return 'passed' if report.certified and report.gamma_passed is not False else 'violated'


def run_parameter_sweep(config: RunConfig, run_dir: Path, written: list[Path], jobs: int = 1) -> str:
    """Check the bounds at every point of the parameter grid"""
    rows = run_sweep(config, jobs)
    written.append(write_csv(rows, run_dir / 'sweep.csv'))
    failed = rows['error'].notna().any() or (rows['violations'].fillna(0) > 0).any()
    return 'violated' if failed else 'passed'


def main(args: list[str] | None = None) -> int:
    """Main function for the CLI"""

    # Make the parser and parse
    parser = ArgumentParser()
    parser.add_argument('--version', action='store_true', help='Print the version and return')

    subparsers = parser.add_subparsers(dest='command')
    helps = {
        'constants': 'Print the constants of the estimates',
        'simulate': 'Integrate a trajectory and save it',
        'verify': 'Integrate and check every bound along the trajectory',
        'dimension': 'Estimate Lyapunov exponents and traces, and compare to the dimension bound',
        'sweep': 'Check the bounds over a grid of rate constants',
    }
    for name, description in helps.items():
        subparser = subparsers.add_parser(name, help=description)
        subparser.add_argument('--config', required=True, help='Path to the YAML run configuration')
        subparser.add_argument('--out', default=None, help='Directory for the outputs. Default: runs/<command>-<config digest>')
        subparser.add_argument('--seed', default=None, type=int, help='Seed of the random initial data')
        subparser.add_argument('--dt', default=None, type=float, help='Step size')
        subparser.add_argument('--horizon', default=None, type=float, help='Length of the trajectory')
        subparser.add_argument('--modes', default=None, type=int, help='Number of modes per axis')
        subparser.add_argument('--corrected-gamma', default=None, choices=['on', 'off'],
                               help='Whether the norm-quotient rate divides the linear group by gamma')
        if name == 'dimension':
            subparser.add_argument('--m-max', default=None, type=int, help='Number of tangent directions')
        if name == 'sweep':
            subparser.add_argument('--jobs', default=1, type=int, help='Number of grid points evaluated at once')

    args = parser.parse_args(args)

    # Print the version
    if args.version:
        print(f'Running oregonator version: {__version__}')
        return 0
    if args.command is None:
        parser.print_help()
        return EXIT_CODES['config']

    # Turn on logging
    package_logger = logging.getLogger('oregonator')
    handler = logging.StreamHandler(sys.stdout)
    handler.setFormatter(logging.Formatter(_FORMAT))
    package_logger.addHandler(handler)
    package_logger.setLevel(logging.INFO)
    package_logger.info(f'Starting oregonator v{__version__}')
    try:
        return _run_command(args)
    finally:
        package_logger.removeHandler(handler)


def _run_command(args: Namespace) -> int:
    """Load the configuration, run one command in its run directory and write the manifest"""
    try:
        config = load_config(args.config)
        config = apply_overrides(
            config, seed=args.seed, dt=args.dt, horizon=args.horizon, modes=args.modes,
            m_max=getattr(args, 'm_max', None),
            corrected_gamma=None if args.corrected_gamma is None else args.corrected_gamma == 'on'
        )
    except (ConfigParse, NonPositiveParameter, ValueError) as exc:
        logger.error(f'Could not load the configuration: {exc}')
        return EXIT_CODES['config']

    run_dir = Path(args.out) if args.out is not None else Path('runs') / f'{args.command}-{config.digest()}'
    run_dir.mkdir(parents=True, exist_ok=True)
    logger.info(f'Will save results into {run_dir}')

    manifest = RunManifest(args.command, config.to_dict())
    written: list[Path] = []
    failure = None
    with _log_to_file(run_dir):
        try:
            if args.command == 'constants':
                status = run_constants(config, run_dir, written)
            elif args.command == 'simulate':
                status = run_simulate(config, run_dir, written)
            elif args.command == 'verify':
                status = run_verify(config, run_dir, written)
            elif args.command == 'dimension':
                status = run_dimension(config, run_dir, written)
            elif args.command == 'sweep':
                status = run_parameter_sweep(config, run_dir, written, args.jobs)
            else:
                raise NotImplementedError()
        except (ConfigParse, NonPositiveParameter) as exc:
            logger.error(f'Invalid configuration: {exc}')
            status, failure = 'config', _describe_failure(exc)
        except (NonFiniteState, NotConverged, RankDeficient) as exc:
            logger.error(f'Numerical failure: {exc}')
            status, failure = 'failed', _describe_failure(exc)

        manifest.finish(status, failure)
        written.append(MarkdownReporter().report(run_dir, manifest))
        for path in written:
            manifest.record(path, run_dir)
        manifest.write(run_dir)
    logger.info(f'Finished {args.command} with status {status}. Find run details in {run_dir.absolute()}')
    return EXIT_CODES[status]
