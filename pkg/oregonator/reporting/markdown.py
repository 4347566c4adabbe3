"""Reporting functions which write a summary of a run to a markdown file in the run directory"""
from pathlib import Path
from typing import TextIO
import logging

import pandas as pd

from oregonator.reporting.base import BaseReporter
from oregonator.reporting.manifest import RunManifest

logger = logging.getLogger(__name__)

_SECTIONS = [
    ('constants.csv', 'Constants', 'Closed-form constants of the estimates and the formula behind each'),
    ('summary.csv', 'Verification Summary', 'Outcome of the checks for each initial field'),
    ('checks-*.csv', 'Bound Checks', 'Samples compared, largest measured value and violations of each check'),
    ('violations.csv', 'Violations', 'Every sample which exceeded its bound plus slack'),
    ('dimension-summary.csv', 'Dimension Estimates', 'Numerical m* next to the certified bound'),
    ('dimension.csv', 'Traces and Exponents', 'Largest sampled trace q_m and the Lyapunov exponents'),
    ('gamma-pairs.csv', 'Norm-Quotient Certificate', 'Growth of the norm quotient along pairs of nearby trajectories'),
    ('sweep.csv', 'Parameter Sweep', 'One row per point of the parameter grid'),
]


class MarkdownReporter(BaseReporter):
    """Write the tables of a run to a markdown file"""

    def __init__(self, max_rows: int = 50):
        self.max_rows = max_rows

    def report(self, run_dir: Path, manifest: RunManifest) -> Path:
        run_dir = Path(run_dir)
        path = run_dir / 'report.md'
        logger.info(f'Writing summary of {run_dir} to {path}')
        with path.open('w') as fo:
            print(f'# Run Report: {manifest.command}', file=fo)
            print(f'Version: {manifest.version}. Started: {manifest.started}', file=fo)
            if manifest.failure is not None:
                print('\n## Failure', file=fo)
                for key, value in manifest.failure.items():
                    print(f'- {key}: {value}', file=fo)

            self._write_trajectory(fo, run_dir)
            for pattern, title, description in _SECTIONS:
                for table_path in sorted(run_dir.glob(pattern)):
                    self._write_table(fo, table_path, title, description)
        return path

    def _write_table(self, fo: TextIO, path: Path, title: str, description: str):
        """Print one CSV file as a markdown table"""
        table = pd.read_csv(path)
        if len(table) == 0:
            return
        member = path.stem.rsplit('-', 1)[-1]
        print(f'\n## {title}' + (f' (member {int(member)})' if member.isdigit() else ''), file=fo)
        print(description, file=fo)
        if len(table) > self.max_rows:
            print(f'\nFirst {self.max_rows} of {len(table)} rows.', file=fo)
            table = table.head(self.max_rows)
        print('\n' + table.to_markdown(index=False, tablefmt='github'), file=fo)

    def _write_trajectory(self, fo: TextIO, run_dir: Path):
        """Summarize the trajectory, if one was stored"""
        path = run_dir / 'trajectory.csv'
        if not path.exists():
            return
        traj = pd.read_csv(path)
        print('\n## Trajectory', file=fo)
        print(f'Samples: {len(traj)}. Final time: {traj["t"].iloc[-1]:.6g}. '
              f'Smallest grid value: {traj["min_value"].min():.3e}', file=fo)
