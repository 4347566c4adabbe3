"""Base class for reporting implementations"""
from dataclasses import dataclass
from pathlib import Path

from oregonator.reporting.manifest import RunManifest


@dataclass()
class BaseReporter:
    """Base class for all reporter functions"""

    def report(self, run_dir: Path, manifest: RunManifest) -> Path:
        """Generate a report for a run from the files it wrote

        Args:
            run_dir: Directory holding the run
            manifest: Manifest of the run so far
        Returns:
            Path to the report
        """
        raise NotImplementedError()
