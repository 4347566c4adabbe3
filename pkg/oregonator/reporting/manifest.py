"""Inventory of a run directory, used to confirm its outputs were not changed after the run"""
from dataclasses import dataclass, field, asdict
from datetime import datetime
from hashlib import sha512
from pathlib import Path
from typing import Any
import json
import logging

from oregonator import __version__

logger = logging.getLogger(__name__)

MANIFEST_NAME = 'manifest.json'


def file_digest(path: Path) -> str:
    """SHA-512 digest of the contents of a file"""
    hasher = sha512()
    with Path(path).open('rb') as fp:
        for block in iter(lambda: fp.read(1 << 20), b''):
            hasher.update(block)
    return hasher.hexdigest()


@dataclass
class RunManifest:
    """Record of how a run was configured and which files it produced"""

    command: str = ...
    """Command which produced the run"""
    config: dict[str, Any] = field(default_factory=dict)
    """Configuration used for the run, after command-line overrides"""
    version: str = __version__
    """Version of the package"""
    started: str = field(default_factory=lambda: datetime.now().isoformat())
    """Wall time at which the run started"""
    finished: str | None = None
    """Wall time at which the run finished"""
    status: str = 'running'
    """Outcome: ``running``, ``passed``, ``violated`` or ``failed``"""
    failure: dict[str, Any] | None = None
    """Description of the numerical failure which ended the run, if any"""
    files: dict[str, str] = field(default_factory=dict)
    """Digest of each output file, keyed by its name relative to the run directory"""

    def record(self, path: Path, run_dir: Path):
        """Add a file to the inventory

        Args:
            path: Path to the file
            run_dir: Directory holding the run
        """
        path = Path(path)
        self.files[str(path.relative_to(run_dir))] = file_digest(path)

    def finish(self, status: str, failure: dict[str, Any] | None = None):
        """Mark the run as complete"""
        self.status = status
        self.failure = failure
        self.finished = datetime.now().isoformat()

    def write(self, run_dir: Path) -> Path:
        """Save the manifest into the run directory"""
        path = Path(run_dir) / MANIFEST_NAME
        path.write_text(json.dumps(asdict(self), indent=2))
        logger.info(f'Wrote manifest listing {len(self.files)} files to {path}')
        return path

    @classmethod
    def load(cls, run_dir: Path) -> 'RunManifest':
        """Read the manifest of a run directory"""
        return cls(**json.loads((Path(run_dir) / MANIFEST_NAME).read_text()))


def verify_manifest(run_dir: Path) -> list[str]:
    """Find the files of a run which are missing or whose contents changed

    Args:
        run_dir: Directory holding the run
    Returns:
        Names of the files which fail. Empty if the run is intact
    """
    run_dir = Path(run_dir)
    manifest = RunManifest.load(run_dir)
    failed = []
    for name, digest in manifest.files.items():
        path = run_dir / name
        if not path.is_file() or file_digest(path) != digest:
            failed.append(name)
    return failed
