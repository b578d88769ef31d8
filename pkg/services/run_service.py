import json
import logging
import os
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator, Union

from objects.run_manifest import RunManifest
from utils.errors import DataError

RUN_MANIFEST_FILE = 'run_manifest.json'
LOCK_FILE = 'run.lock'


class RunService:
    """Class that prepares run directories, guards them against concurrent writers and writes their manifests"""

    @classmethod
    def prepare_output_dir(cls, path: Union[str, Path], force: bool = False) -> Path:
        """Creates the output directory. An existing non-empty one is only reused with force"""

        path = Path(path)
        if path.exists() and not path.is_dir():
            raise DataError(f'Output {path} exists and is not a directory')

        if path.is_dir() and any(path.iterdir()) and not force:
            raise DataError(f'Output directory {path} is not empty. Use --force to overwrite it')

        path.mkdir(parents=True, exist_ok=True)

        return path

    @classmethod
    @contextmanager
    def locked(cls, path: Union[str, Path]) -> Iterator[Path]:
        """Holds the exclusive lock file of a run directory while a command writes into it"""

        lock = Path(path) / LOCK_FILE
        try:
            fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise DataError(f'Run directory {path} is locked by another process ({lock})')

        try:
            os.write(fd, str(os.getpid()).encode())
            os.close(fd)
            yield Path(path)
        finally:
            lock.unlink(missing_ok=True)

    @classmethod
    def write_manifest(cls, path: Union[str, Path], manifest: RunManifest):
        """Writes the single run manifest of a run directory"""

        target = Path(path) / RUN_MANIFEST_FILE
        target.write_text(json.dumps(manifest.to_dict(), indent=2, sort_keys=True))
        logging.info(f'Run {path} | Wrote {RUN_MANIFEST_FILE}.')

    @classmethod
    def read_manifest(cls, path: Union[str, Path]) -> RunManifest:
        """Reads a run manifest, given its file or its run directory"""

        path = Path(path)
        target = path / RUN_MANIFEST_FILE if path.is_dir() else path
        try:
            return RunManifest.from_dict(json.loads(target.read_text()))
        except OSError as e:
            raise DataError(f'Cannot read run manifest {target}: {e}')
        except (json.JSONDecodeError, TypeError) as e:
            raise DataError(f'Malformed run manifest {target}: {e}')

    @staticmethod
    def now() -> str:
        """UTC timestamp of a manifest"""

        return datetime.now(timezone.utc).isoformat(timespec='seconds')
