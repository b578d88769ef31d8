import os
import tempfile
import unittest

from objects.run_manifest import RunManifest
from services.run_service import RunService, LOCK_FILE
from utils.errors import DataError


class TestsRunService(unittest.TestCase):
    """Tests for run directories, their lock and their manifest"""

    def setUp(self):
        self._dir = tempfile.TemporaryDirectory()
        self.path = os.path.join(self._dir.name, 'run')

    def tearDown(self):
        self._dir.cleanup()

    def test_prepare_output_dir(self):
        """Test to verify non-empty directories are only reused with force"""

        # Test 1: a new directory is created
        path = RunService.prepare_output_dir(self.path)
        self.assertTrue(path.is_dir())

        # Test 2: non-empty without force
        (path / 'old.txt').write_text('old')
        with self.assertRaises(DataError):
            RunService.prepare_output_dir(self.path)

        self.assertEqual(RunService.prepare_output_dir(self.path, force=True), path)

        # Test 3: a file in the way
        with self.assertRaises(DataError):
            RunService.prepare_output_dir(path / 'old.txt', force=True)

    def test_locked(self):
        """Test to verify a run directory can only be locked once at a time"""

        # Constants
        path = RunService.prepare_output_dir(self.path)

        # Test 1: a second lock on the same directory fails
        with RunService.locked(path):
            self.assertTrue((path / LOCK_FILE).exists())
            with self.assertRaises(DataError):
                with RunService.locked(path):
                    pass

        # Test 2: the lock is released, also after a failure
        self.assertFalse((path / LOCK_FILE).exists())
        with self.assertRaises(RuntimeError):
            with RunService.locked(path):
                raise RuntimeError('failed run')

        self.assertFalse((path / LOCK_FILE).exists())

    def test_manifest(self):
        """Test to verify manifests are read back from their file or their directory"""

        # Constants
        path = RunService.prepare_output_dir(self.path)
        manifest = RunManifest(
            command='train',
            tool_version='1.0.0',
            seed=3,
            config={'r': 2},
            data='data',
            artifacts={'model': 'model'},
            started_at=RunService.now()
        )

        # Test 1: round trip
        RunService.write_manifest(path, manifest)
        self.assertEqual(RunService.read_manifest(path), manifest)
        self.assertEqual(RunService.read_manifest(path / 'run_manifest.json'), manifest)

        # Test 2: missing and malformed manifests
        with self.assertRaises(DataError):
            RunService.read_manifest(os.path.join(self._dir.name, 'missing'))

        (path / 'run_manifest.json').write_text('{"command": "train", "extra": 1}')
        with self.assertRaises(DataError):
            RunService.read_manifest(path)
