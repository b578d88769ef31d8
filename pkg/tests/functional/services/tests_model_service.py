import json
import os
import tempfile
import unittest

import numpy as np

from services.model_service import ModelService
from services.synthetic_service import SyntheticService
from services.training_service import TrainingService
from tests.test_utils import small_config
from utils.errors import DataError


class TestsModelService(unittest.TestCase):
    """Tests for saving and loading trained models"""

    def setUp(self):
        self._dir = tempfile.TemporaryDirectory()
        self.path = os.path.join(self._dir.name, 'model')
        self.dataset = SyntheticService.generate_synthetic_mixture(n_per_component=50, seed=1)
        self.model = TrainingService.train_dgcca(self.dataset.views, small_config(epochs=2))

    def tearDown(self):
        self._dir.cleanup()

    def test_save_and_load_model(self):
        """Test to verify a reloaded model transforms exactly like the original"""

        # Save and reload
        ModelService.save_model(self.model, self.path)
        loaded = ModelService.load_model(self.path)

        # Test 1: architecture, config, errors and history
        self.assertEqual(loaded.config, self.model.config)
        self.assertEqual(loaded.train_error, self.model.train_error)
        self.assertEqual(
            [(m.epoch, m.train_error, m.tune_error) for m in loaded.history],
            [(m.epoch, m.train_error, m.tune_error) for m in self.model.history]
        )
        np.testing.assert_array_equal(loaded.g, self.model.g)
        np.testing.assert_array_equal(loaded.eigenvalues, self.model.eigenvalues)

        # Test 2: bitwise identical embeddings
        for a, b in zip(TrainingService.transform(loaded, self.dataset.views),
                        TrainingService.transform(self.model, self.dataset.views)):
            np.testing.assert_array_equal(a, b)

        # Test 3: saving twice writes identical files
        other = os.path.join(self._dir.name, 'other')
        ModelService.save_model(loaded, other)
        for name in sorted(os.listdir(self.path)):
            with open(os.path.join(self.path, name), 'rb') as a, open(os.path.join(other, name), 'rb') as b:
                self.assertEqual(a.read(), b.read(), name)

    def test_corrupted_models(self):
        """Test to verify missing or inconsistent model files are data errors"""

        # Test 1: missing model
        with self.assertRaises(DataError):
            ModelService.load_model(os.path.join(self._dir.name, 'missing'))

        # Test 2: unknown format version
        ModelService.save_model(self.model, self.path)
        with open(os.path.join(self.path, 'model.json')) as file:
            manifest = json.load(file)

        with open(os.path.join(self.path, 'model.json'), 'w') as file:
            json.dump({**manifest, 'format_version': 99}, file)

        with self.assertRaises(DataError):
            ModelService.load_model(self.path)

        # Test 3: a weight file that does not match the architecture
        manifest['views'][0]['widths'] = [2, 5, 2]
        with open(os.path.join(self.path, 'model.json'), 'w') as file:
            json.dump(manifest, file)

        with self.assertRaises(DataError):
            ModelService.load_model(self.path)

        # Test 4: a missing matrix file
        manifest['views'][0]['widths'] = self.model.networks[0].layer_widths
        os.remove(os.path.join(self.path, 'g.mvmx'))
        with open(os.path.join(self.path, 'model.json'), 'w') as file:
            json.dump(manifest, file)

        with self.assertRaises(DataError):
            ModelService.load_model(self.path)
