import json
import os
import tempfile
import unittest

import numpy as np

from objects.gcca_input import GccaInput
from objects.multiview_dataset import MultiviewDataset, SplitSpec
from services.data_service import DataService
from services.gcca_service import GCCAService
from tests.test_utils import random_views
from utils.errors import DataError


class TestsDataService(unittest.TestCase):
    """Tests for the dataset container, CSV I/O and splits"""

    def setUp(self):
        self._dir = tempfile.TemporaryDirectory()
        self.path = self._dir.name

    def tearDown(self):
        self._dir.cleanup()

    def test_save_and_load_dataset(self):
        """Test to verify a dataset directory is written and read back exactly"""

        # Constants
        rng = np.random.default_rng(0)
        dataset = MultiviewDataset(
            views=[rng.standard_normal((2, 7)), rng.standard_normal((3, 7))],
            labels=np.array([0, 1, 1, 0, 2, 2, 1]),
            view_names=['audio', 'video'],
            provenance='unit test'
        )

        # Test 1: manifest contents
        DataService.save_dataset(dataset, self.path)
        with open(os.path.join(self.path, 'manifest.json')) as file:
            manifest = json.load(file)

        self.assertEqual(manifest['format_version'], 1)
        self.assertEqual(manifest['n_samples'], 7)
        self.assertEqual([v['name'] for v in manifest['views']], ['audio', 'video'])
        self.assertEqual([v['rows'] for v in manifest['views']], [2, 3])

        # Test 2: the reload is exact
        loaded = DataService.load_dataset(self.path)
        self.assertEqual(loaded.view_names, ['audio', 'video'])
        self.assertEqual(loaded.provenance, 'unit test')
        self.assertEqual(loaded.n_classes, 3)
        np.testing.assert_array_equal(loaded.labels, dataset.labels)
        for a, b in zip(loaded.views, dataset.views):
            np.testing.assert_array_equal(a, b)

        # Test 3: a manifest that disagrees with a file is a data error
        manifest['views'][0]['rows'] = 4
        with open(os.path.join(self.path, 'manifest.json'), 'w') as file:
            json.dump(manifest, file)

        with self.assertRaises(DataError):
            DataService.load_dataset(self.path)

        # Test 4: missing directory
        with self.assertRaises(DataError):
            DataService.load_dataset(os.path.join(self.path, 'missing'))

        # Test 5: view entries without their declared rows or names
        for key in ['rows', 'name']:
            broken = json.loads(json.dumps(manifest))
            broken['views'][0]['rows'] = 2
            del broken['views'][1][key]
            with open(os.path.join(self.path, 'manifest.json'), 'w') as file:
                json.dump(broken, file)

            with self.assertRaisesRegex(DataError, 'malformed manifest'):
                DataService.load_dataset(self.path)

    def test_dataset_validation(self):
        """Test to verify datasets with inconsistent views or labels are rejected"""

        with self.assertRaises(DataError):
            MultiviewDataset(views=[np.ones((2, 3)), np.ones((2, 4))])

        with self.assertRaises(DataError):
            MultiviewDataset(views=[np.ones((2, 3))], labels=np.array([0, 1]))

        with self.assertRaises(DataError):
            MultiviewDataset(views=[np.ones((2, 3))], labels=np.array([0, -1, 1]))

        with self.assertRaises(DataError):
            MultiviewDataset(views=[np.ones((2, 3)), np.ones((2, 3))], view_names=['a', 'a'])

    def test_csv(self):
        """Test to verify CSV import and export of single matrices"""

        # Constants
        matrix = np.array([[0.1, 1.0 / 3.0], [-2.0, 1e-17], [5.0, 6.0]])
        path = os.path.join(self.path, 'matrix.csv')

        # Test 1: with a header the round trip is lossless
        DataService.export_csv(matrix, path, header=['x', 'y'])
        with open(path) as file:
            self.assertEqual(file.readline().strip(), 'x,y')

        np.testing.assert_array_equal(DataService.import_csv(path), matrix)

        # Test 2: without a header
        DataService.export_csv(matrix, path)
        np.testing.assert_array_equal(DataService.import_csv(path, header=False), matrix)

        # Test 3: non-numeric entries and missing files
        with open(path, 'w') as file:
            file.write('a,b\n1,x\n')

        with self.assertRaises(DataError):
            DataService.import_csv(path)

        with self.assertRaises(DataError):
            DataService.import_csv(os.path.join(self.path, 'missing.csv'))

    def test_split_indices(self):
        """Test to verify splits are disjoint, exhaustive, stratified and seeded"""

        # Constants
        labels = np.repeat([0, 1], [60, 40])
        spec = SplitSpec(train=0.8, tune=0.1, test=0.1, seed=3)

        # Test 1: disjoint and exhaustive
        train, tune, test = DataService.split_indices(100, spec, labels)
        self.assertEqual(len(np.intersect1d(train, tune)) + len(np.intersect1d(train, test)), 0)
        self.assertEqual(len(np.intersect1d(tune, test)), 0)
        np.testing.assert_array_equal(np.sort(np.concatenate([train, tune, test])), np.arange(100))
        self.assertTrue(np.all(np.diff(train) > 0))

        # Test 2: stratified by label
        self.assertEqual((np.sum(labels[train] == 0), np.sum(labels[train] == 1)), (48, 32))
        self.assertEqual((np.sum(labels[tune] == 0), np.sum(labels[tune] == 1)), (6, 4))

        # Test 3: same seed same split, other seed other split
        again = DataService.split_indices(100, spec, labels)
        for a, b in zip((train, tune, test), again):
            np.testing.assert_array_equal(a, b)

        other = DataService.split_indices(100, SplitSpec(train=0.8, tune=0.1, test=0.1, seed=4), labels)
        self.assertFalse(np.array_equal(train, other[0]))

        # Test 4: empty splits and invalid fractions
        with self.assertRaises(DataError):
            DataService.split_indices(3, SplitSpec(train=0.9, tune=0.05, test=0.05))

        with self.assertRaises(ValueError):
            SplitSpec(train=0.5, tune=0.5, test=0.5)

    def test_split_dataset(self):
        """Test to verify datasets are split column-wise"""

        # Constants
        dataset = MultiviewDataset(
            views=[np.arange(20.0).reshape(2, 10), np.arange(10.0).reshape(1, 10)],
            labels=np.array([0, 1] * 5)
        )

        # Assert the three parts cover every sample once
        parts = DataService.split_dataset(dataset, SplitSpec(train=0.6, tune=0.2, test=0.2, seed=1))
        self.assertEqual(sum(part.n_samples for part in parts), 10)
        np.testing.assert_array_equal(np.sort(np.concatenate([p.views[1][0] for p in parts])), np.arange(10.0))
        for part in parts:
            np.testing.assert_array_equal(part.views[0][1] - part.views[0][0], 10.0)

    def test_linear_gcca_baseline(self):
        """Test to verify the baseline is GCCA of the centered raw views"""

        # Constants
        views = [v + 5.0 for v in random_views(seed=4, dims=[2, 3], n_samples=20)]

        # Assert the baseline ignores the offsets
        baseline = DataService.linear_gcca_baseline(views, r=2, eps=1e-3)
        centered = [v - v.mean(axis=1, keepdims=True) for v in views]
        expected = GCCAService.solve(GccaInput(views=centered, r=2, eps=1e-3))
        self.assertAlmostEqual(baseline.reconstruction_error, expected.reconstruction_error, places=10)
