import json
import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from objects.gcca_input import GccaInput
from objects.gcca_solution import GccaSolution
from objects.multiview_dataset import MultiviewDataset, SplitSpec
from services.gcca_service import GCCAService
from utils.errors import DataError
from utils.linalg_utils import mean_center_columns
from utils.matrix_io_utils import load_matrix, save_matrix

DATASET_FORMAT_VERSION = 1
MANIFEST_FILE = 'manifest.json'
LABELS_FILE = 'labels.mvmx'
VIEW_FILE = '{name}.mvmx'


class DataService:
    """Class that contains the dataset container I/O, CSV import / export and deterministic splits"""

    @classmethod
    def save_dataset(cls, dataset: MultiviewDataset, path: Union[str, Path]):
        """Writes a dataset directory: manifest plus one MVMX file per view and an optional label file"""

        path = Path(path)
        path.mkdir(parents=True, exist_ok=True)

        views = []
        for name, view in zip(dataset.view_names, dataset.views):
            file_name = VIEW_FILE.format(name=name)
            save_matrix(path / file_name, view)
            views.append({'name': name, 'rows': view.shape[0], 'file': file_name})

        if dataset.labels is not None:
            save_matrix(path / LABELS_FILE, dataset.labels.astype(np.float64)[None, :])

        manifest = {
            'format_version': DATASET_FORMAT_VERSION,
            'n_samples': dataset.n_samples,
            'views': views,
            'labels': LABELS_FILE if dataset.labels is not None else None,
            'provenance': dataset.provenance,
        }
        (path / MANIFEST_FILE).write_text(json.dumps(manifest, indent=2, sort_keys=True))
        logging.info(f'Dataset {path} | Saved {dataset.n_views} views with N = {dataset.n_samples}.')

    @classmethod
    def load_dataset(cls, path: Union[str, Path]) -> MultiviewDataset:
        """Reads a dataset directory, checking the manifest against every file"""

        path = Path(path)
        manifest = cls._read_manifest(path)

        if manifest.get('format_version') != DATASET_FORMAT_VERSION:
            raise DataError(f'Dataset {path} | unsupported format version {manifest.get("format_version")}')

        try:
            n_samples = int(manifest['n_samples'])
            view_entries = manifest['views']
            views = [load_matrix(path / entry['file']) for entry in view_entries]
            view_names = [str(entry['name']) for entry in view_entries]
            view_rows = [int(entry['rows']) for entry in view_entries]
        except (KeyError, TypeError, ValueError) as e:
            raise DataError(f'Dataset {path} | malformed manifest: {e!r}')

        for name, rows, view in zip(view_names, view_rows, views):
            if view.shape != (rows, n_samples):
                raise DataError(
                    f'Dataset {path} | view {name} has shape {view.shape}, '
                    f'manifest declares ({rows}, {n_samples})'
                )

        labels = None
        if manifest.get('labels'):
            label_matrix = load_matrix(path / manifest['labels'])
            if label_matrix.shape[0] != 1:
                raise DataError(f'Dataset {path} | labels must be stored as a single row')

            labels = label_matrix[0]

        return MultiviewDataset(
            views=views,
            labels=labels,
            view_names=view_names,
            provenance=manifest.get('provenance', '')
        )

    @classmethod
    def import_csv(cls, path: Union[str, Path], header: bool = True) -> np.ndarray:
        """Reads one matrix from a CSV file with an optional header row"""

        try:
            df = pd.read_csv(path, header=0 if header else None, float_precision='round_trip')
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise DataError(f'Cannot read CSV file {path}: {e}')

        try:
            return df.to_numpy(dtype=np.float64)
        except ValueError as e:
            raise DataError(f'CSV file {path} has non-numeric entries: {e}')

    @classmethod
    def export_csv(cls, matrix: np.ndarray, path: Union[str, Path], header: Optional[List[str]] = None):
        """Writes one matrix to a CSV file with enough digits for a lossless round trip"""

        df = pd.DataFrame(np.asarray(matrix, dtype=np.float64), columns=header)
        df.to_csv(path, index=False, header=header is not None, float_format='%.17g')

    @classmethod
    def split_indices(
            cls,
            n_samples: int,
            spec: SplitSpec,
            labels: Optional[np.ndarray] = None
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Sorted train / tune / test indices. Stratified by label when labels are given"""

        if n_samples < 3:
            raise DataError(f'Splitting needs at least 3 samples, got {n_samples}')

        rng = np.random.default_rng(spec.seed)
        groups = (
            [np.flatnonzero(labels == label) for label in np.unique(labels)]
            if labels is not None
            else [np.arange(n_samples)]
        )

        train, tune, test = [], [], []
        for group in groups:
            permuted = rng.permutation(group)
            n_train = int(round(len(group) * spec.train))
            n_tune = min(int(round(len(group) * spec.tune)), len(group) - n_train)
            train.append(permuted[:n_train])
            tune.append(permuted[n_train:n_train + n_tune])
            test.append(permuted[n_train + n_tune:])

        splits = tuple(np.sort(np.concatenate(split)).astype(np.int64) for split in (train, tune, test))
        for name, split in zip(('train', 'tune', 'test'), splits):
            if split.size == 0:
                raise DataError(f'The {name} split is empty with fractions {(spec.train, spec.tune, spec.test)}')

        return splits

    @classmethod
    def split_dataset(
            cls,
            dataset: MultiviewDataset,
            spec: SplitSpec
    ) -> Tuple[MultiviewDataset, MultiviewDataset, MultiviewDataset]:
        """Disjoint, exhaustive, label-stratified and seeded train / tune / test datasets"""

        train, tune, test = cls.split_indices(dataset.n_samples, spec, dataset.labels)

        return dataset.subset(train), dataset.subset(tune), dataset.subset(test)

    @staticmethod
    def _read_manifest(path: Path) -> dict:
        """Reads the manifest of a dataset directory"""

        try:
            return json.loads((path / MANIFEST_FILE).read_text())
        except OSError as e:
            raise DataError(f'Dataset {path} | cannot read manifest: {e}')
        except json.JSONDecodeError as e:
            raise DataError(f'Dataset {path} | malformed manifest: {e}')

    @classmethod
    def linear_gcca_baseline(
            cls,
            views: List[np.ndarray],
            r: int,
            eps: float = 0.0,
            weights: Optional[List[float]] = None
    ) -> GccaSolution:
        """Linear GCCA of the mean-centered raw views, the reference every DGCCA run is compared with"""

        return GCCAService.solve(GccaInput(
            views=[mean_center_columns(view) for view in views],
            r=r,
            eps=eps,
            weights=weights
        ))
