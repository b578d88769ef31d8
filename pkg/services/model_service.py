import json
import logging
from pathlib import Path
from typing import Union

import numpy as np

from objects.dgcca_model import DgccaModel, EpochMetric
from objects.mlp_network import MlpNetwork
from objects.train_config import TrainConfig
from utils.errors import ConfigError, DataError
from utils.matrix_io_utils import load_matrix, save_matrix

MODEL_FORMAT_VERSION = 1
MODEL_FILE = 'model.json'


class ModelService:
    """
    Class that saves and loads trained models. A model is a directory with model.json
    (format version, architecture, config echo, history) and one MVMX file per matrix
    """

    @classmethod
    def save_model(cls, model: DgccaModel, path: Union[str, Path]):
        """Writes the model directory. The content only depends on the model, never on the clock"""

        path = Path(path)
        path.mkdir(parents=True, exist_ok=True)

        views = []
        for j, (network, u, mean) in enumerate(zip(model.networks, model.u, model.means)):
            entry = {
                'widths': list(network.layer_widths),
                'activation': network.activation,
                'weights': [],
                'biases': [],
                'u': f'view_{j}_u.mvmx',
                'mean': f'view_{j}_mean.mvmx',
            }
            for k, (w, b) in enumerate(zip(network.weights, network.biases)):
                entry['weights'].append(f'view_{j}_layer_{k}_w.mvmx')
                entry['biases'].append(f'view_{j}_layer_{k}_b.mvmx')
                save_matrix(path / entry['weights'][-1], w)
                save_matrix(path / entry['biases'][-1], b[None, :])

            save_matrix(path / entry['u'], u)
            save_matrix(path / entry['mean'], mean[None, :])
            views.append(entry)

        save_matrix(path / 'g.mvmx', model.g)
        manifest = {
            'format_version': MODEL_FORMAT_VERSION,
            'config': model.config.to_dict(),
            'train_error': model.train_error,
            'eigenvalues': [float(e) for e in model.eigenvalues],
            'history': [
                {'epoch': m.epoch, 'train_err': m.train_error, 'tune_err': m.tune_error}
                for m in model.history
            ],
            'views': views,
            'g': 'g.mvmx',
        }
        (path / MODEL_FILE).write_text(json.dumps(manifest, indent=2, sort_keys=True))
        logging.info(f'Model {path} | Saved {model.n_views} networks.')

    @classmethod
    def load_model(cls, path: Union[str, Path]) -> DgccaModel:
        """Reads a model directory written by save_model"""

        path = Path(path)
        try:
            manifest = json.loads((path / MODEL_FILE).read_text())
        except OSError as e:
            raise DataError(f'Model {path} | cannot read {MODEL_FILE}: {e}')
        except json.JSONDecodeError as e:
            raise DataError(f'Model {path} | malformed {MODEL_FILE}: {e}')

        if manifest.get('format_version') != MODEL_FORMAT_VERSION:
            raise DataError(f'Model {path} | unsupported format version {manifest.get("format_version")}')

        try:
            networks, u, means = [], [], []
            for entry in manifest['views']:
                networks.append(MlpNetwork(
                    layer_widths=entry['widths'],
                    weights=[load_matrix(path / f) for f in entry['weights']],
                    biases=[load_matrix(path / f)[0] for f in entry['biases']],
                    activation=entry['activation']
                ))
                u.append(load_matrix(path / entry['u']))
                means.append(load_matrix(path / entry['mean'])[0])

            history = [
                EpochMetric(epoch=m['epoch'], train_error=m['train_err'], tune_error=m['tune_err'])
                for m in manifest['history']
            ]

            return DgccaModel(
                networks=networks,
                u=u,
                g=load_matrix(path / manifest['g']),
                means=means,
                config=TrainConfig.from_dict(manifest['config']),
                eigenvalues=np.asarray(manifest['eigenvalues'], dtype=np.float64),
                train_error=manifest['train_error'],
                history=history
            )
        except (KeyError, TypeError, ValueError, ConfigError) as e:
            raise DataError(f'Model {path} | inconsistent model files: {e}')
