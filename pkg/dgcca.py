import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from objects.dgcca_model import EpochMetric
from objects.run_manifest import RunManifest
from objects.train_config import TrainConfig
from services.config_service import ConfigService
from services.data_service import DataService
from services.evaluation_service import EvaluationService
from services.gradcheck_service import GradcheckService
from services.metrics_service import MetricsService
from services.model_service import ModelService
from services.run_service import RunService
from services.synthetic_service import SyntheticService
from services.training_service import TrainingService
from settings import settings, TOOL_VERSION
from utils.errors import ConfigError, DataError, DgccaError, DivergenceError, GradcheckError, NumericalError
from utils.logging_utils import configure_logs
from utils.matrix_io_utils import load_matrix, save_matrix

MODEL_DIR = 'model'
EPOCH_LOG_FILE = 'epochs.jsonl'
CONFIG_ECHO_FILE = 'config.ini'
SHARED_VIEW = 'shared'
METRICS = ['knn', 'probe']


def cmd_synth(args: argparse.Namespace) -> int:
    """Writes the synthetic three-view mixture as a dataset directory"""

    try:
        dataset = SyntheticService.generate_synthetic_mixture(
            n_per_component=args.n,
            noise=args.noise,
            seed=args.seed,
            shared_angle=not args.independent_angle
        )
    except ValueError as e:
        raise ConfigError(str(e))

    out = RunService.prepare_output_dir(args.out, args.force)
    with RunService.locked(out):
        started_at = RunService.now()
        DataService.save_dataset(dataset, out)
        RunService.write_manifest(out, RunManifest(
            command='synth',
            tool_version=TOOL_VERSION,
            seed=args.seed,
            config={'n_per_component': args.n, 'noise': args.noise, 'shared_angle': not args.independent_angle},
            artifacts={'dataset': '.'},
            started_at=started_at,
            finished_at=RunService.now()
        ))

    return 0


def cmd_train(args: argparse.Namespace) -> int:
    """Trains a DGCCA model and writes the model, the epoch log, the config echo and the run manifest"""

    config, data_path, tune_data_path = _train_inputs(args)
    dataset = DataService.load_dataset(data_path)
    tuning_views = DataService.load_dataset(tune_data_path).views if tune_data_path else None

    out = RunService.prepare_output_dir(args.out, args.force)
    with RunService.locked(out):
        started_at = RunService.now()
        (out / CONFIG_ECHO_FILE).write_text(ConfigService.dump_config(config))
        _log_linear_baseline(dataset.views, config)

        manifest = RunManifest(
            command='train',
            tool_version=TOOL_VERSION,
            seed=config.seed,
            config=config.to_dict(),
            data=str(data_path),
            tune_data=str(tune_data_path) if tune_data_path else None,
            artifacts={'model': MODEL_DIR, 'epoch_log': EPOCH_LOG_FILE, 'config': CONFIG_ECHO_FILE},
            started_at=started_at
        )
        try:
            model = TrainingService.train_dgcca(dataset.views, config, tuning_views)
        except DivergenceError as e:
            _write_epoch_log(out / EPOCH_LOG_FILE, e.history)
            manifest.artifacts.pop('model')
            manifest.finished_at = RunService.now()
            RunService.write_manifest(out, manifest)
            raise

        ModelService.save_model(model, out / MODEL_DIR)
        _write_epoch_log(out / EPOCH_LOG_FILE, model.history)
        manifest.finished_at = RunService.now()
        RunService.write_manifest(out, manifest)

    if args.metrics_db or settings.METRICS_DB_URL:
        metrics_service = MetricsService(args.metrics_db)
        metrics_service.save_history(str(out.resolve()), config, model.history)
        metrics_service.close()

    return 0


def cmd_transform(args: argparse.Namespace) -> int:
    """Writes the per-view projections and the shared representation of a dataset"""

    model = ModelService.load_model(args.model)
    dataset = DataService.load_dataset(args.data)
    projections = TrainingService.transform(model, dataset.views)
    shared = TrainingService.shared_representation(model, dataset.views)

    out = RunService.prepare_output_dir(args.out, args.force)
    with RunService.locked(out):
        started_at = RunService.now()
        artifacts = {}
        for name, projection in [*zip(dataset.view_names, projections), (SHARED_VIEW, shared)]:
            save_matrix(out / f'{name}.mvmx', projection)
            artifacts[name] = {'file': f'{name}.mvmx', 'shape': list(projection.shape)}

        RunService.write_manifest(out, RunManifest(
            command='transform',
            tool_version=TOOL_VERSION,
            seed=model.config.seed,
            config=model.config.to_dict(),
            data=str(args.data),
            artifacts={'model': str(args.model), **artifacts},
            started_at=started_at,
            finished_at=RunService.now()
        ))

    logging.info(f'Transform | Wrote {len(artifacts)} embeddings of shape {model.r} x {dataset.n_samples}.')

    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    """Evaluates a representation with KNN or a linear probe and prints the report as JSON"""

    if args.metric not in METRICS:
        raise ConfigError(f'Unknown metric {args.metric}. Options: {METRICS}')

    model = ModelService.load_model(args.model) if args.model else None
    train_points, train_labels = _eval_points(args.embeddings, args.data, args.labels, model, args.view)
    if args.query_embeddings or args.query_data:
        query_points, query_labels = _eval_points(
            args.query_embeddings, args.query_data, args.query_labels, model, args.view
        )
    else:
        query_points, query_labels = train_points, train_labels

    try:
        if args.metric == 'knn':
            k = settings.KNN_K if args.k is None else args.k
            report = EvaluationService.knn_report(train_points, train_labels, query_points, query_labels, k)
        else:
            ridge = settings.PROBE_RIDGE if args.ridge is None else args.ridge
            probe = EvaluationService.linear_probe(train_points, train_labels, ridge)
            report = EvaluationService.score(probe, query_points, query_labels)
    except ValueError as e:
        raise ConfigError(f'Invalid evaluation: {e}')

    output = json.dumps(report.calculate_metrics(), sort_keys=True)
    print(output)
    if args.out:
        Path(args.out).write_text(output + '\n')

    logging.info(f'Evaluation | {args.metric} accuracy = {report.accuracy:.4f} on {report.n_eval} samples.')

    return 0


def cmd_gradcheck(args: argparse.Namespace) -> int:
    """Compares the closed-form GCCA gradient with finite differences on a random instance"""

    dims = _int_list(args.dims, 'dims')
    if len(dims) == 1:
        dims = dims * args.views

    if len(dims) != args.views:
        raise ConfigError(f'Invalid value for dims: {len(dims)} entries for {args.views} views')

    r, eps = args.r, args.eps
    if args.identical:
        dims, r, eps = [dims[0]] * args.views, dims[0], 0.0

    if args.samples < 1 or args.n < 1 or any(d < 1 for d in dims):
        raise ConfigError(f'Invalid gradcheck instance: samples = {args.samples}, n = {args.n}, dims = {dims}')

    try:
        problem = GradcheckService.random_instance(args.seed, dims, args.n, r, eps, identical=args.identical)
    except ValueError as e:
        raise ConfigError(f'Invalid gradcheck instance: {e}')

    report = GradcheckService.check(problem, args.samples, seed=args.seed, h=args.h, flip_sign=args.flip_sign)

    print(json.dumps(report.calculate_metrics(), sort_keys=True))
    if not report.passed:
        raise GradcheckError(
            f'Gradient check failed: max relative error = {report.max_relative_error:.3e}, '
            f'eigengap guard passed = {report.guard_passed}'
        )

    return 0


def cmd_screen(args: argparse.Namespace) -> int:
    """Lists the runs saved in the metrics DDBB, weeding out those with a large final tuning error"""

    metrics_service = MetricsService(args.db)
    runs = metrics_service.screen_runs(args.max_tune_error)
    metrics_service.close()
    print(runs.to_string(index=False))

    return 0


def build_parser() -> argparse.ArgumentParser:
    """Command line of the DGCCA tool"""

    parser = argparse.ArgumentParser(prog='dgcca', description='Deep Generalized Canonical Correlation Analysis')
    parser.add_argument('--verbose', action='store_true', help='Per-batch training logs')
    commands = parser.add_subparsers(dest='command', required=True)

    synth = commands.add_parser('synth', help='Generate the synthetic three-view mixture')
    synth.add_argument('--n', type=int, default=None, help='Samples per mixture component')
    synth.add_argument('--seed', type=int, default=settings.SEED)
    synth.add_argument('--noise', type=float, default=None)
    synth.add_argument(
        '--independent-angle', action='store_true', help='Draw the position along the curve separately per view'
    )
    synth.add_argument('--out', required=True)
    synth.add_argument('--force', action='store_true')
    synth.set_defaults(handler=cmd_synth)

    train = commands.add_parser('train', help='Train a DGCCA model')
    train.add_argument('--config')
    train.add_argument('--data')
    train.add_argument('--tune-data', help='Dataset used for the tuning error instead of a held-out fraction')
    train.add_argument('--manifest', help='Run manifest to reproduce; replaces --config and --data')
    train.add_argument('--out', required=True)
    train.add_argument('--force', action='store_true')
    train.add_argument('--metrics-db', help='SQLAlchemy URL where the epoch metrics are saved')
    train.set_defaults(handler=cmd_train)

    transform = commands.add_parser('transform', help='Project a dataset with a trained model')
    transform.add_argument('--model', required=True)
    transform.add_argument('--data', required=True)
    transform.add_argument('--out', required=True)
    transform.add_argument('--force', action='store_true')
    transform.set_defaults(handler=cmd_transform)

    evaluate = commands.add_parser('eval', help='KNN or linear probe accuracy of a representation')
    evaluate.add_argument('--embeddings', help='Directory written by transform')
    evaluate.add_argument('--data', help='Dataset directory, projected with --model or evaluated raw')
    evaluate.add_argument('--model')
    evaluate.add_argument('--labels', help='Label MVMX file or dataset directory')
    evaluate.add_argument('--view', default=SHARED_VIEW, help='Embedding or raw view to evaluate')
    evaluate.add_argument('--query-embeddings')
    evaluate.add_argument('--query-data')
    evaluate.add_argument('--query-labels')
    evaluate.add_argument('--metric', default='knn')
    evaluate.add_argument('--k', type=int, default=None)
    evaluate.add_argument('--ridge', type=float, default=None)
    evaluate.add_argument('--out', help='File where the JSON report is also written')
    evaluate.set_defaults(handler=cmd_eval)

    gradcheck = commands.add_parser('gradcheck', help='Check the GCCA gradient against finite differences')
    gradcheck.add_argument('--seed', type=int, default=0)
    gradcheck.add_argument('--views', type=int, default=3)
    gradcheck.add_argument('--dims', default='3,4,5', help='Comma separated view dimensions')
    gradcheck.add_argument('--n', type=int, default=40)
    gradcheck.add_argument('--r', type=int, default=2)
    gradcheck.add_argument('--eps', type=float, default=1e-3)
    gradcheck.add_argument('--samples', type=int, default=10, help='Sampled entries per view')
    gradcheck.add_argument('--h', type=float, default=None)
    gradcheck.add_argument('--identical', action='store_true', help='Identical views, eps = 0 and r = dim')
    gradcheck.add_argument('--flip-sign', action='store_true', help=argparse.SUPPRESS)
    gradcheck.set_defaults(handler=cmd_gradcheck)

    screen = commands.add_parser('screen', help='Weed out runs by their final tuning error')
    screen.add_argument('--db', default=None, help='SQLAlchemy URL of the metrics DDBB')
    screen.add_argument('--max-tune-error', type=float, default=None)
    screen.set_defaults(handler=cmd_screen)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Runs one command and returns its exit code"""

    configure_logs()
    args = build_parser().parse_args(argv)
    if args.verbose:
        settings.attributes['VERBOSE_LOGS'] = True

    try:
        return args.handler(args)
    except DgccaError as e:
        logging.error(f'{args.command} | {type(e).__name__}: {e}')

        return e.exit_code


def _train_inputs(args: argparse.Namespace) -> Tuple[TrainConfig, str, Optional[str]]:
    """Config, dataset path and optional tuning dataset path of a training run, from flags or from a run manifest"""

    if args.manifest:
        manifest = RunService.read_manifest(args.manifest)
        if manifest.command != 'train' or manifest.config is None or manifest.data is None:
            raise DataError(f'Run manifest {args.manifest} does not describe a training run')

        if args.tune_data:
            raise ConfigError('train --manifest reuses the tuning data of the manifest, drop --tune-data')

        return TrainConfig.from_dict(manifest.config), manifest.data, manifest.tune_data

    if not args.config or not args.data:
        raise ConfigError('train needs --config and --data, or --manifest')

    return ConfigService.load_config(args.config), args.data, args.tune_data


def _log_linear_baseline(views: List[np.ndarray], config: TrainConfig):
    """Logs the linear GCCA reconstruction error of the raw views, the reference of the run"""

    try:
        solution = DataService.linear_gcca_baseline(views, config.r, config.eps, config.weights)
    except NumericalError as e:
        logging.info(f'Training | No linear GCCA baseline: {e}')
        return

    logging.info(f'Training | Linear GCCA baseline reconstruction error = {solution.reconstruction_error:.6f}.')


def _write_epoch_log(path: Path, history: List[EpochMetric]):
    """Line-delimited epoch records: epoch, train_err, tune_err, seconds"""

    records = pd.DataFrame(
        [metric.calculate_metrics() for metric in history],
        columns=['epoch', 'train_err', 'tune_err', 'seconds']
    )
    if records.empty:
        path.write_text('')
        return

    records.to_json(path, orient='records', lines=True, double_precision=15)


def _eval_points(embeddings: Optional[str], data: Optional[str], labels: Optional[str], model, view: str):
    """Points (r x N or d x N) and labels of one side of an evaluation"""

    dataset = DataService.load_dataset(data) if data else None
    if embeddings:
        points = load_matrix(Path(embeddings) / f'{view}.mvmx')

    elif dataset is not None and model is not None:
        if view == SHARED_VIEW:
            points = TrainingService.shared_representation(model, dataset.views)
        else:
            points = TrainingService.transform(model, dataset.views)[_view_index(dataset, view)]

    elif dataset is not None:
        if view == SHARED_VIEW:
            raise ConfigError('Evaluating raw data needs --view with one of its view names')

        points = dataset.views[_view_index(dataset, view)]

    else:
        raise ConfigError('eval needs --embeddings or --data')

    if labels:
        label_path = Path(labels)
        values = (
            DataService.load_dataset(label_path).labels if label_path.is_dir() else load_matrix(label_path)[0]
        )
    elif dataset is not None:
        values = dataset.labels
    else:
        values = None

    if values is None:
        raise DataError('No labels to evaluate with. Use --labels')

    if values.shape != (points.shape[1],):
        raise DataError(f'{values.size} labels for {points.shape[1]} samples')

    return points, values.astype(np.int64)


def _view_index(dataset, view: str) -> int:
    if view not in dataset.view_names:
        raise ConfigError(f'Unknown view {view}. Options: {dataset.view_names}')

    return dataset.view_names.index(view)


def _int_list(value: str, key: str) -> List[int]:
    try:
        return [int(v) for v in value.split(',') if v.strip()]
    except ValueError:
        raise ConfigError(f'Invalid value for {key}: {value!r}')


if __name__ == '__main__':
    sys.exit(main())
