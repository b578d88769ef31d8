import logging
import sys

from settings import settings

LOG_PATTERN = '[%(asctime)s][%(levelname)s] | %(message)s '
LOG_DATE_PATTERN = '%Y-%m-%d %H:%M:%S'


def configure_logs():
    """Method to configure the structure of a log"""

    logging.basicConfig(
        format=LOG_PATTERN,
        level=logging.INFO,
        datefmt=LOG_DATE_PATTERN,
        stream=sys.stdout
    )


def log(component: str, msg: str):
    """Method to handle how a verbose info log is shown"""

    if settings.VERBOSE_LOGS:
        logging.info(f'{component} | {msg}')


def epoch_log(metric) -> str:
    """Method to log the state of training after an epoch"""

    tune_error = f'{metric.tune_error:.6f}' if metric.tune_error is not None else 'n/a'

    return f'Epoch {metric.epoch} | ' \
           f'train error = {metric.train_error:.6f}, ' \
           f'tune error = {tune_error}, ' \
           f'{metric.seconds:.2f} sec.'
