import logging
from typing import List, Optional

import pandas as pd
from alembic.util import CommandError
from sqlalchemy import create_engine, text, DateTime, Float, Integer, JSON, String
from sqlalchemy.exc import SQLAlchemyError

from ddbb.config import get_db_url, run_db_migrations
from ddbb.queries.final_epoch_metrics_query import final_epoch_metrics_query
from objects.dgcca_model import EpochMetric
from objects.train_config import TrainConfig
from settings import settings
from utils.errors import DataError


class MetricsService:
    """Class that contains the Metrics Service to save training histories and screen finished runs"""

    def __init__(self, url: Optional[str] = None):
        """Instantiates the class by migrating and connecting to the DDBB"""

        self._url = get_db_url(url)
        try:
            run_db_migrations(self._url)
            self._connection = create_engine(self._url, pool_pre_ping=True)
        except (SQLAlchemyError, CommandError) as e:
            raise DataError(f'Metrics DDBB {self._url} | cannot migrate or connect: {e}')

    def save_history(self, run_id: str, config: TrainConfig, history: List[EpochMetric]):
        """Method for saving the per-epoch errors of a run to the DDBB"""

        metrics = pd.DataFrame([
            {'run_id': run_id, 'train_settings': config.to_dict(), **metric.calculate_metrics()}
            for metric in history
        ])
        if metrics.empty:
            logging.warning(f'Run {run_id} | No epochs to save.')
            return

        metrics['created_at'] = pd.Timestamp.now()
        try:
            metrics.to_sql(
                name='epoch_metrics',
                con=self._connection,
                if_exists='append',
                index=False,
                dtype={
                    'created_at': DateTime,
                    'run_id': String,
                    'train_settings': JSON,
                    'epoch': Integer,
                    'train_err': Float,
                    'tune_err': Float,
                    'seconds': Float,
                }
            )
        except SQLAlchemyError as e:
            raise DataError(f'Run {run_id} | cannot save the epoch metrics: {e}')

        logging.info(f'Run {run_id} | Successfully saved {len(metrics)} epochs to DDBB.')

    def screen_runs(self, max_tune_error: Optional[float] = None) -> pd.DataFrame:
        """
        Method for weeding out runs whose final tuning reconstruction error is missing, not finite
        or above the threshold. Returns the final epoch of every run with a `kept` column
        """

        max_tune_error = settings.SCREEN_MAX_TUNE_ERROR if max_tune_error is None else max_tune_error
        try:
            with self._connection.connect() as connection:
                runs = pd.read_sql(text(final_epoch_metrics_query), connection)
        except SQLAlchemyError as e:
            raise DataError(f'Metrics DDBB {self._url} | cannot read the runs: {e}')

        tune_err = pd.to_numeric(runs['tune_err'], errors='coerce')
        runs['kept'] = tune_err.notna() & (tune_err <= max_tune_error)
        for run_id in runs.loc[~runs['kept'], 'run_id']:
            logging.info(f'Run {run_id} | Weeded out by the tuning error screen.')

        logging.info(f'Screening | Kept {int(runs["kept"].sum())} of {len(runs)} runs.')

        return runs

    def close(self):
        """Releases the DDBB connection"""

        self._connection.dispose()
