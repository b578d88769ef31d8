from pathlib import Path
from typing import Optional

from alembic import command
from alembic.config import Config

from settings import settings, METRICS_DB_URL

MIGRATIONS_PATH = Path(__file__).resolve().parent


def get_db_url(url: Optional[str] = None) -> str:
    return url or settings.METRICS_DB_URL or METRICS_DB_URL


def run_db_migrations(url: Optional[str] = None):
    alembic_config = Config()
    alembic_config.set_main_option('script_location', str(MIGRATIONS_PATH))
    alembic_config.set_main_option('sqlalchemy.url', get_db_url(url))
    command.upgrade(alembic_config, 'head')
