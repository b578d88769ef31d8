import configparser
import io
import re
from pathlib import Path
from typing import Any, Callable, Dict, List, Union

from objects.train_config import TrainConfig, ViewConfig
from settings import settings, TRAIN_KEYS, VIEW_KEYS
from utils.errors import ConfigError

TRAIN_SECTION = 'train'
VIEWS_SECTION = 'views'
VIEW_SECTION_PATTERN = re.compile(r'^view\.(\d+)$')


def _parse_bool(value: str) -> bool:
    """Parses the boolean spellings accepted by configparser"""

    lowered = value.strip().lower()
    if lowered in ('1', 'yes', 'true', 'on'):
        return True

    if lowered in ('0', 'no', 'false', 'off'):
        return False

    raise ValueError(f'not a boolean: {value!r}')


def _parse_widths(value: str) -> List[int]:
    """Parses a comma separated list of layer widths"""

    return [int(w) for w in value.split(',') if w.strip()]


PARSERS: Dict[str, Callable[[str], Any]] = {
    'r': int,
    'eps': float,
    'optimizer': str.strip,
    'learning_rate': float,
    'momentum': float,
    'beta_1': float,
    'beta_2': float,
    'adam_eps': float,
    'l1': float,
    'l2': float,
    'batch_size': int,
    'epochs': int,
    'seed': int,
    'tune_fraction': float,
    'shuffle': _parse_bool,
    'full_pass_every': int,
    'widths': _parse_widths,
    'activation': str.strip,
    'init': str.strip,
    'weight': float,
}


class ConfigService:
    """
    Class that reads training configs. The schema is an INI file with a [train] section of flat keys,
    an optional [views] section of defaults shared by every view and one [view.<j>] section per view.
    Unknown sections and keys are errors
    """

    @classmethod
    def load_config(cls, path: Union[str, Path]) -> TrainConfig:
        """Reads and validates a config file"""

        try:
            text = Path(path).read_text()
        except OSError as e:
            raise ConfigError(f'Cannot read config file {path}: {e}')

        return cls.parse_config(text)

    @classmethod
    def parse_config(cls, text: str) -> TrainConfig:
        """Parses and validates the text of a config file"""

        parser = configparser.ConfigParser(interpolation=None, default_section='__defaults__')
        parser.optionxform = str
        try:
            parser.read_string(text)
        except configparser.Error as e:
            raise ConfigError(f'Malformed config: {e}')

        view_sections = {}
        for section in parser.sections():
            match = VIEW_SECTION_PATTERN.match(section)
            if match:
                view_sections[int(match.group(1))] = section

            elif section not in (TRAIN_SECTION, VIEWS_SECTION):
                raise ConfigError(f'Unknown config section [{section}]')

        if sorted(view_sections) != list(range(len(view_sections))) or len(view_sections) < 2:
            raise ConfigError(f'Config needs [view.0] ... [view.J-1] sections with J >= 2, got {sorted(view_sections)}')

        train_values = {key: settings.attributes[name] for key, name in TRAIN_KEYS.items()}
        if parser.has_section(TRAIN_SECTION):
            train_values.update(cls._read_section(parser, TRAIN_SECTION, list(TRAIN_KEYS)))

        view_defaults = {key: settings.attributes[name] for key, name in VIEW_KEYS.items() if name is not None}
        if parser.has_section(VIEWS_SECTION):
            view_defaults.update(cls._read_section(parser, VIEWS_SECTION, list(VIEW_KEYS)))

        views = []
        for j in range(len(view_sections)):
            values = {**view_defaults, **cls._read_section(parser, view_sections[j], list(VIEW_KEYS))}
            if 'widths' not in values:
                raise ConfigError(f'Missing key widths in [view.{j}]')

            views.append(ViewConfig(**values))

        return TrainConfig(views=views, **train_values)

    @classmethod
    def dump_config(cls, config: TrainConfig) -> str:
        """Config file text that parses back to the same config"""

        parser = configparser.ConfigParser(interpolation=None, default_section='__defaults__')
        parser.optionxform = str
        values = config.to_dict()
        views = values.pop('views')
        parser[TRAIN_SECTION] = {key: cls._format(values[key]) for key in TRAIN_KEYS}
        for j, view in enumerate(views):
            parser[f'view.{j}'] = {key: cls._format(view[key]) for key in VIEW_KEYS}

        buffer = io.StringIO()
        parser.write(buffer)

        return buffer.getvalue()

    @staticmethod
    def _read_section(parser: configparser.ConfigParser, section: str, allowed: List[str]) -> Dict[str, Any]:
        """Parses the keys of a section, naming the offending key on failure"""

        values = {}
        for key, raw in parser.items(section):
            if key not in allowed:
                raise ConfigError(f'Unknown config key {key} in [{section}]')

            try:
                values[key] = PARSERS[key](raw)
            except ValueError as e:
                raise ConfigError(f'Invalid value for {key} in [{section}]: {e}')

        return values

    @staticmethod
    def _format(value: Any) -> str:
        """Config file spelling of a value"""

        if isinstance(value, (list, tuple)):
            return ','.join(str(v) for v in value)

        return repr(value) if isinstance(value, float) else str(value)
