import logging
try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

from django.conf import settings

from .exceptions import ConfigError
from .serializers import RunConfigSerializer

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    corpus_root: Path
    language: str = 'Python3'
    top_k: int = 5
    top_m: int = 3
    output_dir: Path = Path('out')
    parallelism: int = 1
    timeout_ms: int = 2000
    interpreter: Optional[str] = None


CONFIG_KEYS = frozenset(item.name for item in fields(RunConfig))


def defaults():
    options = settings.REFSOL
    return {
        'language': options['LANGUAGE'],
        'top_k': options['TOP_K'],
        'top_m': options['TOP_M'],
        'output_dir': options['OUTPUT_DIR'],
        'parallelism': options['JOBS'],
        'timeout_ms': options['TIMEOUT_MS'],
        'interpreter': options['INTERPRETER'],
    }


def read_config_file(path):
    """``key = value`` TOML with RunConfig field names as keys."""
    try:
        with open(path, 'rb') as handle:
            values = tomllib.load(handle)
    except OSError as exc:
        raise ConfigError('Cannot read config file {}: {}'.format(path, exc)) from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError('Config file {} is not valid TOML: {}'.format(path, exc)) from exc
    unknown = sorted(set(values) - CONFIG_KEYS)
    if unknown:
        raise ConfigError('Unknown keys in {}: {}'.format(path, ', '.join(unknown)))
    return values


def resolve(overrides, config_file=None):
    """Settings defaults, then the config file, then ``overrides`` (None means unset)."""
    values = defaults()
    config_file = config_file or settings.REFSOL.get('CONFIG_FILE')
    if config_file:
        values.update(read_config_file(config_file))
        logger.debug('Read run configuration from %s', config_file)
    values.update({key: value for key, value in overrides.items() if value is not None})
    serializer = RunConfigSerializer(data={key: str(value) if isinstance(value, Path) else value
                                           for key, value in values.items()})
    if not serializer.is_valid():
        raise ConfigError('; '.join('{}: {}'.format(key, ' '.join(str(message) for message in messages))
                                    for key, messages in serializer.errors.items()))
    data = dict(serializer.validated_data)
    data['corpus_root'] = Path(data['corpus_root'])
    data['output_dir'] = Path(data['output_dir'])
    return RunConfig(**data)
