""" Command-line configuration; environment variables first, flags override """

import os
from dataclasses import dataclass, replace
from typing import Optional, Union

from .errors import ConfigError
from .model import DEFAULT_TOLERANCE

OUTPUT_MODES = ('human', 'json', 'csv')

ENV_TOLERANCE = 'QPA_TOLERANCE'
ENV_OUTPUT = 'QPA_OUTPUT'
ENV_WORKERS = 'QPA_WORKERS'


@dataclass(frozen=True)
class CliConfig:
    """ ``threshold`` None decides by strict majority; ``max_steps`` 'auto'
    means 20·(|w| + 2) """

    tolerance: float = DEFAULT_TOLERANCE
    max_steps: Union[int, str] = 'auto'
    threshold: Optional[float] = None
    output_mode: str = 'human'
    workers: Optional[int] = None

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ConfigError(f'Tolerance must be positive, received {self.tolerance}')
        if self.threshold is not None and not 0.5 < self.threshold <= 1:
            raise ConfigError(f'Threshold must lie in (0.5, 1], received {self.threshold}')
        if self.output_mode not in OUTPUT_MODES:
            raise ConfigError(f'Output mode must be one of {OUTPUT_MODES}, received {self.output_mode!r}')
        if self.max_steps != 'auto' and (not isinstance(self.max_steps, int) or self.max_steps < 0):
            raise ConfigError(f'max steps must be "auto" or a non-negative integer, received {self.max_steps!r}')
        if self.workers is not None and self.workers < 1:
            raise ConfigError(f'Workers must be at least 1, received {self.workers}')

    @property
    def step_limit(self):
        """ ``max_steps`` as the recognizer expects it """
        return None if self.max_steps == 'auto' else self.max_steps

    @classmethod
    def from_env(cls, environ=None):
        environ = os.environ if environ is None else environ
        values = {}
        if environ.get(ENV_TOLERANCE):
            values['tolerance'] = _number(ENV_TOLERANCE, environ[ENV_TOLERANCE], float)
        if environ.get(ENV_OUTPUT):
            values['output_mode'] = environ[ENV_OUTPUT].strip().lower()
        if environ.get(ENV_WORKERS):
            values['workers'] = _number(ENV_WORKERS, environ[ENV_WORKERS], int)
        return cls(**values)

    def override(self, **flags):
        """ Copy with every flag that was given on the command line applied """
        given = {name: value for name, value in flags.items() if value is not None}
        return replace(self, **given)


def _number(name, text, kind):
    try:
        return kind(text)
    except ValueError:
        raise ConfigError(f'{name}={text!r} is not a valid {kind.__name__}') from None


def parse_max_steps(text):
    if text == 'auto':
        return text
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f'--max-steps expects an integer or "auto", received {text!r}') from None
