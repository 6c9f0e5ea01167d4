"""
Numeric tolerances, budgets and seeds shared by all modules.

Defaults live on the Settings class; they can be overridden with environment variables
named TLBRAID_<NAME> (e.g. TLBRAID_BRACKET_BUDGET=24) or with settings.update(...).
"""
import logging
import os

from tlbraid.exceptions import ConfigError
from tlbraid.tools.parsers import default_type_codecs

logger = logging.getLogger(__name__)

ENV_PREFIX = 'TLBRAID_'


class Settings(object):
    unitary_tol: float = 1e-8
    algebra_tol: float = 1e-10
    block_tol: float = 1e-12
    dedup_tol: float = 1e-7
    bracket_budget: int = 30
    phase_scan: int = 1000
    coverage_samples: int = 1000
    coverage_required: float = 0.99
    sk_angle_threshold: float = 1e-6
    seed: int = 20240611

    @classmethod
    def names(cls):
        return tuple(cls.__annotations__)

    def __init__(self, environ=None):
        environ = os.environ if environ is None else environ
        for name in self.names():
            key = ENV_PREFIX + name.upper()
            if key in environ:
                self.update(**{name: self._decode(name, environ[key])})

    def _decode(self, name, string):
        type_ = self.__annotations__[name]
        _, decode = default_type_codecs.get(type_, (str, type_))
        try:
            return decode(string)
        except (TypeError, ValueError) as error:
            raise ConfigError(f"invalid value '{string}' for setting '{name}': {error}")

    def update(self, **kwargs):
        for name, value in kwargs.items():
            if name not in self.names():
                raise ConfigError(f"unknown setting '{name}'")
            type_ = self.__annotations__[name]
            if type_ is float and isinstance(value, int):
                value = float(value)
            if not isinstance(value, type_) or isinstance(value, bool):
                raise ConfigError(f"setting '{name}' should be of type {type_.__name__}, not {type(value).__name__}")
            if value <= 0:
                raise ConfigError(f"setting '{name}' should be positive")
            setattr(self, name, value)
            logger.debug("setting %s = %r", name, value)
        return self

    def dict(self):
        return {name: getattr(self, name) for name in self.names()}


settings = Settings()


def configure_logging(verbose=False):
    """ only called from the command line; library code just creates loggers """
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO,
                        format='%(levelname)s %(name)s: %(message)s')


if __name__ == '__main__':
    print(settings.dict())
