"""Runtime settings read from the environment."""
import logging
import os
from typing import Optional

from .exceptions import ConfigurationError

MAX_DEGREE_ENV = "MODULI_MAX_DEGREE"
LOG_LEVEL_ENV = "MODULI_LOG_LEVEL"
COMPLETION_TIMEOUT_ENV = "MODULI_COMPLETION_TIMEOUT"

DEFAULT_COMPLETION_TIMEOUT = 600.0
DEFAULT_SEED = 7
DEFAULT_SAMPLES = 500
LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s: %(message)s"


def _read_int(name: str) -> Optional[int]:
    value = os.environ.get(name)
    if value is None or value.strip() == "":
        return None
    try:
        number = int(value)
    except ValueError:
        raise ConfigurationError(
            "{} must be an integer, not {!r}".format(name, value)
        )
    if number < 0:
        raise ConfigurationError("{} must be non-negative, not {}".format(name, number))
    return number


def max_degree_override() -> Optional[int]:
    """The degree guard set through ``MODULI_MAX_DEGREE``, or None."""
    return _read_int(MAX_DEGREE_ENV)


def completion_timeout() -> float:
    """Seconds a quotient ring waits for its completion lock."""
    value = os.environ.get(COMPLETION_TIMEOUT_ENV)
    if value is None or value.strip() == "":
        return DEFAULT_COMPLETION_TIMEOUT
    try:
        seconds = float(value)
    except ValueError:
        raise ConfigurationError(
            "{} must be a number, not {!r}".format(COMPLETION_TIMEOUT_ENV, value)
        )
    if seconds <= 0:
        raise ConfigurationError("{} must be positive".format(COMPLETION_TIMEOUT_ENV))
    return seconds


def configure_logging(verbose: bool = False, debug: bool = False) -> int:
    """
    Configure the root logger for command line use.

    Parameters
    ----------
    verbose : bool
        Log at INFO level.
    debug : bool
        Log at DEBUG level, takes precedence over verbose.

    Returns
    -------
    level : int
        The level that was configured.
    """
    if not isinstance(verbose, bool):
        raise TypeError("verbose must be a boolean, not type {}".format(type(verbose)))
    if not isinstance(debug, bool):
        raise TypeError("debug must be a boolean, not type {}".format(type(debug)))

    level = logging.WARNING
    if verbose:
        level = logging.INFO
    if debug:
        level = logging.DEBUG
    override = os.environ.get(LOG_LEVEL_ENV)
    if override:
        resolved = logging.getLevelName(override.strip().upper())
        if not isinstance(resolved, int):
            raise ConfigurationError(
                "{} must name a logging level, not {!r}".format(LOG_LEVEL_ENV, override)
            )
        level = resolved
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)
    return level
