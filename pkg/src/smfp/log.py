# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

import logging
import os
from typing import Optional, Union

from smfp.exceptions import ConfigError

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class LoggingMixin(object):

    """
    Gives subclasses a ``log`` attribute named after their module and class.
    """

    _log: Optional[logging.Logger] = None

    @property
    def log(self) -> logging.Logger:
        if self._log is None:
            cls = self.__class__
            self._log = logging.getLogger(f"{cls.__module__}.{cls.__qualname__}")
        return self._log


def configure_logging(level: Union[str, int, None] = None) -> None:
    """
    Configure the root logger for command line use.

    :param level: A level name or number, defaults to ``$SMFP_LOG_LEVEL`` or WARNING
    """

    if level is None:
        level = os.environ.get("SMFP_LOG_LEVEL", "WARNING")
    if isinstance(level, str):
        level = level.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ConfigError(f"unknown log level {level!r}")
    logging.basicConfig(level=level, format=LOG_FORMAT)
