"""
The `logging` module provides the file logger used by the command-line tools.

Classes:
- IsoTimeFormatter: formats record times as ISO-8601 strings.
- SqspLogger: a logger that writes to a file at a configurable path.
"""
import logging
import os
from datetime import datetime
from typing import Union

from sqsp.core.constants import ENV_LOG_PATH


class IsoTimeFormatter(logging.Formatter):
    """
    Log formatter that outputs the time in ISO format.
    """

    def formatTime(self, record, datefmt=None):
        return datetime.fromtimestamp(record.created).isoformat()


class SqspLogger:
    """Wraps the Python logging module to write compiler and verifier runs to a file.

    If no path is given and the 'SQSP_LOG_PATH' environment variable is not set,
    the log goes to the current working directory. The handler is only attached
    on the first message, so constructing a logger never touches the filesystem.
    """

    _log_file_path: str
    _log_file_name: str
    _initialized: bool

    def __init__(
        self,
        log_file_name: Union[str, None] = None,
        log_path: Union[str, None] = None,
    ):
        """
        Args:
                log_file_name (Union[str, None]): name of the log file. If None,
                it is generated from the current timestamp.
                log_path (Union[str, None]): directory of the log file. If None, it
                defaults to 'SQSP_LOG_PATH' or the current working directory.
        """
        self._logger = logging.getLogger("SqspLogger")
        self._logger.setLevel(logging.DEBUG)

        if log_path is None:
            log_path = os.environ.get(ENV_LOG_PATH)

        if log_path is None:
            log_path = os.getcwd()

        if log_file_name is None:
            log_file_name = datetime.now().strftime("%Y-%m-%d_%H-%M-%S.log")

        self._log_file_path = log_path
        self._log_file_name = log_file_name
        self._initialized = False

    @property
    def path(self) -> str:
        """Full path of the log file."""
        return os.path.join(self._log_file_path, self._log_file_name)

    def set_log_file_name(self, log_file_name: str):
        """Set the log file name. Has no effect once the first message is written."""
        self._log_file_name = log_file_name

    def _init_logger(self):
        """Attach the file handler if not already attached."""
        if self._initialized:
            return

        path = os.path.abspath(self.path)
        for handler in self._logger.handlers:
            if isinstance(handler, logging.FileHandler) and handler.baseFilename == path:
                self._initialized = True
                return

        file_handler = logging.FileHandler(path)
        file_handler.setFormatter(
            IsoTimeFormatter("%(asctime)s %(levelname)s %(message)s")
        )
        self._logger.addHandler(file_handler)
        self._initialized = True

    def close(self):
        """Detach and close this logger's file handler."""
        path = os.path.abspath(self.path)
        for handler in list(self._logger.handlers):
            if isinstance(handler, logging.FileHandler) and handler.baseFilename == path:
                self._logger.removeHandler(handler)
                handler.close()
        self._initialized = False

    def _log(self, level: int, message: str):
        self._init_logger()
        self._logger.log(level, message)

    def debug(self, message: str):
        self._log(logging.DEBUG, message)

    def info(self, message: str):
        """Log a run milestone, e.g. a command starting or a compile finishing."""
        self._log(logging.INFO, message)

    def warning(self, message: str):
        self._log(logging.WARNING, message)

    def error(self, message: str):
        """Log a failure; the CLI also prints it to stderr."""
        self._log(logging.ERROR, message)
