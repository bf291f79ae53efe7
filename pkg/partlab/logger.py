"""
Logging for partlab runs. Reports own stdout, so every handler set up here
writes to stderr or to a log file.
"""

import logging
import sys
import time
from datetime import timedelta

import fsspec

from partlab import RejectedInputError

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class LogFormatter(logging.Formatter):
    """
    `LEVEL   +H:MM:SS [pid] message`, with the time counted from the start of
    the run. Continuation lines (tracebacks, multi-line messages) are indented
    under the message so sweeps from several workers stay readable.
    """

    def __init__(self, start_time: float | None = None):
        super().__init__()
        self.start_time = time.time() if start_time is None else start_time

    def elapsed(self, record: logging.LogRecord) -> timedelta:
        return timedelta(seconds=round(record.created - self.start_time))

    def format(self, record: logging.LogRecord) -> str:
        prefix = f"{record.levelname:<7} +{self.elapsed(record)} [{record.process}] "
        blocks = [record.getMessage()]
        if record.exc_info and not record.exc_text:
            record.exc_text = self.formatException(record.exc_info)
        if record.exc_text:
            blocks.append(record.exc_text)
        if record.stack_info:
            blocks.append(self.formatStack(record.stack_info))
        body = "\n".join(block.rstrip("\n") for block in blocks)
        return prefix + body.replace("\n", "\n" + " " * len(prefix))


def parse_log_level(log_level: str) -> int:
    name = log_level.upper()
    if name not in LOG_LEVELS:
        raise RejectedInputError(
            f"Unknown log level {log_level!r}, expected one of {list(LOG_LEVELS)}"
        )
    return logging.getLevelName(name)


def init_logger(log_file: str | None = None, *, level: str = "WARNING"):
    """
    Configures the root logger for one run, replacing handlers from earlier runs
    in the same process.

    Args:
        log_file: Optional fsspec path; lines are appended to it.
        level: Name of the root level, e.g. "INFO".
    """
    logger = logging.getLogger()
    logger.setLevel(parse_log_level(level))
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = LogFormatter()
    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setFormatter(formatter)
    logger.addHandler(stderr_handler)

    if log_file is not None:
        file_handler = logging.StreamHandler(fsspec.open(log_file, mode="a").open())
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
