import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Optional

import colorlog

LOG_COLORS = {
    'DEBUG':    'cyan',
    'INFO':     'green',
    'WARNING':  'yellow',
    'ERROR':    'red',
    'CRITICAL': 'red,bg_white',
}


def setup_logger(name: str = "shufflepd",
                 log_file: Optional[str] = None,
                 level: str = "INFO",
                 max_size_mb: int = 10,
                 backup_count: int = 5) -> logging.Logger:
    """
    Configure the package logger

    Args:
        name: Logger name
        log_file: Optional path of a rotating log file
        level: Level name (DEBUG, INFO, WARNING, ERROR)
        max_size_mb: Rotation size of the log file
        backup_count: Rotated files to keep

    Returns:
        The configured logger
    """
    logger = colorlog.getLogger(name)
    logger.setLevel(getattr(logging, str(level).upper(), logging.INFO))
    logger.propagate = False

    # Stdout carries data, so diagnostics always go to stderr
    if not any(getattr(h, '_shufflepd_stream', False) for h in logger.handlers):
        handler = colorlog.StreamHandler(sys.stderr)
        handler.setFormatter(colorlog.ColoredFormatter(
            '%(log_color)s%(levelname)-8s%(reset)s %(blue)s%(message)s',
            datefmt=None,
            reset=True,
            log_colors=LOG_COLORS,
            secondary_log_colors={},
            style='%'
        ))
        handler._shufflepd_stream = True
        logger.addHandler(handler)

    if log_file and not any(getattr(h, '_shufflepd_file', None) == log_file
                            for h in logger.handlers):
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=max_size_mb * 1024 * 1024,
            backupCount=backup_count,
            encoding='utf-8'
        )
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s %(levelname)-8s %(name)s: %(message)s'
        ))
        file_handler._shufflepd_file = log_file
        logger.addHandler(file_handler)

    return logger


class RunLogger:
    """Uniform records for budgets, censoring and checks"""

    def __init__(self, base: logging.Logger):
        self.base = base

    def log_budget_exceeded(self, what: str, limit: int):
        self.base.warning(f"BUDGET {what}: limit {limit} reached")

    def log_censored(self, index: int, reason: str):
        self.base.info(f"CENSORED sample #{index}: {reason}")

    def log_run(self, command: str, **fields):
        details = ", ".join(f"{k}={v}" for k, v in sorted(fields.items()))
        self.base.info(f"RUN {command}" + (f" ({details})" if details else ""))

    def log_check(self, name: str, passed: bool, detail: str = ""):
        status = "PASS" if passed else "FAIL"
        line = f"CHECK {name}: {status}"
        if detail:
            line += f" - {detail}"
        if passed:
            self.base.info(line)
        else:
            self.base.error(line)


logger = setup_logger()
run_logger = RunLogger(logger)
