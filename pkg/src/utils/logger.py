"""Logging utilities"""

import logging
from pathlib import Path
from typing import Optional

from config.config import Config

_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _level(name: str, default: int) -> int:
    return getattr(logging, str(name).upper(), default)


def setup_logger(name: str = "femtoscopy", log_file: Optional[str] = None) -> logging.Logger:
    """
    Setup and configure logger

    Console output goes to stderr at Config.LOG_CONSOLE_LEVEL so that result
    lines on stdout stay clean. A file handler is added only when a log file
    is given here or through Config.LOG_FILE.

    Args:
        name: Logger name, normally the calling module's __name__
        log_file: Path of a DEBUG log file (default Config.LOG_FILE)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)

    # Avoid adding handlers multiple times
    if logger.handlers:
        return logger

    logger.setLevel(_level(Config.LOG_LEVEL, logging.INFO))
    logger.propagate = False
    formatter = logging.Formatter(_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')

    console_handler = logging.StreamHandler()
    console_handler.setLevel(_level(Config.LOG_CONSOLE_LEVEL, logging.WARNING))
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    log_file = Config.LOG_FILE if log_file is None else log_file
    if log_file:
        log_file_path = Path(log_file)
        log_file_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file_path)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger
