# weylzhu/logger_config.py
import logging
import os
from datetime import datetime


def _log_filename(name, log_dir):
    return os.path.abspath(os.path.join(
        log_dir,
        f"{name.replace('.', '_')}_{datetime.now().strftime('%Y%m%d')}.log"
    ))


def setup_logger(name, log_dir=None, level=logging.INFO):
    """
    Configure the package logger for command-line runs

    Library modules only call logging.getLogger(__name__); this is the one
    place that attaches handlers. Calling it again adjusts the console level
    and swaps the file handler when log_dir changes.

    Args:
        name: Logger name (the package name for CLI runs)
        log_dir: Directory for a daily log file, or None for console only
        level: Minimum level shown on the console

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(min(level, logging.DEBUG) if log_dir else level)

    # Avoid adding a second console handler
    console_handler = next(
        (h for h in logger.handlers if type(h) is logging.StreamHandler), None
    )
    if console_handler is None:
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(
            logging.Formatter('%(levelname)s - %(name)s - %(message)s')
        )
        logger.addHandler(console_handler)
    console_handler.setLevel(level)

    log_filename = _log_filename(name, log_dir) if log_dir else None
    for handler in [h for h in logger.handlers if isinstance(h, logging.FileHandler)]:
        if handler.baseFilename == log_filename:
            log_filename = None
            continue
        logger.removeHandler(handler)
        handler.close()

    if log_filename:
        os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.FileHandler(log_filename)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s'
        ))
        logger.addHandler(file_handler)
        logger.debug(f"Logging to {log_filename}")

    logger.propagate = False
    return logger
