# tests/test_logger_config.py
import logging

import pytest

from weylzhu.logger_config import setup_logger


@pytest.fixture
def logger_name():
    name = "weylzhu.test_logger"
    yield name
    logger = logging.getLogger(name)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


def file_handlers(logger):
    return [h for h in logger.handlers if isinstance(h, logging.FileHandler)]


def test_console_only_by_default(logger_name):
    logger = setup_logger(logger_name)
    assert len(logger.handlers) == 1
    assert file_handlers(logger) == []
    assert logger.propagate is False


def test_repeated_setup_keeps_one_console_handler(logger_name):
    setup_logger(logger_name)
    logger = setup_logger(logger_name, level=logging.DEBUG)
    consoles = [h for h in logger.handlers if type(h) is logging.StreamHandler]
    assert len(consoles) == 1
    assert consoles[0].level == logging.DEBUG


def test_new_log_dir_replaces_file_handler(logger_name, tmp_path):
    first, second = tmp_path / "first", tmp_path / "second"
    setup_logger(logger_name, first)
    logger = setup_logger(logger_name, second)
    handlers = file_handlers(logger)
    assert len(handlers) == 1
    assert handlers[0].baseFilename.startswith(str(second))
    logger.info("written to the second directory")
    handlers[0].flush()
    assert list(second.glob("*.log"))[0].read_text().endswith("written to the second directory\n")


def test_same_log_dir_is_not_duplicated(logger_name, tmp_path):
    setup_logger(logger_name, tmp_path)
    logger = setup_logger(logger_name, tmp_path)
    assert len(file_handlers(logger)) == 1


def test_dropping_log_dir_removes_file_handler(logger_name, tmp_path):
    setup_logger(logger_name, tmp_path)
    logger = setup_logger(logger_name)
    assert file_handlers(logger) == []
