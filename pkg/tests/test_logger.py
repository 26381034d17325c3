import logging

from config.config import Config
from src.utils.logger import setup_logger


def test_console_only_by_default(monkeypatch):
    monkeypatch.setattr(Config, "LOG_FILE", "")
    logger = setup_logger("femtoscopy.test.console")
    assert [type(h) for h in logger.handlers] == [logging.StreamHandler]
    assert logger.handlers[0].level == logging.WARNING
    assert not logger.propagate


def test_explicit_log_file_gets_debug_records(tmp_path):
    path = tmp_path / "nested" / "run.log"
    logger = setup_logger("femtoscopy.test.file", log_file=str(path))
    logger.setLevel(logging.DEBUG)
    logger.debug("scan step 3")
    for handler in logger.handlers:
        handler.close()
    assert "DEBUG - scan step 3" in path.read_text()


def test_handlers_are_added_once():
    first = setup_logger("femtoscopy.test.once")
    second = setup_logger("femtoscopy.test.once")
    assert first is second
    assert len(second.handlers) == 1 + bool(Config.LOG_FILE)
