import logging

from core.config import load_settings
from core.errors import ParseError, SuperAlgebraError
from core.logger import setup_logger


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv('SUPERSYM_MAX_WORKERS', '0')
    monkeypatch.setenv('SUPERSYM_SEED', '42')
    monkeypatch.setenv('SUPERSYM_MAX_DEGREE', 'lots')
    monkeypatch.setenv('SUPERSYM_LOG_LEVEL', 'info')
    settings = load_settings()
    assert settings.max_workers == 1
    assert settings.seed == 42
    assert settings.max_degree == 3
    assert settings.log_level == 'INFO'


def test_logger_writes_dated_file(tmp_path):
    logger = setup_logger('supersym.test', level='INFO', log_dir=str(tmp_path))
    logger.info('hello')
    for handler in logger.handlers:
        handler.flush()
    files = list(tmp_path.glob('supersym.test_*.log'))
    assert len(files) == 1
    assert 'supersym.test - INFO - hello' in files[0].read_text()
    assert setup_logger('supersym.test') is logger
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)
    assert logger.level == logging.INFO


def test_errors_are_value_errors():
    assert issubclass(ParseError, SuperAlgebraError)
    assert issubclass(SuperAlgebraError, ValueError)
