"""Тесты для модуля логирования.

Этот модуль содержит тесты для компонентов системы логирования:
- JSONFormatter: Тесты форматирования разных типов сообщений
- ContextLogger: Тесты логирования с дополнительным контекстом
- setup_logging: Консоль в поток ошибок, файл только с log_dir, повторная настройка

Фикстуры:
- temp_log_dir: Временная директория для логов
- json_formatter: Экземпляр JSONFormatter
- context_logger: Экземпляр ContextLogger с настроенным обработчиком
"""

import json
import logging
import logging.handlers
import sys

import pytest

from gridtriage.logging import ROOT_LOGGER_NAME, ContextLogger, JSONFormatter, setup_logging


class RecordingHandler(logging.Handler):
    """Обработчик, сохраняющий записи лога для последующей проверки.

    Attributes:
        records: Список записей логов, захваченных обработчиком.
    """

    def __init__(self):
        super().__init__()
        self.records = []

    def emit(self, record):
        self.records.append(record)


@pytest.fixture
def temp_log_dir(tmp_path):
    """Создает временную директорию для логов.

    Args:
        tmp_path: Фикстура pytest, предоставляющая временный путь.

    Returns:
        Путь к временной директории для логов.
    """
    log_dir = tmp_path / "test_logs"
    log_dir.mkdir()
    return log_dir


@pytest.fixture
def json_formatter():
    return JSONFormatter()


@pytest.fixture
def context_logger():
    """Создает экземпляр ContextLogger с записывающим обработчиком.

    Returns:
        Кортеж (логгер, обработчик).
    """
    logger = ContextLogger("test_logger")
    logger.setLevel(logging.DEBUG)
    handler = RecordingHandler()
    logger.addHandler(handler)
    return logger, handler


def test_json_formatter_basic_format(json_formatter):
    """Базовая запись превращается в JSON со всеми обязательными полями."""
    record = logging.LogRecord(
        name="gridtriage.core.network",
        level=logging.INFO,
        pathname="network.py",
        lineno=42,
        msg="Радиальная сеть построена",
        args=(),
        exc_info=None,
    )
    data = json.loads(json_formatter.format(record))

    assert data["message"] == "Радиальная сеть построена"
    assert data["level"] == "INFO"
    assert data["logger"] == "gridtriage.core.network"
    assert data["path"] == "network.py"
    assert data["line"] == 42
    assert "timestamp" in data
    assert "exception" not in data


def test_json_formatter_error_with_exception(json_formatter):
    """Для ERROR с exc_info добавляется блок exception."""
    try:
        raise ValueError("Тестовая ошибка")
    except ValueError:
        record = logging.LogRecord(
            name="gridtriage",
            level=logging.ERROR,
            pathname="cli.py",
            lineno=7,
            msg="Произошла ошибка",
            args=(),
            exc_info=sys.exc_info(),
        )
    data = json.loads(json_formatter.format(record))

    assert data["exception"]["type"] == "ValueError"
    assert data["exception"]["message"] == "Тестовая ошибка"
    assert isinstance(data["exception"]["traceback"], list)


def test_json_formatter_serializes_extra_fields(json_formatter):
    record = logging.LogRecord("gridtriage", logging.DEBUG, "x.py", 1, "msg", (), None)
    record.extra_fields = {"wind_kmh": 105, "targets": (4, 6, 24)}
    data = json.loads(json_formatter.format(record))
    assert data["extra_fields"] == {"wind_kmh": 105, "targets": [4, 6, 24]}


def test_context_logger_extra_fields(context_logger):
    logger, handler = context_logger
    logger.warning("Класс нарушает порядок", extra_fields={"code": "W-ORDERING", "parameter": "p0"})

    assert len(handler.records) == 1
    record = handler.records[0]
    assert record.extra_fields == {"code": "W-ORDERING", "parameter": "p0"}
    assert record.levelno == logging.WARNING


def test_context_logger_skips_disabled_levels(context_logger):
    logger, handler = context_logger
    logger.setLevel(logging.INFO)
    logger.debug("не попадёт", extra_fields={"a": 1})
    assert handler.records == []


def test_package_loggers_are_context_loggers():
    import gridtriage.core.network

    assert isinstance(logging.getLogger(gridtriage.core.network.__name__), ContextLogger)


def test_console_goes_to_stderr_only(capsys):
    """Диагностика пишется в поток ошибок; стандартный вывод остаётся для отчётов."""
    logger = setup_logging()
    logging.getLogger("gridtriage.services").warning("Предупреждение")
    logging.getLogger("gridtriage.services").info("Не выводится без --verbose")

    captured = capsys.readouterr()
    assert captured.out == ""
    assert "Предупреждение" in captured.err
    assert "Не выводится" not in captured.err
    assert logger.name == ROOT_LOGGER_NAME


def test_verbose_enables_debug(capsys):
    setup_logging(verbose=True)
    logging.getLogger("gridtriage.core").debug("Отладка")
    assert "Отладка" in capsys.readouterr().err


def test_file_handler_only_with_log_dir(temp_log_dir):
    logger = setup_logging()
    assert not any(isinstance(h, logging.handlers.RotatingFileHandler) for h in logger.handlers)

    logger = setup_logging(log_dir=temp_log_dir)
    file_handlers = [h for h in logger.handlers if isinstance(h, logging.handlers.RotatingFileHandler)]
    assert len(file_handlers) == 1
    assert file_handlers[0].maxBytes == 10_000_000
    assert file_handlers[0].backupCount == 5

    logging.getLogger("gridtriage.services").info("Оценка выполнена", extra_fields={"lines": 33})
    for handler in logger.handlers:
        handler.flush()
    lines = (temp_log_dir / "gridtriage.log").read_text(encoding="utf-8").splitlines()
    records = [json.loads(line) for line in lines]
    assert any(record.get("extra_fields") == {"lines": 33} for record in records)


def test_setup_logging_is_idempotent(temp_log_dir):
    setup_logging(log_dir=temp_log_dir)
    logger = setup_logging(log_dir=temp_log_dir)
    assert len(logger.handlers) == 2
    assert logger.propagate is False
