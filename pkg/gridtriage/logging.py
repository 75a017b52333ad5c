"""Конфигурация логирования для GridTriage.

Модуль предоставляет:
- Структурированное логирование в JSON формате (файл с ротацией)
- Консольный вывод диагностики в стандартный поток ошибок
- Дополнительные поля extra_fields для обогащения записей метаданными

Стандартный вывод зарезервирован под отчёты, поэтому ни один обработчик
не пишет в sys.stdout.

Модуль содержит:
- JSONFormatter: Форматтер для вывода логов в JSON формате
- ContextLogger: Логгер с поддержкой дополнительных полей
- setup_logging: Функция настройки системы логирования

Примеры:
    >>> from gridtriage.logging import setup_logging
    >>> setup_logging(log_dir="logs", verbose=True)
    >>> logger = logging.getLogger("gridtriage.core")
    >>> logger.info("Сеть построена", extra_fields={"lines": 33})
"""

import json
import logging
import os
import sys
import traceback
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict, Optional, Union

ROOT_LOGGER_NAME = "gridtriage"


class JSONFormatter(logging.Formatter):
    """Форматтер для структурированного вывода логов в JSON формате.

    Note:
        Формат JSON-лога включает поля timestamp, message, level, logger,
        path, line, function, а также exception (для ERROR и выше) и
        extra_fields, если они были переданы.
    """

    def format(self, record: logging.LogRecord) -> str:
        """Форматирует запись лога в JSON.

        Args:
            record: Запись лога для форматирования.

        Returns:
            JSON-строка, представляющая запись лога.
        """
        message_dict: Dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "message": record.getMessage(),
            "level": record.levelname,
            "logger": record.name,
            "path": record.pathname,
            "line": record.lineno,
            "function": record.funcName,
        }

        # Расширенный контекст для ошибок
        if record.levelno >= logging.ERROR and record.exc_info:
            exc_type, exc_value, exc_tb = record.exc_info
            message_dict["exception"] = {
                "type": exc_type.__name__ if exc_type else "Unknown",
                "message": str(exc_value) if exc_value else "",
                "traceback": (
                    traceback.format_exception(exc_type, exc_value, exc_tb)
                    if all([exc_type, exc_value, exc_tb])
                    else []
                ),
            }

        extra_fields = getattr(record, "extra_fields", None)
        if extra_fields:
            message_dict["extra_fields"] = extra_fields

        return json.dumps(message_dict, ensure_ascii=False, default=str)


class ContextLogger(logging.Logger):
    """Логгер с поддержкой дополнительных полей контекста.

    Методы debug/info/warning/error принимают именованный параметр
    extra_fields; он попадает в запись как атрибут extra_fields.
    """

    def _log_with_context(
        self,
        level: int,
        msg: object,
        args: tuple[Any, ...] = (),
        extra_fields: Optional[Dict[str, Any]] = None,
        **kwargs: Any,
    ) -> None:
        if not self.isEnabledFor(level):
            return
        if extra_fields:
            kwargs.setdefault("extra", {})
            kwargs["extra"]["extra_fields"] = extra_fields
        kwargs.setdefault("stacklevel", 3)
        super()._log(level, msg, args, **kwargs)

    def debug(
        self, msg: object, *args: object, extra_fields: Optional[Dict[str, Any]] = None, **kwargs: Any
    ) -> None:
        """Отладочное сообщение с дополнительным контекстом."""
        self._log_with_context(logging.DEBUG, msg, args, extra_fields, **kwargs)

    def info(
        self, msg: object, *args: object, extra_fields: Optional[Dict[str, Any]] = None, **kwargs: Any
    ) -> None:
        """Информационное сообщение с дополнительным контекстом.

        Examples:
            >>> logger = logging.getLogger("gridtriage")
            >>> logger.info("Оценка выполнена", extra_fields={"wind_kmh": 105, "lines": 33})
        """
        self._log_with_context(logging.INFO, msg, args, extra_fields, **kwargs)

    def warning(
        self, msg: object, *args: object, extra_fields: Optional[Dict[str, Any]] = None, **kwargs: Any
    ) -> None:
        """Предупреждение с дополнительным контекстом."""
        self._log_with_context(logging.WARNING, msg, args, extra_fields, **kwargs)

    def error(
        self, msg: object, *args: object, extra_fields: Optional[Dict[str, Any]] = None, **kwargs: Any
    ) -> None:
        """Ошибка с дополнительным контекстом."""
        self._log_with_context(logging.ERROR, msg, args, extra_fields, **kwargs)


# Логгеры пакета создаются при импорте модулей, поэтому класс регистрируется сразу
logging.setLoggerClass(ContextLogger)


def setup_logging(
    log_dir: Optional[Union[str, Path]] = None, verbose: bool = False
) -> logging.Logger:
    """Настраивает систему логирования.

    Повторный вызов заменяет обработчики, а не добавляет новые.

    Args:
        log_dir: Директория для JSON-лога с ротацией (10MB, 5 файлов).
            Если не указана, пишется только консольный лог.
        verbose: Выводить в консоль сообщения уровня DEBUG.

    Returns:
        Корневой логгер пакета.

    Raises:
        PermissionError: Если нет прав на создание директории или файлов логов.
    """
    logger = logging.getLogger(ROOT_LOGGER_NAME)
    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    console_formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s", datefmt="%Y-%m-%d %H:%M:%S"
    )
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(console_formatter)
    console_handler.setLevel(logging.DEBUG if verbose else logging.WARNING)
    logger.addHandler(console_handler)

    if log_dir is not None:
        os.makedirs(log_dir, exist_ok=True)
        file_handler = RotatingFileHandler(
            os.path.join(log_dir, "gridtriage.log"),
            maxBytes=10_000_000,
            backupCount=5,
            encoding="utf-8",
        )
        file_handler.setFormatter(JSONFormatter())
        file_handler.setLevel(logging.DEBUG)
        logger.addHandler(file_handler)

    logger.debug(
        "Система логирования инициализирована",
        extra_fields={"log_dir": str(log_dir) if log_dir else None, "verbose": verbose},
    )
    return logger
