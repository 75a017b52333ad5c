"""Модуль обработки ошибок и исключений GridTriage.

Каждая ошибка несёт ErrorContext с идентификаторами проблемных объектов,
поэтому сообщение CLI указывает конкретные линии, шины, классы или строку файла.

Основные компоненты:
- ErrorContext, ErrorSeverity: Контекст и уровень серьезности ошибки
- AppError: Базовый класс ошибок приложения
- TopologyError, FragilityError, DamageError, DataError: Семейства доменных ошибок
- ErrorHandler: Централизованное логирование ошибок
- exit_code_for: Отображение ошибки в код завершения CLI

Пример использования:
    >>> from gridtriage.errors import ErrorHandler, UnknownBus
    >>> handler = ErrorHandler()
    >>> try:
    ...     raise UnknownBus(42)
    ... except UnknownBus as e:
    ...     handler.handle_error(e, "path_from_source")
"""

from gridtriage.errors.error_context import ErrorContext, ErrorSeverity
from gridtriage.errors.error_handlers import (
    EXIT_OK,
    EXIT_PARSE,
    EXIT_VALIDATION,
    AppError,
    CycleDetected,
    DamageError,
    DataError,
    DegenerateCurve,
    DisconnectedBus,
    DuplicateClass,
    DuplicateEnergizingLine,
    DuplicateId,
    ErrorHandler,
    FragilityError,
    InvalidScenario,
    LoadedRoot,
    NegativeDuration,
    NonpositiveAverage,
    ParseError,
    SchemaError,
    TopologyError,
    UnknownBus,
    UnknownClass,
    UnknownLine,
    UnknownRoot,
    ValidationError,
    exit_code_for,
)

__all__ = [
    "EXIT_OK",
    "EXIT_PARSE",
    "EXIT_VALIDATION",
    "AppError",
    "CycleDetected",
    "DamageError",
    "DataError",
    "DegenerateCurve",
    "DisconnectedBus",
    "DuplicateClass",
    "DuplicateEnergizingLine",
    "DuplicateId",
    "ErrorContext",
    "ErrorHandler",
    "ErrorSeverity",
    "FragilityError",
    "InvalidScenario",
    "LoadedRoot",
    "NegativeDuration",
    "NonpositiveAverage",
    "ParseError",
    "SchemaError",
    "TopologyError",
    "UnknownBus",
    "UnknownClass",
    "UnknownLine",
    "UnknownRoot",
    "ValidationError",
    "exit_code_for",
]
