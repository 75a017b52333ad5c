"""Модуль контекста и уровней серьезности ошибок.

Вводит контекст ошибки: операция, детали (идентификаторы шин, линий, классов,
файл и строка), уровень серьезности и рекомендуемое действие. Все исключения
GridTriage несут такой контекст, поэтому диагностика CLI всегда указывает,
на каком объекте сломались данные.

Примеры использования:
    >>> from gridtriage.errors.error_context import ErrorContext, ErrorSeverity
    >>>
    >>> context = ErrorContext(
    ...     operation="build_network",
    ...     details={"bus_id": 5, "line_ids": [4, 7]},
    ...     severity=ErrorSeverity.ERROR,
    ...     recovery_action="Оставьте одну питающую линию для шины",
    ... )
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional


class ErrorSeverity(Enum):
    """Уровни серьезности ошибок.

    Attributes:
        INFO: Информационное сообщение, не требующее действий
        WARNING: Предупреждение о качестве данных, расчёт продолжается
        ERROR: Ошибка входных данных или параметров, расчёт прерван
        CRITICAL: Внутренняя ошибка, требующая вмешательства разработчика
    """

    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


@dataclass
class ErrorContext:
    """Контекст ошибки для детализированного логирования и обработки.

    Attributes:
        operation: Название операции, во время которой произошла ошибка
        details: Словарь с идентификаторами проблемных объектов и прочими деталями
        severity: Уровень серьезности ошибки
        recovery_action: Опциональная подсказка, как исправить входные данные

    Examples:
        >>> context = ErrorContext(
        ...     operation="load_dataset",
        ...     details={"file": "poles.csv", "row": 12},
        ...     severity=ErrorSeverity.ERROR,
        ...     recovery_action="Проверьте class_id в строке",
        ... )
        >>> context.severity.value
        'ERROR'
    """

    operation: str
    details: Dict[str, Any]
    severity: ErrorSeverity
    recovery_action: Optional[str] = None
