"""Модуль централизованной обработки ошибок.

Предоставляет базовую ошибку приложения, семейства доменных ошибок
(топология сети, кривые хрупкости, оценка повреждений, входные данные)
и обработчик, который логирует ошибки в едином формате.

Модуль содержит:
- AppError: Базовый класс для всех ошибок приложения
- TopologyError и наследники: CycleDetected, DisconnectedBus, DuplicateEnergizingLine, DuplicateId, LoadedRoot,
  UnknownRoot, UnknownLine, UnknownBus
- FragilityError и наследники: DegenerateCurve, DuplicateClass, UnknownClass
- DamageError и наследники: NonpositiveAverage, NegativeDuration
- DataError и наследники: ParseError, SchemaError, ValidationError, InvalidScenario
- ErrorHandler: Класс для централизованной обработки ошибок
- exit_code_for: Код завершения процесса для ошибки

Примеры:
    >>> try:
    ...     raise DuplicateEnergizingLine(5, [4, 7])
    ... except TopologyError as e:
    ...     ErrorHandler().handle_error(e, "build_network")
"""

import logging
from typing import Any, Callable, Dict, List, Optional, Sequence

from gridtriage.errors.error_context import ErrorContext, ErrorSeverity

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2


class AppError(Exception):
    """Базовый класс для всех ошибок приложения.

    Attributes:
        message (str): Описание ошибки.
        context (Optional[ErrorContext]): Контекст ошибки (операция, детали, уровень серьезности).
        original_error (Optional[Exception]): Исходное исключение, если обёрнуто.
    """

    def __init__(
        self,
        message: str,
        context: Optional[ErrorContext] = None,
        original_error: Optional[Exception] = None,
    ) -> None:
        self.message = message
        self.context = context
        self.original_error = original_error
        super().__init__(self.format_message())

    def format_message(self) -> str:
        """Форматирует сообщение об ошибке в стандартизированном виде.

        Returns:
            Итоговое сообщение об ошибке с контекстом.

        Examples:
            >>> print(UnknownLine(99).format_message())
            [ERROR] lookup_line: Линия 99 отсутствует в сети
            Context: line_id: 99, error_type: UnknownLine
            Рекомендуемое действие: Проверьте идентификатор линии
        """
        if not self.context:
            return self.message

        base_msg = f"[{self.context.severity.value}] {self.context.operation}: {self.message}"

        if self.context.details:
            details_str = ", ".join(f"{k}: {v}" for k, v in self.context.details.items())
            base_msg += f"\nContext: {details_str}"

        if self.context.recovery_action:
            base_msg += f"\nРекомендуемое действие: {self.context.recovery_action}"
        return base_msg

    @property
    def details(self) -> Dict[str, Any]:
        """Детали контекста (пустой словарь, если контекста нет)."""
        return self.context.details if self.context else {}


def _context(
    operation: str, error_type: str, recovery_action: str, **details: Any
) -> ErrorContext:
    details["error_type"] = error_type
    return ErrorContext(
        operation=operation,
        details=details,
        severity=ErrorSeverity.ERROR,
        recovery_action=recovery_action,
    )


# Топология сети
# --------------


class TopologyError(AppError):
    """Нарушение радиальной структуры сети или ссылка на несуществующий элемент."""


class CycleDetected(TopologyError):
    """Линии образуют цикл: сеть не является деревом."""

    def __init__(self, line_ids: Sequence[int]) -> None:
        self.line_ids = sorted(line_ids)
        super().__init__(
            f"Обнаружен цикл, образованный линиями {self.line_ids}",
            _context(
                "build_network",
                "CycleDetected",
                "Удалите лишнюю линию: радиальная сеть не содержит петель",
                line_ids=self.line_ids,
            ),
        )


class DisconnectedBus(TopologyError):
    """Шины, недостижимые из корня сети."""

    def __init__(self, bus_ids: Sequence[int]) -> None:
        self.bus_ids = sorted(bus_ids)
        super().__init__(
            f"Шины {self.bus_ids} не связаны с корнем сети",
            _context(
                "build_network",
                "DisconnectedBus",
                "Добавьте питающую линию для каждой шины",
                bus_ids=self.bus_ids,
            ),
        )


class DuplicateEnergizingLine(TopologyError):
    """Одна шина питается более чем одной линией."""

    def __init__(self, bus_id: int, line_ids: Sequence[int]) -> None:
        self.bus_id = bus_id
        self.line_ids = sorted(line_ids)
        super().__init__(
            f"Шина {bus_id} питается несколькими линиями {self.line_ids}",
            _context(
                "build_network",
                "DuplicateEnergizingLine",
                "Оставьте одну питающую линию для шины",
                bus_id=bus_id,
                line_ids=self.line_ids,
            ),
        )


class UnknownRoot(TopologyError):
    """Корень сети отсутствует среди шин."""

    def __init__(self, bus_id: int) -> None:
        self.bus_id = bus_id
        super().__init__(
            f"Корневая шина {bus_id} отсутствует в сети",
            _context("build_network", "UnknownRoot", "Укажите существующую шину-источник", bus_id=bus_id),
        )


class DuplicateId(TopologyError):
    """Повторяющийся идентификатор шины или линии."""

    def __init__(self, kind: str, item_id: int) -> None:
        self.kind = kind
        self.item_id = item_id
        super().__init__(
            f"Идентификатор {kind} {item_id} встречается более одного раза",
            _context(
                "build_network",
                "DuplicateId",
                "Идентификаторы должны быть уникальны",
                kind=kind,
                id=item_id,
            ),
        )


class LoadedRoot(TopologyError):
    """Корневая (балансирующая) шина не может иметь нагрузку."""

    def __init__(self, bus_id: int, load: float) -> None:
        self.bus_id = bus_id
        super().__init__(
            f"Корневая шина {bus_id} имеет нагрузку {load} кВт, ожидается 0",
            _context("build_network", "LoadedRoot", "Обнулите нагрузку шины-источника", bus_id=bus_id),
        )


class UnknownLine(TopologyError):
    """Запрошена линия, которой нет в сети."""

    def __init__(self, line_id: int) -> None:
        self.line_id = line_id
        super().__init__(
            f"Линия {line_id} отсутствует в сети",
            _context("lookup_line", "UnknownLine", "Проверьте идентификатор линии", line_id=line_id),
        )


class UnknownBus(TopologyError):
    """Запрошена шина, которой нет в сети."""

    def __init__(self, bus_id: int) -> None:
        self.bus_id = bus_id
        super().__init__(
            f"Шина {bus_id} отсутствует в сети",
            _context("lookup_bus", "UnknownBus", "Проверьте идентификатор шины", bus_id=bus_id),
        )


# Кривые хрупкости
# ----------------


class FragilityError(AppError):
    """Ошибки параметров кривых хрупкости."""


class DegenerateCurve(FragilityError):
    """Кривая с v_max <= v_th: наклон не определён."""

    def __init__(self, class_id: int, v_th: float, v_max: float) -> None:
        self.class_id = class_id
        super().__init__(
            f"Вырожденная кривая класса {class_id}: v_max={v_max} не превышает v_th={v_th}",
            _context(
                "fragility_slope",
                "DegenerateCurve",
                "Задайте v_max строго больше v_th",
                class_id=class_id,
                v_th=v_th,
                v_max=v_max,
            ),
        )


class DuplicateClass(FragilityError):
    """Несколько классов опор с одним номером."""

    def __init__(self, class_ids: Sequence[int]) -> None:
        self.class_ids = sorted(class_ids)
        super().__init__(
            f"Повторяющиеся номера классов опор: {self.class_ids}",
            _context(
                "fragility_set",
                "DuplicateClass",
                "Оставьте по одной строке на класс в classes.csv",
                class_ids=self.class_ids,
            ),
        )


class UnknownClass(FragilityError):
    """Ссылка на класс срока службы, отсутствующий в наборе."""

    def __init__(self, class_id: int, line_id: Optional[int] = None) -> None:
        self.class_id = class_id
        self.line_id = line_id
        super().__init__(
            f"Класс опор {class_id} не описан в наборе кривых",
            _context(
                "line_damaged_poles",
                "UnknownClass",
                "Добавьте класс в classes.csv или исправьте poles.csv",
                class_id=class_id,
                line_id=line_id,
            ),
        )


# Оценка повреждений
# ------------------


class DamageError(AppError):
    """Ошибки параметров расчёта повреждений и времени ремонта."""


class NonpositiveAverage(DamageError):
    """Среднее время ремонта опоры должно быть положительным."""

    def __init__(self, value: float) -> None:
        self.value = value
        super().__init__(
            f"Среднее время ремонта опоры должно быть больше нуля, получено {value}",
            _context(
                "line_repair_time",
                "NonpositiveAverage",
                "Укажите --avg-repair-hours больше нуля",
                value=value,
            ),
        )


class NegativeDuration(DamageError):
    """Отрицательная длительность ремонта отдельной опоры."""

    def __init__(self, index: int, value: float) -> None:
        self.index = index
        self.value = value
        super().__init__(
            f"Длительность ремонта опоры #{index} отрицательна: {value}",
            _context(
                "line_repair_time_itemized",
                "NegativeDuration",
                "Длительности ремонта не могут быть отрицательными",
                index=index,
                value=value,
            ),
        )


# Входные данные
# --------------


class DataError(AppError):
    """Ошибки чтения и проверки входных файлов."""


class ParseError(DataError):
    """Файл не удаётся разобрать (синтаксис CSV/JSON/key=value, нечисловое значение)."""

    def __init__(
        self, message: str, file: str, row: Optional[int] = None, column: Optional[str] = None
    ) -> None:
        self.file = file
        self.row = row
        self.column = column
        super().__init__(
            message,
            _context(
                "parse",
                "ParseError",
                "Проверьте синтаксис файла и типы значений",
                file=file,
                row=row,
                column=column,
            ),
        )


class SchemaError(DataError):
    """Нарушена схема: нет колонки, лишний ключ, ссылка на несуществующий объект."""

    def __init__(self, message: str, file: str, field: str, row: Optional[int] = None) -> None:
        self.file = file
        self.field = field
        self.row = row
        super().__init__(
            message,
            _context(
                "schema",
                "SchemaError",
                "Сверьте заголовки и ссылки с описанием схем",
                file=file,
                row=row,
                field=field,
            ),
        )


class ValidationError(DataError):
    """Значения не прошли проверку модели (диапазоны, уникальность, топология)."""

    def __init__(
        self,
        message: str,
        file: str,
        row: Optional[int] = None,
        original_error: Optional[Exception] = None,
    ) -> None:
        self.file = file
        self.row = row
        super().__init__(
            message,
            _context(
                "validate",
                "ValidationError",
                "Исправьте значения в указанной строке",
                file=file,
                row=row,
            ),
            original_error,
        )


class InvalidScenario(DataError):
    """Недопустимые параметры сценария или развёртки по скорости ветра."""

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(
            message,
            _context(
                "scenario",
                "InvalidScenario",
                "Проверьте параметры сценария (--wind, --from/--to/--step, файл сценария)",
                **details,
            ),
        )


def exit_code_for(error: BaseException) -> int:
    """Возвращает код завершения CLI для ошибки.

    Args:
        error: Перехваченное исключение.

    Returns:
        2 для ошибок разбора, 1 для прочих ошибок приложения и проверки.
    """
    if isinstance(error, ParseError):
        return EXIT_PARSE
    return EXIT_VALIDATION


class ErrorHandler:
    """Обработчик ошибок приложения.

    Логирует ошибки приложения в стандартизированном формате, а встроенные
    исключения Python предварительно оборачивает в AppError.
    """

    @staticmethod
    def _default_log_callback(msg: str, severity: str) -> None:
        level = logging.WARNING if severity == ErrorSeverity.WARNING.value else logging.ERROR
        logger.log(level, msg)

    def __init__(self, log_callback: Optional[Callable[[str, str], None]] = None) -> None:
        """
        Args:
            log_callback: Функция, принимающая (message, severity);
                по умолчанию пишет в logger модуля.
        """
        self.log_callback = log_callback if log_callback else self._default_log_callback
        self.handled: List[AppError] = []

    def handle_error(
        self,
        error: Exception,
        operation: str,
        severity: ErrorSeverity = ErrorSeverity.ERROR,
        recovery_action: Optional[str] = None,
        additional_context: Optional[Dict[str, Any]] = None,
    ) -> AppError:
        """Обрабатывает ошибку и логирует её в стандартизированном формате.

        Args:
            error: Исключение для обработки.
            operation: Название операции, при которой произошла ошибка.
            severity: Уровень серьезности ошибки (по умолчанию ERROR).
            recovery_action: Рекомендуемое действие для восстановления.
            additional_context: Дополнительные детали для логирования.

        Returns:
            AppError, который был залогирован (исходный или обёртка).
        """
        details: Dict[str, Any] = {"error_type": type(error).__name__}
        if additional_context:
            details.update(additional_context)

        if isinstance(error, AppError) and error.context:
            error.context.details.update(details)
            app_error = error
        else:
            context = ErrorContext(
                operation=operation,
                details=details,
                severity=severity,
                recovery_action=recovery_action or self._get_default_recovery_action(error),
            )
            app_error = AppError(str(error), context, error)

        self.handled.append(app_error)
        self.log_callback(app_error.format_message(), severity.value)
        return app_error

    def _get_default_recovery_action(self, error: Exception) -> str:
        error_type = type(error).__name__
        recovery_actions = {
            "FileNotFoundError": "Проверьте существование файла и его путь",
            "PermissionError": "Проверьте права доступа к файлу или директории",
            "ValueError": "Проверьте корректность введённых данных",
            "TypeError": "Проверьте типы передаваемых данных",
            "KeyError": "Проверьте наличие требуемого ключа в данных",
            "OSError": "Проверьте путь вывода и свободное место",
        }
        return recovery_actions.get(error_type, "Обратитесь к документации или администратору")
