"""Модуль управления параметрами сценария урагана.

Параметры сценария собираются из трёх источников с возрастающим приоритетом:
значения по умолчанию, файл сценария (плоский key=value или JSON-объект)
и флаги командной строки.

Формат key=value: одна пара на строку, пустые строки и строки с # пропускаются.
Списки записываются через запятую, переопределения ветра по линиям парами
line:kmh.

Классы:
    ScenarioSettings: Сбор, проверка и сохранение параметров сценария.

Примеры:
    >>> settings = ScenarioSettings(Path("storm.cfg"))
    >>> settings.apply_overrides(wind_kmh=110)
    >>> settings.to_scenario().v_real
    110.0
"""

import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

import pydantic

from gridtriage.config import DEFAULT_AVG_REPAIR_HOURS, DEFAULT_COUNT_ROUNDING, DEFAULT_Q_PRECISION
from gridtriage.errors import InvalidScenario, ParseError, SchemaError, ValidationError
from gridtriage.types import StormScenario

logger = logging.getLogger(__name__)


def _parse_int_list(raw: str) -> List[int]:
    return [int(item) for item in raw.replace(" ", "").split(",") if item]


def _parse_overrides(raw: str) -> Dict[int, float]:
    overrides: Dict[int, float] = {}
    for item in raw.replace(" ", "").split(","):
        if not item:
            continue
        line_id, speed = item.split(":")
        overrides[int(line_id)] = float(speed)
    return overrides


def _parse_precision(raw: str) -> Optional[int]:
    return None if raw.lower() == "none" else int(raw)


_PARSERS: Dict[str, Callable[[str], Any]] = {
    "wind_kmh": float,
    "avg_repair_hours": float,
    "q_precision": _parse_precision,
    "count_rounding": lambda raw: raw.lower(),
    "targets": _parse_int_list,
    "line_wind_overrides": _parse_overrides,
}


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _coerce_json(key: str, value: Any) -> Any:
    """Приводит значение из JSON-сценария к типу параметра.

    Строки разбираются так же, как в формате key=value.

    Raises:
        TypeError: Значение имеет неподходящий тип.
        ValueError: Значение не разбирается.
    """
    if isinstance(value, str):
        return _PARSERS[key](value)
    if key in ("wind_kmh", "avg_repair_hours"):
        if value is None or _is_number(value):
            return None if value is None else float(value)
    elif key == "q_precision":
        if value is None or (isinstance(value, int) and not isinstance(value, bool)):
            return value
    elif key == "targets":
        if isinstance(value, list) and all(isinstance(item, int) and not isinstance(item, bool) for item in value):
            return list(value)
    elif key == "line_wind_overrides":
        if isinstance(value, dict) and all(_is_number(speed) for speed in value.values()):
            return {int(line_id): float(speed) for line_id, speed in value.items()}
    raise TypeError(f"{key}: неподходящий тип {type(value).__name__}")


class ScenarioSettings:
    """Параметры сценария с учётом файла и флагов.

    Attributes:
        settings_file (Optional[Path]): Файл сценария, если задан.
        settings (Dict[str, Any]): Текущие значения параметров.

    Examples:
        >>> settings = ScenarioSettings()
        >>> settings.apply_overrides(wind_kmh=105, targets=[4, 6, 24])
        >>> settings.targets
        [4, 6, 24]
    """

    def __init__(self, settings_file: Optional[Union[str, Path]] = None) -> None:
        """
        Args:
            settings_file: Файл сценария (key=value или JSON). Без файла
                используются значения по умолчанию.

        Raises:
            ParseError: Файл не найден или значение не разбирается.
            SchemaError: Неизвестный ключ.
        """
        self.settings_file = Path(settings_file) if settings_file is not None else None
        self.settings: Dict[str, Any] = self._get_default_settings()
        if self.settings_file is not None:
            self.settings.update(self._load_settings())

    def _get_default_settings(self) -> Dict[str, Any]:
        return {
            "wind_kmh": None,
            "avg_repair_hours": DEFAULT_AVG_REPAIR_HOURS,
            "q_precision": DEFAULT_Q_PRECISION,
            "count_rounding": DEFAULT_COUNT_ROUNDING,
            "targets": None,
            "line_wind_overrides": {},
        }

    @property
    def _source(self) -> str:
        return str(self.settings_file) if self.settings_file else "<command line>"

    def _load_settings(self) -> Dict[str, Any]:
        """Читает файл сценария.

        JSON распознаётся по расширению .json или по первому символу "{".
        """
        assert self.settings_file is not None
        try:
            text = self.settings_file.read_text(encoding="utf-8")
        except (FileNotFoundError, IsADirectoryError) as e:
            raise ParseError(f"Файл сценария не найден: {self.settings_file}", file=self._source) from e

        if self.settings_file.suffix == ".json" or text.lstrip().startswith("{"):
            return self._load_json(text)
        return self._load_key_value(text)

    def _check_key(self, key: str, row: Optional[int]) -> None:
        if key not in _PARSERS:
            raise SchemaError(
                f"Неизвестный параметр сценария {key!r} (допустимы: {', '.join(_PARSERS)})",
                file=self._source,
                field=key,
                row=row,
            )

    def _load_key_value(self, text: str) -> Dict[str, Any]:
        values: Dict[str, Any] = {}
        for row, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParseError(
                    f"Строка {row} файла сценария не имеет вида key=value: {line!r}", file=self._source, row=row
                )
            key, raw = (part.strip() for part in line.split("=", 1))
            self._check_key(key, row)
            try:
                values[key] = _PARSERS[key](raw)
            except ValueError:
                raise ParseError(
                    f"Некорректное значение {key}={raw!r} в строке {row}", file=self._source, row=row, column=key
                ) from None
        return values

    def _load_json(self, text: str) -> Dict[str, Any]:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(
                f"Некорректный JSON сценария: {e.msg}", file=self._source, row=e.lineno
            ) from e
        if not isinstance(data, dict):
            raise ParseError("JSON сценария должен быть объектом", file=self._source)

        values: Dict[str, Any] = {}
        for key, value in data.items():
            self._check_key(key, None)
            try:
                values[key] = _coerce_json(key, value)
            except (TypeError, ValueError):
                raise ParseError(
                    f"Некорректное значение {key}={value!r}", file=self._source, column=key
                ) from None
        return values

    def get_setting(self, key: str) -> Optional[Any]:
        return self.settings.get(key)

    def set_setting(self, key: str, value: Any) -> None:
        self._check_key(key, None)
        self.settings[key] = value

    def apply_overrides(self, **values: Any) -> None:
        """Применяет значения флагов поверх файла; None означает "флаг не задан"."""
        for key, value in values.items():
            if value is not None:
                self.set_setting(key, value)

    def apply_text_overrides(self, **raw_values: Optional[str]) -> None:
        """Применяет значения флагов в текстовом виде (как в файле key=value).

        Raises:
            ParseError: Значение не разбирается.
        """
        for key, raw in raw_values.items():
            if raw is None:
                continue
            self._check_key(key, None)
            try:
                self.settings[key] = _PARSERS[key](raw.strip())
            except ValueError:
                raise ParseError(
                    f"Некорректное значение параметра {key}: {raw!r}", file="<command line>", column=key
                ) from None

    @property
    def targets(self) -> Optional[List[int]]:
        targets = self.settings.get("targets")
        return list(targets) if targets is not None else None

    def to_scenario(self) -> StormScenario:
        """Собирает проверенный StormScenario.

        Raises:
            InvalidScenario: Не задана скорость ветра.
            ValidationError: Значение вне допустимого диапазона.
        """
        if self.settings.get("wind_kmh") is None:
            raise InvalidScenario("Не задана скорость ветра (--wind или wind_kmh в файле сценария)")
        try:
            scenario = StormScenario(
                v_real=self.settings["wind_kmh"],
                t_rep_av=self.settings["avg_repair_hours"],
                q_precision=self.settings["q_precision"],
                count_rounding=self.settings["count_rounding"],
                line_wind_overrides=self.settings["line_wind_overrides"],
            )
        except pydantic.ValidationError as e:
            first = e.errors()[0]
            location = ".".join(str(part) for part in first.get("loc", ()))
            raise ValidationError(
                f"Недопустимый параметр сценария {location}: {first.get('msg')}",
                file=self._source,
                original_error=e,
            ) from e
        logger.debug("Сценарий собран", extra_fields=scenario.model_dump(mode="json"))
        return scenario

    def save(self, path: Optional[Union[str, Path]] = None) -> Path:
        """Сохраняет параметры в формате key=value.

        Args:
            path: Целевой файл; по умолчанию файл, из которого параметры загружены.

        Returns:
            Путь записанного файла.
        """
        target = Path(path) if path is not None else self.settings_file
        if target is None:
            raise ValueError("Не указан файл для сохранения сценария")

        lines = []
        for key in _PARSERS:
            value = self.settings.get(key)
            if value is None and key != "q_precision":
                continue
            if key == "q_precision" and value is None:
                text = "none"
            elif key == "targets":
                text = ",".join(str(item) for item in value)
            elif key == "line_wind_overrides":
                if not value:
                    continue
                text = ",".join(f"{line_id}:{speed}" for line_id, speed in sorted(value.items()))
            else:
                text = str(value)
            lines.append(f"{key}={text}")

        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return target
