"""Загрузка, проверка и сохранение наборов данных сети.

Набор данных это каталог с четырьмя таблицами: buses, lines, classes, poles.
Каждая таблица читается из CSV (UTF-8, строка заголовка обязательна) или из
JSON-зеркала с тем же именем (список объектов с теми же полями).

Ошибки указывают файл и номер строки: для CSV это номер строки файла
(заголовок первая строка), для JSON порядковый номер объекта начиная с 1.

Функции и классы:
- GridModel: Проверенная модель сети с кривыми хрупкости и инвентарём опор
- load_dataset: Чтение встроенного набора по имени или каталога
- save_dataset: Запись модели в CSV или JSON
- network_summary: Сводка по модели для команды validate

Примеры:
    >>> model = load_dataset("ieee33")
    >>> len(model.network.lines), model.fragility.total_poles
    (33, 240)
"""

import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple, TypeVar, Union

import pandas as pd
import pydantic

from gridtriage.config import (
    BUNDLED_DATASETS,
    BUSES_FILE,
    CLASSES_FILE,
    LINES_FILE,
    OPTIONAL_COLUMNS,
    POLES_FILE,
    SCHEMA_COLUMNS,
    SOURCE_NODE_ID,
    W_INVENTORY,
)
from gridtriage.core.fragility import FragilitySet
from gridtriage.core.network import RadialNetwork, build_network
from gridtriage.errors import ParseError, SchemaError, ValidationError
from gridtriage.types import Bus, Line, LinePoleInventory, PoleClassSpec, ReportWarning
from gridtriage.utils.metrics import count_calls, track_timing

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class GridModel:
    """Проверенная модель сети, готовая к расчёту.

    Attributes:
        name: Имя набора данных (имя встроенного набора или каталога).
        network: Радиальная сеть.
        fragility: Классы опор с кривыми хрупкости.
        inventories: Число опор каждой линии по классам {line_id: LinePoleInventory}.
        warnings: Предупреждения о качестве данных, найденные при загрузке.
    """

    name: str
    network: RadialNetwork
    fragility: FragilitySet
    inventories: Dict[int, LinePoleInventory]
    warnings: Tuple[ReportWarning, ...] = field(default_factory=tuple)

    @property
    def is_bundled(self) -> bool:
        return self.name in BUNDLED_DATASETS


@dataclass
class _Table:
    """Прочитанная таблица: строки как словари строковых значений."""

    file: str
    frame: pd.DataFrame
    first_row: int

    def rows(self) -> Iterator[Tuple[int, Dict[str, str]]]:
        for index, record in enumerate(self.frame.to_dict(orient="records")):
            yield index + self.first_row, record


def resolve_dataset(source: Union[str, Path]) -> Tuple[str, Path]:
    """Возвращает имя набора и каталог с его файлами.

    Raises:
        ParseError: Каталог не найден.
    """
    if isinstance(source, str) and source in BUNDLED_DATASETS:
        return source, BUNDLED_DATASETS[source]
    directory = Path(source)
    if not directory.is_dir():
        raise ParseError(f"Каталог набора данных не найден: {directory}", file=str(directory))
    return directory.name, directory


def _read_table(directory: Path, file_name: str) -> _Table:
    csv_path = directory / file_name
    json_path = csv_path.with_suffix(".json")

    if csv_path.exists():
        try:
            frame = pd.read_csv(csv_path, dtype=str, keep_default_na=False, encoding="utf-8")
        except pd.errors.EmptyDataError as e:
            raise ParseError(f"Файл пуст или не содержит заголовка: {csv_path}", file=str(csv_path)) from e
        except (pd.errors.ParserError, UnicodeDecodeError) as e:
            raise ParseError(f"Некорректный CSV {csv_path}: {e}", file=str(csv_path)) from e
        first_row = 2
        path = csv_path
    elif json_path.exists():
        try:
            records = json.loads(json_path.read_text(encoding="utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise ParseError(f"Некорректный JSON {json_path}: {e}", file=str(json_path)) from e
        if not isinstance(records, list) or not all(isinstance(item, dict) for item in records):
            raise ParseError(f"JSON {json_path} должен содержать список объектов", file=str(json_path))
        # null и отсутствующие ключи становятся пустыми ячейками, как в CSV
        rows = [{key: "" if value is None else str(value) for key, value in item.items()} for item in records]
        if rows:
            frame = pd.DataFrame.from_records(rows).fillna("")
        else:
            frame = pd.DataFrame(columns=SCHEMA_COLUMNS[file_name])
        first_row = 1
        path = json_path
    else:
        raise ParseError(f"Не найден файл {file_name} (или JSON-зеркало) в {directory}", file=str(csv_path))

    frame.columns = [str(column).strip() for column in frame.columns]
    frame = frame.map(lambda value: value.strip() if isinstance(value, str) else value)
    table = _Table(file=str(path), frame=frame, first_row=first_row)
    _check_columns(table, file_name)
    return table


def _check_columns(table: _Table, file_name: str) -> None:
    expected = SCHEMA_COLUMNS[file_name]
    present = list(table.frame.columns)
    for column in expected:
        if column not in present and column not in OPTIONAL_COLUMNS:
            raise SchemaError(f"В {table.file} нет обязательной колонки {column}", file=table.file, field=column)
    for column in present:
        if column not in expected:
            raise SchemaError(f"Неизвестная колонка {column} в {table.file}", file=table.file, field=column)


def _parse_number(table: _Table, row: int, record: Dict[str, str], column: str, cast: Callable[[str], T]) -> T:
    raw = record.get(column, "")
    if raw == "":
        raise ParseError(f"Пустое значение {column} в {table.file}, строка {row}", table.file, row, column)
    try:
        return cast(raw)
    except ValueError:
        raise ParseError(
            f"Нечисловое значение {column}={raw!r} в {table.file}, строка {row}", table.file, row, column
        ) from None


def _as_int(raw: str) -> int:
    value = float(raw)
    if not value.is_integer():
        raise ValueError(raw)
    return int(value)


def _int(table: _Table, row: int, record: Dict[str, str], column: str) -> int:
    return _parse_number(table, row, record, column, _as_int)


def _float(table: _Table, row: int, record: Dict[str, str], column: str) -> float:
    return _parse_number(table, row, record, column, float)


def _optional_float(table: _Table, row: int, record: Dict[str, str], column: str) -> Optional[float]:
    if record.get(column, "") == "":
        return None
    return _float(table, row, record, column)


def _validated(table: _Table, row: int, factory: Callable[[], T]) -> T:
    try:
        return factory()
    except pydantic.ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first.get("loc", ()))
        raise ValidationError(
            f"Недопустимое значение {location} в {table.file}, строка {row}: {first.get('msg')}",
            file=table.file,
            row=row,
            original_error=e,
        ) from e


def _read_buses(table: _Table) -> List[Bus]:
    buses = []
    for row, record in table.rows():
        bus_id = _int(table, row, record, "bus_id")
        load = _float(table, row, record, "load_kw")
        load_class = record.get("load_class", "").lower() or "ordinary"
        tag = record.get("location_tag") or None
        buses.append(
            _validated(
                table, row, lambda: Bus(id=bus_id, load=load, load_class=load_class, location_tag=tag)
            )
        )
    return buses


def _read_lines(table: _Table) -> List[Line]:
    lines = []
    for row, record in table.rows():
        values = {
            "id": _int(table, row, record, "line_id"),
            "from_bus": _int(table, row, record, "from_bus"),
            "to_bus": _int(table, row, record, "to_bus"),
            "load_factor": _float(table, row, record, "load_factor"),
            "voll": _float(table, row, record, "voll"),
        }
        lines.append(_validated(table, row, lambda: Line(**values)))
    return lines


def _read_classes(table: _Table) -> List[PoleClassSpec]:
    classes = []
    for row, record in table.rows():
        values = {
            "class_id": _int(table, row, record, "class_id"),
            "life_min": _float(table, row, record, "life_min_yr"),
            "life_max": _optional_float(table, row, record, "life_max_yr"),
            "p0": _float(table, row, record, "p0"),
            "v_th": _float(table, row, record, "v_th_kmh"),
            "v_max": _float(table, row, record, "v_max_kmh"),
            "count": _int(table, row, record, "count"),
        }
        classes.append(_validated(table, row, lambda: PoleClassSpec(**values)))
    return classes


def _read_poles(table: _Table, line_ids: List[int], class_ids: List[int]) -> Dict[int, LinePoleInventory]:
    counts: Dict[int, Dict[int, int]] = defaultdict(dict)
    for row, record in table.rows():
        line_id = _int(table, row, record, "line_id")
        class_id = _int(table, row, record, "class_id")
        count = _int(table, row, record, "count")
        if line_id not in line_ids:
            raise SchemaError(
                f"Линия {line_id} из {table.file}, строка {row}, отсутствует в {LINES_FILE}",
                file=table.file,
                field="line_id",
                row=row,
            )
        if class_id not in class_ids:
            raise SchemaError(
                f"Класс опор {class_id} из {table.file}, строка {row}, отсутствует в {CLASSES_FILE}",
                file=table.file,
                field="class_id",
                row=row,
            )
        if class_id in counts[line_id]:
            raise ValidationError(
                f"Повторная запись класса {class_id} для линии {line_id} в {table.file}, строка {row}",
                file=table.file,
                row=row,
            )
        if count < 0:
            raise ValidationError(
                f"Отрицательное число опор в {table.file}, строка {row}: {count}", file=table.file, row=row
            )
        counts[line_id][class_id] = count

    return {
        line_id: LinePoleInventory(line_id=line_id, per_class_counts=counts.get(line_id, {}))
        for line_id in sorted(line_ids)
    }


def _inventory_warnings(fragility: FragilitySet, inventories: Dict[int, LinePoleInventory]) -> List[ReportWarning]:
    warnings = []
    for spec in fragility.classes:
        placed = sum(inv.per_class_counts.get(spec.class_id, 0) for inv in inventories.values())
        if placed != spec.count:
            warning = ReportWarning(
                code=W_INVENTORY,
                message=(
                    f"Класс {spec.class_id}: на линиях {placed} опор, в описании класса {spec.count}"
                ),
                details={"class_id": spec.class_id, "on_lines": placed, "declared": spec.count},
            )
            logger.warning(warning.message, extra_fields={"code": warning.code, **warning.details})
            warnings.append(warning)
    return warnings


def _unique_ids(table: _Table, ids: List[int], column: str) -> None:
    seen = set()
    for (row, _), item in zip(table.rows(), ids):
        if item in seen:
            raise ValidationError(
                f"Повторяющийся {column}={item} в {table.file}, строка {row}", file=table.file, row=row
            )
        seen.add(item)


@track_timing("load_dataset")
@count_calls()
def load_dataset(source: Union[str, Path] = "ieee33") -> GridModel:
    """Загружает и проверяет набор данных.

    Args:
        source: Имя встроенного набора ("ieee33") или путь к каталогу с файлами.

    Returns:
        GridModel с проверенной сетью, кривыми и инвентарём.

    Raises:
        ParseError: Файл не найден или не разбирается, нечисловое значение.
        SchemaError: Нет колонки, лишняя колонка, ссылка на несуществующую линию или класс.
        ValidationError: Значение вне допустимого диапазона, повторяющийся идентификатор.
        TopologyError: Сеть не является радиальным деревом.
        FragilityError: Вырожденная кривая хрупкости.
    """
    name, directory = resolve_dataset(source)
    logger.debug("Загрузка набора данных", extra_fields={"dataset": name, "directory": str(directory)})

    buses_table = _read_table(directory, BUSES_FILE)
    lines_table = _read_table(directory, LINES_FILE)
    classes_table = _read_table(directory, CLASSES_FILE)
    poles_table = _read_table(directory, POLES_FILE)

    buses = _read_buses(buses_table)
    lines = _read_lines(lines_table)
    classes = _read_classes(classes_table)
    _unique_ids(buses_table, [bus.id for bus in buses], "bus_id")
    _unique_ids(lines_table, [line.id for line in lines], "line_id")
    _unique_ids(classes_table, [spec.class_id for spec in classes], "class_id")

    network = build_network(buses, lines, root=SOURCE_NODE_ID)
    fragility = FragilitySet(tuple(classes))
    inventories = _read_poles(poles_table, network.line_ids, fragility.class_ids)

    warnings = fragility.ordering_warnings() + _inventory_warnings(fragility, inventories)
    model = GridModel(
        name=name,
        network=network,
        fragility=fragility,
        inventories=inventories,
        warnings=tuple(warnings),
    )
    logger.info(
        "Набор данных загружен",
        extra_fields={
            "dataset": name,
            "buses": len(network.buses),
            "lines": len(network.lines),
            "classes": len(fragility.classes),
            "warnings": [warning.code for warning in warnings],
        },
    )
    return model


def _tables(model: GridModel) -> Dict[str, List[Dict[str, Any]]]:
    network = model.network
    return {
        BUSES_FILE: [
            {
                "bus_id": bus.id,
                "load_kw": bus.load,
                "load_class": bus.load_class.value,
                "location_tag": bus.location_tag or "",
            }
            for bus in network.buses
        ],
        LINES_FILE: [
            {
                "line_id": line.id,
                "from_bus": line.from_bus,
                "to_bus": line.to_bus,
                "load_factor": line.load_factor,
                "voll": line.voll,
            }
            for line in network.lines
        ],
        CLASSES_FILE: [
            {
                "class_id": spec.class_id,
                "life_min_yr": spec.life_min,
                "life_max_yr": spec.life_max,
                "p0": spec.p0,
                "v_th_kmh": spec.v_th,
                "v_max_kmh": spec.v_max,
                "count": spec.count,
            }
            for spec in model.fragility.classes
        ],
        POLES_FILE: [
            {"line_id": inv.line_id, "class_id": class_id, "count": count}
            for inv in model.inventories.values()
            for class_id, count in inv.per_class_counts.items()
        ],
    }


def save_dataset(model: GridModel, directory: Union[str, Path], fmt: str = "csv") -> List[Path]:
    """Записывает модель в каталог в виде четырёх таблиц.

    Повторная загрузка записанного каталога даёт модель с теми же значениями.

    Args:
        model: Модель сети.
        directory: Целевой каталог (создаётся при необходимости).
        fmt: "csv" или "json".

    Returns:
        Пути записанных файлов.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"Неподдерживаемый формат набора данных: {fmt}")
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)

    written = []
    for file_name, records in _tables(model).items():
        columns = SCHEMA_COLUMNS[file_name]
        if fmt == "csv":
            path = target / file_name
            pd.DataFrame.from_records(records, columns=columns).to_csv(path, index=False, encoding="utf-8")
        else:
            path = (target / file_name).with_suffix(".json")
            path.write_text(json.dumps(records, indent=2, ensure_ascii=False), encoding="utf-8")
        written.append(path)

    logger.info("Набор данных сохранён", extra_fields={"directory": str(target), "format": fmt})
    return written


def network_summary(model: GridModel) -> Dict[str, Any]:
    """Сводка по модели: размеры, опоры по классам, критические и важные шины."""
    network = model.network
    return {
        "dataset": model.name,
        "buses": len(network.buses),
        "lines": len(network.lines),
        "classes": len(model.fragility.classes),
        "poles": sum(inv.total for inv in model.inventories.values()),
        "class_poles": {spec.class_id: spec.count for spec in model.fragility.classes},
        "critical_buses": [bus.id for bus in network.buses if bus.load_class.value == "critical"],
        "important_buses": [bus.id for bus in network.buses if bus.load_class.value == "important"],
        "warnings": [warning.model_dump() for warning in model.warnings],
    }
