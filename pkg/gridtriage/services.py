"""Сервисный модуль GridTriage.

Связывает расчётное ядро в сценарии использования:
хрупкость -> повреждения линий -> стоимости -> рейтинг -> тепловая карта ->
(при заданных целях) план бригад.

Основные функции:
- run_assessment: Полная оценка сети для сценария урагана
- wind_sweep: Число повреждённых опор по классам для ряда скоростей ветра
- fragility_curve_table: Вероятности отказа по классам для ряда скоростей
- speed_range: Ряд скоростей ветра с заданным шагом
- plot_sweep: График развёртки по ветру в PNG

Примеры:
    >>> from gridtriage.services import run_assessment, wind_sweep
    >>> model = load_dataset("ieee33")
    >>> report = run_assessment(model, StormScenario(v_real=105), targets=[4, 6, 24])
    >>> report.crew_plan.total_teams
    29
    >>> wind_sweep(model, [105])[["class_1", "class_2", "class_3", "class_4"]].values.tolist()
    [[1, 20, 44, 14]]
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

import pandas as pd

from gridtriage.config import ASSESSMENT_TIME_BUDGET, W_REFERENCE_VALUES
from gridtriage.core.crew import build_crew_plan
from gridtriage.core.damage import assess_lines
from gridtriage.core.fragility import FragilitySet, class_damage, failure_probability
from gridtriage.core.valuation import ranking_of, value_lines
from gridtriage.errors import InvalidScenario, UnknownLine
from gridtriage.types import (
    AssessmentReport,
    ClassDamage,
    CountRounding,
    LineReport,
    ReportWarning,
    StormScenario,
)
from gridtriage.utils.dataset import GridModel
from gridtriage.utils.metrics import count_calls, track_timing

logger = logging.getLogger(__name__)

REFERENCE_VALUES_NOTE = ReportWarning(
    code=W_REFERENCE_VALUES,
    message=(
        "Стоимости линий вычислены по формулам модели (собственная динамическая стоимость плюс "
        "стоимости линий ниже по течению); эталонная таблица стоимостей для этого набора "
        "данных из них не воспроизводится, совпадает только линия 33"
    ),
    details={"reconciled_lines": [33]},
)


def _check_overrides(model: GridModel, scenario: StormScenario) -> None:
    for line_id in scenario.line_wind_overrides:
        if line_id not in model.network.line_ids:
            raise UnknownLine(line_id)


@track_timing("run_assessment", threshold=ASSESSMENT_TIME_BUDGET)
@count_calls()
def run_assessment(
    model: GridModel,
    scenario: StormScenario,
    targets: Optional[Iterable[int]] = None,
    footnotes: bool = True,
) -> AssessmentReport:
    """Выполняет полную оценку сети.

    Args:
        model: Проверенная модель сети.
        scenario: Параметры урагана.
        targets: Целевые шины для плана бригад; None без плана.
        footnotes: Добавлять примечание о расхождении с эталонной
            таблицей стоимостей для встроенного набора ieee33.

    Returns:
        AssessmentReport со всеми линиями (по возрастанию line_id).

    Raises:
        UnknownLine: Переопределение ветра для несуществующей линии.
        UnknownBus: Целевая шина отсутствует в сети.
    """
    _check_overrides(model, scenario)
    network = model.network

    classes = class_damage(model.fragility, scenario.v_real, scenario.count_rounding, scenario.q_precision)
    damage = assess_lines(network.line_ids, model.inventories, model.fragility, scenario)
    valuations = value_lines(network, damage)
    ranking = ranking_of(valuations)

    crew_plan = None
    if targets is not None:
        crew_plan = build_crew_plan(network, ranking, damage, targets)

    lines = [
        LineReport(
            line_id=line.id,
            to_bus=line.to_bus,
            location_tag=network.bus(line.to_bus).location_tag,
            bt=damage[line.id].bt,
            repair_hours=damage[line.id].repair_hours,
            static_value=valuations[line.id].static_value,
            dynamic_load_value=valuations[line.id].dynamic_load_value,
            dynamic_line_value=valuations[line.id].dynamic_line_value,
            rank=valuations[line.id].rank,
            tier=valuations[line.id].tier,
        )
        for line in network.lines
    ]

    warnings = list(model.warnings)
    if footnotes and model.is_bundled and model.name == "ieee33":
        warnings.append(REFERENCE_VALUES_NOTE)

    report = AssessmentReport(
        dataset=model.name,
        scenario=scenario,
        classes=classes,
        lines=lines,
        crew_plan=crew_plan,
        warnings=warnings,
    )
    logger.info(
        "Оценка выполнена",
        extra_fields={
            "dataset": model.name,
            "wind_kmh": scenario.v_real,
            "lines": len(lines),
            "total_teams": crew_plan.total_teams if crew_plan else None,
        },
    )
    return report


def speed_range(start: float, stop: float, step: float) -> List[float]:
    """Скорости от start до stop включительно с шагом step.

    Шаги считаются в Decimal, поэтому 80..150 с шагом 0.1 даёт ровно 701 точку.

    Raises:
        InvalidScenario: Граница или шаг не конечны, step <= 0 или start > stop.
    """
    if not all(math.isfinite(value) for value in (start, stop, step)):
        raise InvalidScenario(
            f"Границы и шаг развёртки должны быть конечными: {start}, {stop}, {step}",
            start=start,
            stop=stop,
            step=step,
        )
    if step <= 0:
        raise InvalidScenario(f"Шаг развёртки должен быть положительным, получено {step}", step=step)
    if start > stop:
        raise InvalidScenario(f"Начало развёртки {start} больше конца {stop}", start=start, stop=stop)
    first, last, delta = (Decimal(repr(float(value))) for value in (start, stop, step))
    count = int((last - first) / delta) + 1
    return [float(first + delta * index) for index in range(count)]


def _usable_speeds(speeds: Sequence[float]) -> List[float]:
    usable = [float(speed) for speed in speeds if math.isfinite(speed) and speed >= 0]
    dropped = len(speeds) - len(usable)
    if dropped:
        logger.warning(
            "Отрицательные скорости ветра и бесконечные значения исключены из развёртки",
            extra_fields={"dropped": dropped},
        )
    if not usable:
        raise InvalidScenario("Развёртка не содержит ни одной неотрицательной скорости ветра", speeds=list(speeds))
    return usable


def _sweep_row(fragility: FragilitySet, speed: float, rounding: CountRounding) -> Dict[str, Union[float, int]]:
    counts: List[ClassDamage] = class_damage(fragility, speed, rounding)
    row: Dict[str, Union[float, int]] = {"wind_kmh": speed}
    for item in counts:
        row[f"class_{item.class_id}"] = item.damaged_count
    row["total"] = sum(item.damaged_count for item in counts)
    return row


@track_timing("wind_sweep", threshold=ASSESSMENT_TIME_BUDGET)
@count_calls()
def wind_sweep(
    model: GridModel,
    speeds: Sequence[float],
    rounding: CountRounding = CountRounding.NEAREST,
    max_workers: Optional[int] = None,
) -> pd.DataFrame:
    """Число повреждённых опор по классам для каждой скорости ветра.

    Скорости считаются параллельно, строки идут в порядке speeds.

    Args:
        model: Модель сети.
        speeds: Скорости ветра, км/ч; отрицательные исключаются.
        rounding: Правило округления числа опор.
        max_workers: Число потоков (по умолчанию выбирает ThreadPoolExecutor).

    Returns:
        Таблица с колонками wind_kmh, class_<id>..., total.

    Raises:
        InvalidScenario: Нет ни одной неотрицательной скорости.
    """
    usable = _usable_speeds(speeds)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        rows = list(pool.map(lambda speed: _sweep_row(model.fragility, speed, rounding), usable))

    columns = ["wind_kmh"] + [f"class_{class_id}" for class_id in model.fragility.class_ids] + ["total"]
    table = pd.DataFrame(rows, columns=columns)
    logger.debug("Развёртка по ветру выполнена", extra_fields={"points": len(rows)})
    return table


def fragility_curve_table(
    fragility: FragilitySet, speeds: Sequence[float], precision: Optional[int] = 4
) -> pd.DataFrame:
    """Вероятности отказа опор каждого класса для ряда скоростей ветра.

    Returns:
        Таблица с колонками wind_kmh, class_<id>...
    """
    usable = _usable_speeds(speeds)
    rows = []
    for speed in usable:
        row: Dict[str, float] = {"wind_kmh": speed}
        for spec in fragility.classes:
            row[f"class_{spec.class_id}"] = failure_probability(spec, speed, precision)
        rows.append(row)
    columns = ["wind_kmh"] + [f"class_{class_id}" for class_id in fragility.class_ids]
    return pd.DataFrame(rows, columns=columns)


def plot_sweep(table: pd.DataFrame, path: Union[str, Path], ylabel: str = "Повреждённые опоры") -> Path:
    """Рисует развёртку (линия на класс) и сохраняет PNG.

    Args:
        table: Результат wind_sweep или fragility_curve_table.
        path: Путь PNG-файла.
        ylabel: Подпись оси значений.

    Returns:
        Путь записанного файла.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)

    fig, ax = plt.subplots(figsize=(8, 5))
    for column in table.columns:
        if column.startswith("class_"):
            ax.plot(table["wind_kmh"], table[column], marker="o", label=f"Класс {column.removeprefix('class_')}")
    ax.set_xlabel("Скорость ветра, км/ч")
    ax.set_ylabel(ylabel)
    ax.grid(True)
    ax.legend()
    fig.tight_layout()
    fig.savefig(target)
    plt.close(fig)

    logger.info("График развёртки сохранён", extra_fields={"path": str(target)})
    return target
