"""Ожидаемые повреждения линий и длительность их ремонта.

Число повреждённых опор линии bt считается как сумма вероятностей отказа
классов (округлённых до q_precision знаков), умноженных на число опор класса
на линии. Результат дробный и не округляется: целые числа появляются только
в плане бригад и в отчёте по классам.
"""

import logging
from decimal import Decimal
from typing import Dict, Iterable, Mapping, Optional, Sequence

from gridtriage.core.fragility import FragilitySet, probability_decimal, to_decimal
from gridtriage.errors import NegativeDuration, NonpositiveAverage, UnknownClass
from gridtriage.types import LineDamage, LinePoleInventory, StormScenario

logger = logging.getLogger(__name__)


def line_damaged_poles(
    inventory: LinePoleInventory,
    fragility: FragilitySet,
    v_real: float,
    precision: Optional[int] = 4,
) -> float:
    """Ожидаемое число повреждённых опор линии.

    Args:
        inventory: Число опор линии по классам.
        fragility: Набор кривых хрупкости.
        v_real: Скорость ветра на линии, км/ч.
        precision: Точность вероятности отказа класса.

    Returns:
        Сумма q_i × n_ji по классам линии (дробное число).

    Raises:
        UnknownClass: Инвентарь ссылается на класс, которого нет в наборе.

    Examples:
        >>> inv = LinePoleInventory(line_id=1, per_class_counts={2: 1, 4: 3})
        >>> line_damaged_poles(inv, ieee33_fragility, 105)
        2.1183
    """
    total = Decimal(0)
    for class_id, count in inventory.per_class_counts.items():
        if count == 0:
            continue
        try:
            spec = fragility.get(class_id)
        except UnknownClass:
            raise UnknownClass(class_id, inventory.line_id) from None
        total += probability_decimal(spec, v_real, precision) * count
    return float(total)


def line_repair_time(bt: float, avg_repair_hours: float) -> float:
    """Длительность ремонта линии при одинаковом времени ремонта опор.

    Args:
        bt: Ожидаемое число повреждённых опор.
        avg_repair_hours: Среднее время ремонта одной опоры, ч.

    Returns:
        bt × avg_repair_hours, ч.

    Raises:
        NonpositiveAverage: avg_repair_hours <= 0.
    """
    if avg_repair_hours <= 0:
        raise NonpositiveAverage(avg_repair_hours)
    if bt < 0:
        raise ValueError(f"Число повреждённых опор не может быть отрицательным: {bt}")
    return float(to_decimal(bt) * to_decimal(avg_repair_hours))


def line_repair_time_itemized(per_pole_hours: Sequence[float]) -> float:
    """Длительность ремонта линии как сумма длительностей ремонта отдельных опор.

    Raises:
        NegativeDuration: Одна из длительностей отрицательна.
    """
    total = Decimal(0)
    for index, hours in enumerate(per_pole_hours):
        if hours < 0:
            raise NegativeDuration(index, hours)
        total += to_decimal(hours)
    return float(total)


def assess_line(
    inventory: LinePoleInventory,
    fragility: FragilitySet,
    scenario: StormScenario,
    per_pole_hours: Optional[Sequence[float]] = None,
) -> LineDamage:
    """Повреждения и время ремонта одной линии в сценарии.

    Скорость ветра берётся из переопределений сценария для линии, если они заданы.
    При per_pole_hours время ремонта считается по отдельным опорам.
    """
    v_real = scenario.wind_for_line(inventory.line_id)
    bt = line_damaged_poles(inventory, fragility, v_real, scenario.q_precision)
    if per_pole_hours is not None:
        hours = line_repair_time_itemized(per_pole_hours)
    else:
        hours = line_repair_time(bt, scenario.t_rep_av)
    return LineDamage(
        line_id=inventory.line_id,
        bt=bt,
        repair_hours=hours,
        per_pole_hours=list(per_pole_hours) if per_pole_hours is not None else None,
    )


def assess_lines(
    line_ids: Iterable[int],
    inventories: Mapping[int, LinePoleInventory],
    fragility: FragilitySet,
    scenario: StormScenario,
) -> Dict[int, LineDamage]:
    """Повреждения всех линий сети.

    Линия без инвентаря считается линией без опор (bt = 0).

    Returns:
        Словарь {line_id: LineDamage} по возрастанию line_id.
    """
    damage: Dict[int, LineDamage] = {}
    for line_id in sorted(line_ids):
        inventory = inventories.get(line_id) or LinePoleInventory(line_id=line_id)
        damage[line_id] = assess_line(inventory, fragility, scenario)

    logger.debug(
        "Повреждения линий рассчитаны",
        extra_fields={
            "wind_kmh": scenario.v_real,
            "lines": len(damage),
            "total_bt": round(sum(item.bt for item in damage.values()), 4),
            "overrides": len(scenario.line_wind_overrides),
        },
    )
    return damage
