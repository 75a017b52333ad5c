"""Стоимость нагрузок и линий, рейтинг приоритета и уровни тепловой карты.

Статическая стоимость нагрузки: L × 8760 × LF × CRT × voll.
Динамическая стоимость нагрузки: статическая стоимость × длительность ремонта
питающей линии. Динамическая стоимость линии: собственная динамическая стоимость
плюс стоимости всех линий, теряющих питание при её отключении.

Стоимости трактуются как безразмерные баллы приоритета. Суммы по поддереву
вычисляются math.fsum по возрастанию line_id, поэтому результат не зависит
от порядка обхода.
"""

import logging
import math
from typing import Dict, List, Mapping, NamedTuple, Sequence

from gridtriage.config import HOURS_PER_YEAR
from gridtriage.core.network import RadialNetwork
from gridtriage.types import HeatTier, LineDamage, LineValuation, LoadClass, LoadValueFactor

logger = logging.getLogger(__name__)


class RankedLine(NamedTuple):
    """Позиция линии в рейтинге приоритета."""

    rank: int
    line_id: int
    value: float


def load_value_factor(load_class: LoadClass, voll: float) -> LoadValueFactor:
    """Множитель ценности нагрузки CRT × voll по классу важности."""
    return LoadValueFactor(crt=load_class.crt, voll=voll)


def static_load_value(load: float, load_factor: float, factor: LoadValueFactor) -> float:
    """Статическая стоимость нагрузки L × 8760 × LF × CRT × voll.

    Examples:
        >>> static_load_value(60, 0.88, load_value_factor(LoadClass.ORDINARY, 3200))
        1480089600.0
    """
    return load * HOURS_PER_YEAR * load_factor * factor.product


def dynamic_load_value(static_value: float, repair_hours: float) -> float:
    """Динамическая стоимость нагрузки: статическая стоимость, взвешенная временем ремонта."""
    if repair_hours < 0:
        raise ValueError(f"Длительность ремонта не может быть отрицательной: {repair_hours}")
    return static_value * repair_hours


def dynamic_line_value(network: RadialNetwork, dynamic_values: Mapping[int, float], line_id: int) -> float:
    """Динамическая стоимость линии с учётом линий ниже по течению.

    Args:
        network: Радиальная сеть.
        dynamic_values: Динамические стоимости нагрузок {line_id: v_dyn}.
        line_id: Линия.

    Returns:
        v_dyn линии плюс сумма v_dyn всех её потомков.

    Raises:
        UnknownLine: Линии нет в сети.
    """
    subtree = sorted(network.descendants(line_id) | {line_id})
    return math.fsum(dynamic_values[item] for item in subtree)


def rank_lines(values: Mapping[int, float]) -> List[RankedLine]:
    """Рейтинг линий по убыванию стоимости.

    Равные стоимости упорядочиваются по возрастанию line_id. Ранги 1..N.

    Examples:
        >>> rank_lines({1: 3504000.0, 2: 1752000.0})
        [RankedLine(rank=1, line_id=1, value=3504000.0), RankedLine(rank=2, line_id=2, value=1752000.0)]
    """
    ordered = sorted(values.items(), key=lambda item: (-item[1], item[0]))
    return [RankedLine(rank, line_id, value) for rank, (line_id, value) in enumerate(ordered, start=1)]


def tier_sizes(count: int) -> Dict[HeatTier, int]:
    """Размеры уровней тепловой карты для count линий (33 -> 11/11/11, 4 -> 2/1/1)."""
    red = -(-count // 3)
    orange = -(-(count - red) // 2)
    return {HeatTier.RED: red, HeatTier.ORANGE: orange, HeatTier.GREEN: count - red - orange}


def heatmap_tiers(ranking: Sequence[RankedLine]) -> Dict[int, HeatTier]:
    """Уровень тепловой карты каждой линии по её месту в рейтинге."""
    sizes = tier_sizes(len(ranking))
    tiers: Dict[int, HeatTier] = {}
    for entry in sorted(ranking, key=lambda item: item.rank):
        if entry.rank <= sizes[HeatTier.RED]:
            tiers[entry.line_id] = HeatTier.RED
        elif entry.rank <= sizes[HeatTier.RED] + sizes[HeatTier.ORANGE]:
            tiers[entry.line_id] = HeatTier.ORANGE
        else:
            tiers[entry.line_id] = HeatTier.GREEN
    return tiers


def value_lines(network: RadialNetwork, damage: Mapping[int, LineDamage]) -> Dict[int, LineValuation]:
    """Стоимости, рейтинг и уровни тепловой карты всех линий сети.

    Args:
        network: Радиальная сеть.
        damage: Повреждения линий {line_id: LineDamage}; линии без записи не повреждены.

    Returns:
        Словарь {line_id: LineValuation} по возрастанию line_id.
    """
    static: Dict[int, float] = {}
    dynamic: Dict[int, float] = {}
    for line in network.lines:
        bus = network.bus(line.to_bus)
        factor = load_value_factor(bus.load_class, line.voll)
        static[line.id] = static_load_value(bus.load, line.load_factor, factor)
        hours = damage[line.id].repair_hours if line.id in damage else 0.0
        dynamic[line.id] = dynamic_load_value(static[line.id], hours)

    line_values = {line_id: dynamic_line_value(network, dynamic, line_id) for line_id in network.line_ids}
    ranking = rank_lines(line_values)
    tiers = heatmap_tiers(ranking)

    valuations = {
        entry.line_id: LineValuation(
            line_id=entry.line_id,
            static_value=static[entry.line_id],
            dynamic_load_value=dynamic[entry.line_id],
            dynamic_line_value=entry.value,
            rank=entry.rank,
            tier=tiers[entry.line_id],
        )
        for entry in ranking
    }
    if ranking:
        logger.debug(
            "Рейтинг линий построен",
            extra_fields={"lines": len(ranking), "top_line": ranking[0].line_id, "top_value": ranking[0].value},
        )
    return dict(sorted(valuations.items()))


def ranking_of(valuations: Mapping[int, LineValuation]) -> List[RankedLine]:
    """Восстанавливает рейтинг из готовых оценок линий."""
    ordered = sorted(valuations.values(), key=lambda item: item.rank)
    return [RankedLine(item.rank, item.line_id, item.dynamic_line_value) for item in ordered]
