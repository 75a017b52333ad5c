"""План ремонтных бригад для восстановления питания выбранных шин.

Бригады размещаются на шине-источнике, время прибытия не учитывается.
Число бригад на линию равно ceil(bt): по одной на каждую (частично)
повреждённую опору.
"""

import logging
import math
from typing import Iterable, List, Mapping, Sequence, Set

from gridtriage.core.network import RadialNetwork
from gridtriage.core.valuation import RankedLine
from gridtriage.types import CrewPlan, CrewPlanEntry, LineDamage, LoadClass

logger = logging.getLogger(__name__)


def restoration_set(network: RadialNetwork, ranking: Sequence[RankedLine], targets: Iterable[int]) -> List[int]:
    """Линии, которые нужно восстановить для питания целевых шин.

    Args:
        network: Радиальная сеть.
        ranking: Рейтинг линий.
        targets: Целевые шины.

    Returns:
        Объединение путей от источника до целей в порядке рейтинга (ранг 1 первым).

    Raises:
        UnknownBus: Целевой шины нет в сети.

    Examples:
        >>> sorted(restoration_set(net, ranking, [4, 6, 24]))
        [1, 2, 3, 4, 5, 6, 23, 24]
    """
    needed: Set[int] = set()
    for bus_id in targets:
        needed.update(network.path_from_source(bus_id))
    return [entry.line_id for entry in sorted(ranking, key=lambda item: item.rank) if entry.line_id in needed]


def teams_for_line(bt: float) -> int:
    """Число бригад для линии: ceil(bt), 0 для неповреждённой линии.

    Examples:
        >>> teams_for_line(4.2723)
        5
        >>> teams_for_line(3.0)
        3
    """
    if bt < 0:
        raise ValueError(f"Число повреждённых опор не может быть отрицательным: {bt}")
    return math.ceil(bt)


def build_crew_plan(
    network: RadialNetwork,
    ranking: Sequence[RankedLine],
    damage: Mapping[int, LineDamage],
    targets: Iterable[int],
) -> CrewPlan:
    """Строит план бригад для целевых шин.

    Args:
        network: Радиальная сеть.
        ranking: Рейтинг линий.
        damage: Повреждения линий.
        targets: Целевые шины.

    Returns:
        CrewPlan с линиями восстановления в порядке рейтинга и числом бригад.
    """
    target_list = sorted(set(targets))
    entries = []
    for line_id in restoration_set(network, ranking, target_list):
        bt = damage[line_id].bt if line_id in damage else 0.0
        entries.append(CrewPlanEntry(line_id=line_id, bt=bt, teams=teams_for_line(bt)))

    plan = CrewPlan(target_buses=target_list, entries=entries)
    logger.debug(
        "План бригад построен",
        extra_fields={"targets": target_list, "lines": len(entries), "total_teams": plan.total_teams},
    )
    return plan


def non_ordinary_buses(network: RadialNetwork) -> List[int]:
    """Шины с критической или важной нагрузкой по возрастанию идентификатора."""
    return [bus.id for bus in network.buses if bus.load_class != LoadClass.ORDINARY]
