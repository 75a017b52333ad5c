"""Расчётное ядро GridTriage.

- network: Радиальная сеть и запросы по дереву
- fragility: Кривые хрупкости опор
- damage: Повреждения линий и время ремонта
- valuation: Стоимости линий, рейтинг и тепловая карта
- crew: План ремонтных бригад
"""

from gridtriage.core.crew import build_crew_plan, non_ordinary_buses, restoration_set, teams_for_line
from gridtriage.core.damage import (
    assess_lines,
    line_damaged_poles,
    line_repair_time,
    line_repair_time_itemized,
)
from gridtriage.core.fragility import (
    FragilitySet,
    class_damage,
    class_damage_count,
    failure_probability,
    fragility_slope,
)
from gridtriage.core.network import RadialNetwork, build_network
from gridtriage.core.valuation import (
    RankedLine,
    dynamic_line_value,
    dynamic_load_value,
    heatmap_tiers,
    load_value_factor,
    rank_lines,
    static_load_value,
    value_lines,
)

__all__ = [
    "FragilitySet",
    "RadialNetwork",
    "RankedLine",
    "assess_lines",
    "build_crew_plan",
    "build_network",
    "class_damage",
    "class_damage_count",
    "dynamic_line_value",
    "dynamic_load_value",
    "failure_probability",
    "fragility_slope",
    "heatmap_tiers",
    "line_damaged_poles",
    "line_repair_time",
    "line_repair_time_itemized",
    "load_value_factor",
    "non_ordinary_buses",
    "rank_lines",
    "static_load_value",
    "teams_for_line",
    "value_lines",
]
