"""Модели данных GridTriage.

Pydantic-модели для валидации и сериализации записей модели сети и
результатов расчёта. Определены в gridtriage.types и переэкспортируются здесь.

Примеры использования:
    >>> from gridtriage.models import Bus, Line, LoadClass
    >>> bus = Bus(id=4, load=120, load_class=LoadClass.CRITICAL)
    >>> line = Line(id=4, from_bus=3, to_bus=4, load_factor=0.88, voll=3200)
    >>> bus.load_class.crt * line.voll
    320000.0
"""

from gridtriage.types import (
    AssessmentReport,
    Bus,
    ClassDamage,
    CountRounding,
    CrewPlan,
    CrewPlanEntry,
    HeatTier,
    Line,
    LineDamage,
    LinePoleInventory,
    LineReport,
    LineValuation,
    LoadClass,
    LoadValueFactor,
    PoleClassSpec,
    ReportFormat,
    ReportWarning,
    StormScenario,
)

__all__ = [
    "AssessmentReport",
    "Bus",
    "ClassDamage",
    "CountRounding",
    "CrewPlan",
    "CrewPlanEntry",
    "HeatTier",
    "Line",
    "LineDamage",
    "LinePoleInventory",
    "LineReport",
    "LineValuation",
    "LoadClass",
    "LoadValueFactor",
    "PoleClassSpec",
    "ReportFormat",
    "ReportWarning",
    "StormScenario",
]
