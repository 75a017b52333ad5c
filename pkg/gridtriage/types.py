"""Типы данных GridTriage.

Pydantic-модели записей, которые пересекают границы модулей: элементы сети,
классы опор, инвентарь линий, результаты расчётов и итоговый отчёт.
Все модели неизменяемы (frozen) и проверяют диапазоны значений при создании.
"""

import math
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator

from gridtriage.config import (
    CRT_FACTORS,
    DEFAULT_AVG_REPAIR_HOURS,
    DEFAULT_COUNT_ROUNDING,
    DEFAULT_Q_PRECISION,
)


class LoadClass(str, Enum):
    """Класс важности нагрузки шины."""

    CRITICAL = "critical"
    IMPORTANT = "important"
    ORDINARY = "ordinary"

    @property
    def crt(self) -> int:
        """Коэффициент важности CRT (100 / 10 / 1)."""
        return CRT_FACTORS[self.value]


class CountRounding(str, Enum):
    """Правило округления числа повреждённых опор класса."""

    NEAREST = "nearest"
    CEIL = "ceil"


class HeatTier(str, Enum):
    """Уровень тепловой карты приоритетов."""

    RED = "red"
    ORANGE = "orange"
    GREEN = "green"


class ReportFormat(str, Enum):
    """Формат вывода отчёта."""

    JSON = "json"
    CSV = "csv"
    TABLE = "table"
    XLSX = "xlsx"


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class Bus(_Frozen):
    """Шина распределительной сети.

    Args:
        id (int): Уникальный положительный идентификатор
        load (float): Нагрузка шины, кВт
        load_class (LoadClass): Класс важности нагрузки
        location_tag (Optional[str]): Метка ГИС; не интерпретируется, только передаётся в отчёт
    """

    id: int = Field(..., gt=0, description="Идентификатор шины")
    load: float = Field(..., ge=0, description="Нагрузка, кВт")
    load_class: LoadClass = Field(LoadClass.ORDINARY, description="Класс важности нагрузки")
    location_tag: Optional[str] = Field(None, description="Метка местоположения (ГИС)")

    @field_validator("location_tag")
    def empty_tag_is_none(cls, v: Optional[str]) -> Optional[str]:
        return v or None


class Line(_Frozen):
    """Линия, питающая ровно одну шину (to_bus).

    Note:
        from_bus может ссылаться на служебный узел источника с идентификатором 0.
    """

    id: int = Field(..., gt=0, description="Идентификатор линии")
    from_bus: int = Field(..., ge=0, description="Шина со стороны источника")
    to_bus: int = Field(..., gt=0, description="Питаемая шина")
    load_factor: float = Field(..., gt=0, le=1, description="Коэффициент нагрузки LF")
    voll: float = Field(..., gt=0, description="Стоимость недоотпуска, ден. ед./кВт·ч")


class PoleClassSpec(_Frozen):
    """Класс опор по сроку службы с параметрами кривой хрупкости.

    Args:
        class_id (int): Номер класса (1..K по возрастанию срока службы)
        life_min (float): Нижняя граница срока службы, лет
        life_max (Optional[float]): Верхняя граница (не включается); None для открытого интервала
        p0 (float): Вероятность отказа с учётом надёжности, [0, 1)
        v_th (float): Порог устойчивости по ветру, км/ч
        v_max (float): Скорость гарантированного разрушения, км/ч
        count (int): Число опор класса в сети

    Note:
        Требование v_max > v_th проверяется расчётом наклона (DegenerateCurve),
        а не моделью, чтобы ошибка указывала на класс.
    """

    class_id: int = Field(..., gt=0)
    life_min: float = Field(0.0, ge=0)
    life_max: Optional[float] = Field(None, gt=0)
    p0: float = Field(..., ge=0, lt=1)
    v_th: float = Field(..., gt=0)
    v_max: float = Field(..., gt=0)
    count: int = Field(..., ge=0)


class LinePoleInventory(_Frozen):
    """Число опор линии в каждом классе срока службы."""

    line_id: int = Field(..., gt=0)
    per_class_counts: Dict[int, int] = Field(default_factory=dict)

    @field_validator("per_class_counts")
    def counts_non_negative(cls, v: Dict[int, int]) -> Dict[int, int]:
        for class_id, count in v.items():
            if count < 0:
                raise ValueError(f"Отрицательное число опор класса {class_id}: {count}")
        return dict(sorted(v.items()))

    @computed_field  # type: ignore[prop-decorator]
    @property
    def total(self) -> int:
        return sum(self.per_class_counts.values())


class ClassDamage(_Frozen):
    """Повреждения класса опор при заданной скорости ветра."""

    class_id: int
    q: float = Field(..., ge=0, le=1, description="Вероятность отказа опоры класса")
    damaged_count: int = Field(..., ge=0, description="Число повреждённых опор класса")


class LineDamage(_Frozen):
    """Ожидаемые повреждения и длительность ремонта линии."""

    line_id: int
    bt: float = Field(..., ge=0, description="Ожидаемое число повреждённых опор")
    repair_hours: float = Field(..., ge=0, description="Длительность ремонта, ч")
    per_pole_hours: Optional[List[float]] = None


class LoadValueFactor(_Frozen):
    """Множитель ценности нагрузки value_i = CRT × voll."""

    crt: int
    voll: float = Field(..., gt=0)

    @field_validator("crt")
    def crt_known(cls, v: int) -> int:
        if v not in CRT_FACTORS.values():
            raise ValueError(f"CRT должен быть одним из {sorted(CRT_FACTORS.values())}")
        return v

    @computed_field  # type: ignore[prop-decorator]
    @property
    def product(self) -> float:
        return self.crt * self.voll


class LineValuation(_Frozen):
    """Стоимости линии, её место в рейтинге и уровень тепловой карты."""

    line_id: int
    static_value: float = Field(..., ge=0)
    dynamic_load_value: float = Field(..., ge=0)
    dynamic_line_value: float = Field(..., ge=0)
    rank: int = Field(..., gt=0)
    tier: HeatTier


class CrewPlanEntry(_Frozen):
    line_id: int
    bt: float = Field(..., ge=0)
    teams: int = Field(..., ge=0)


class CrewPlan(_Frozen):
    """План бригад: линии восстановления в порядке приоритета."""

    target_buses: List[int] = Field(default_factory=list)
    entries: List[CrewPlanEntry] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def total_teams(self) -> int:
        return sum(entry.teams for entry in self.entries)


class StormScenario(_Frozen):
    """Параметры урагана и правил расчёта.

    Args:
        v_real (float): Устойчивая скорость ветра, км/ч
        t_rep_av (float): Среднее время ремонта одной опоры, ч
        q_precision (Optional[int]): Знаков после запятой для вероятности отказа; None без округления
        count_rounding (CountRounding): Округление числа повреждённых опор класса
        line_wind_overrides (Dict[int, float]): Скорость ветра для отдельных линий
    """

    v_real: float = Field(..., ge=0, allow_inf_nan=False)
    t_rep_av: float = Field(DEFAULT_AVG_REPAIR_HOURS, gt=0, allow_inf_nan=False)
    q_precision: Optional[int] = Field(DEFAULT_Q_PRECISION, ge=0, le=12)
    count_rounding: CountRounding = CountRounding(DEFAULT_COUNT_ROUNDING)
    line_wind_overrides: Dict[int, float] = Field(default_factory=dict)

    @field_validator("line_wind_overrides")
    def overrides_non_negative(cls, v: Dict[int, float]) -> Dict[int, float]:
        for line_id, speed in v.items():
            if not math.isfinite(speed) or speed < 0:
                raise ValueError(f"Недопустимая скорость ветра для линии {line_id}: {speed}")
        return dict(sorted(v.items()))

    def wind_for_line(self, line_id: int) -> float:
        return self.line_wind_overrides.get(line_id, self.v_real)


class ReportWarning(_Frozen):
    """Предупреждение о качестве данных со стабильным кодом."""

    code: str
    message: str
    details: Dict[str, Any] = Field(default_factory=dict)


class LineReport(_Frozen):
    """Строка отчёта по линии: повреждения и стоимости."""

    line_id: int
    to_bus: int
    location_tag: Optional[str] = None
    bt: float
    repair_hours: float
    static_value: float
    dynamic_load_value: float
    dynamic_line_value: float
    rank: int
    tier: HeatTier


class AssessmentReport(_Frozen):
    """Итоговый отчёт оценки: классы, линии, план бригад, предупреждения.

    Note:
        Линии перечислены по возрастанию идентификатора, каждая ровно один раз;
        порядок приоритета задаётся полем rank.
    """

    dataset: str
    scenario: StormScenario
    classes: List[ClassDamage]
    lines: List[LineReport]
    crew_plan: Optional[CrewPlan] = None
    warnings: List[ReportWarning] = Field(default_factory=list)

    def ranking(self) -> List[LineReport]:
        """Линии в порядке приоритета (ранг 1 первым)."""
        return sorted(self.lines, key=lambda line: line.rank)

    def line(self, line_id: int) -> LineReport:
        for line in self.lines:
            if line.line_id == line_id:
                return line
        raise KeyError(line_id)
