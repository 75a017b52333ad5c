"""Кривые хрупкости опор по классам срока службы.

Вероятность отказа опоры класса кусочно-линейна по скорости ветра:
p0 ниже порога v_th, линейный рост от p0 до 1 на отрезке [v_th, v_max],
и 1 выше v_max. На границах v_th и v_max используется ветвь роста
(значения совпадают, так что выбор влияет только на детерминизм).

Расчёт ведётся в Decimal: округление "половина вверх" к 4 знакам и к
целому числу опор должно совпадать с табличными значениями точно, а двоичные
float дают 0.18624999... вместо 0.18625.

Классы и функции:
- FragilitySet: Упорядоченный набор классов опор
- fragility_slope: Наклон линейного участка кривой
- failure_probability: Вероятность отказа опоры класса при заданном ветре
- class_damage_count: Ожидаемое число повреждённых опор класса
- class_damage: Повреждения всех классов набора
"""

import logging
from collections import Counter
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_HALF_UP, Decimal
from typing import List, Optional, Tuple

from gridtriage.config import W_LIFETIME, W_ORDERING
from gridtriage.errors import DegenerateCurve, DuplicateClass, UnknownClass
from gridtriage.types import ClassDamage, CountRounding, PoleClassSpec, ReportWarning

logger = logging.getLogger(__name__)

_ONE = Decimal(1)


def to_decimal(value: float) -> Decimal:
    """Переводит float в Decimal по кратчайшему десятичному представлению (0.07 -> Decimal('0.07'))."""
    return Decimal(repr(float(value)))


def quantize(value: Decimal, precision: Optional[int]) -> Decimal:
    """Округляет "половина вверх" до precision знаков; None оставляет значение как есть."""
    if precision is None:
        return value
    return value.quantize(Decimal(1).scaleb(-precision), rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class FragilitySet:
    """Упорядоченный по class_id набор классов опор.

    Attributes:
        classes: Классы опор по возрастанию class_id.
    """

    classes: Tuple[PoleClassSpec, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.classes, key=lambda spec: spec.class_id))
        duplicates = [class_id for class_id, count in Counter(spec.class_id for spec in ordered).items() if count > 1]
        if duplicates:
            raise DuplicateClass(duplicates)
        object.__setattr__(self, "classes", ordered)
        for spec in ordered:
            fragility_slope(spec)

    @property
    def class_ids(self) -> List[int]:
        return [spec.class_id for spec in self.classes]

    @property
    def total_poles(self) -> int:
        return sum(spec.count for spec in self.classes)

    def get(self, class_id: int) -> PoleClassSpec:
        for spec in self.classes:
            if spec.class_id == class_id:
                return spec
        raise UnknownClass(class_id)

    def ordering_warnings(self) -> List[ReportWarning]:
        """Проверяет рекомендуемые порядки параметров по возрастанию срока службы.

        Ожидается: p0 не убывает, v_th и v_max не возрастают с номером класса.
        Нарушения не являются ошибкой: табличные данные нередко индексируют
        классы в обратном порядке.

        Returns:
            Предупреждения W-ORDERING (по одному на параметр) и W-LIFETIME.
        """
        warnings: List[ReportWarning] = []
        checks = {
            "p0": (lambda a, b: a <= b, "не убывать"),
            "v_th": (lambda a, b: a >= b, "не возрастать"),
            "v_max": (lambda a, b: a >= b, "не возрастать"),
        }
        for name, (ok, expectation) in checks.items():
            values = [getattr(spec, name) for spec in self.classes]
            broken = [
                (self.classes[i].class_id, self.classes[i + 1].class_id)
                for i in range(len(values) - 1)
                if not ok(values[i], values[i + 1])
            ]
            if broken:
                warnings.append(
                    ReportWarning(
                        code=W_ORDERING,
                        message=f"Параметр {name} должен {expectation} с ростом срока службы",
                        details={"parameter": name, "class_pairs": broken},
                    )
                )

        for previous, current in zip(self.classes, self.classes[1:]):
            if previous.life_max is None or previous.life_max > current.life_min:
                warnings.append(
                    ReportWarning(
                        code=W_LIFETIME,
                        message=(
                            f"Интервалы срока службы классов {previous.class_id} и "
                            f"{current.class_id} пересекаются или нарушают порядок"
                        ),
                        details={"class_pair": [previous.class_id, current.class_id]},
                    )
                )

        for warning in warnings:
            logger.warning(warning.message, extra_fields={"code": warning.code, **warning.details})
        return warnings


def fragility_slope(spec: PoleClassSpec) -> float:
    """Наклон линейного участка кривой хрупкости, 1/(км/ч).

    Args:
        spec: Класс опор.

    Returns:
        (1 - p0) / (v_max - v_th), строго положительное число.

    Raises:
        DegenerateCurve: Если v_max <= v_th.

    Examples:
        >>> fragility_slope(PoleClassSpec(class_id=2, p0=0.07, v_th=100, v_max=140, count=106))
        0.02325
    """
    if spec.v_max <= spec.v_th:
        raise DegenerateCurve(spec.class_id, spec.v_th, spec.v_max)
    return float(_slope(spec))


def _slope(spec: PoleClassSpec) -> Decimal:
    return (_ONE - to_decimal(spec.p0)) / (to_decimal(spec.v_max) - to_decimal(spec.v_th))


def _raw_probability(spec: PoleClassSpec, v_real: float) -> Decimal:
    if spec.v_max <= spec.v_th:
        raise DegenerateCurve(spec.class_id, spec.v_th, spec.v_max)
    if v_real < 0:
        raise ValueError(f"Скорость ветра не может быть отрицательной: {v_real}")

    p0 = to_decimal(spec.p0)
    if v_real < spec.v_th:
        return p0
    if v_real > spec.v_max:
        return _ONE
    # Умножение до деления: на v_max ветвь даёт ровно 1
    v_th = to_decimal(spec.v_th)
    span = to_decimal(spec.v_max) - v_th
    ramp = p0 + (_ONE - p0) * (to_decimal(v_real) - v_th) / span
    return min(ramp, _ONE)


def failure_probability(spec: PoleClassSpec, v_real: float, precision: Optional[int] = 4) -> float:
    """Вероятность отказа опоры класса при скорости ветра v_real.

    Args:
        spec: Класс опор.
        v_real: Скорость ветра, км/ч (>= 0).
        precision: Знаков после запятой (округление половина вверх); None без округления.

    Returns:
        Вероятность отказа в [p0, 1].

    Raises:
        DegenerateCurve: Если v_max <= v_th.

    Examples:
        >>> spec = PoleClassSpec(class_id=2, p0=0.07, v_th=100, v_max=140, count=106)
        >>> failure_probability(spec, 105)
        0.1863
    """
    return float(quantize(_raw_probability(spec, v_real), precision))


def probability_decimal(spec: PoleClassSpec, v_real: float, precision: Optional[int] = 4) -> Decimal:
    """То же, что failure_probability, но без перевода в float (для точных сумм по линии)."""
    return quantize(_raw_probability(spec, v_real), precision)


def class_damage_count(
    spec: PoleClassSpec,
    v_real: float,
    rounding: CountRounding = CountRounding.NEAREST,
    precision: Optional[int] = 4,
) -> ClassDamage:
    """Ожидаемое число повреждённых опор класса.

    Число считается от неокруглённой вероятности: q × count, затем округление
    к ближайшему целому (половина вверх) или вверх, и ограничение [0, count].

    Args:
        spec: Класс опор.
        v_real: Скорость ветра, км/ч.
        rounding: Правило округления числа опор.
        precision: Точность вероятности q, выводимой в результате.

    Returns:
        ClassDamage с вероятностью q и числом повреждённых опор.

    Examples:
        >>> spec = PoleClassSpec(class_id=2, p0=0.07, v_th=100, v_max=140, count=106)
        >>> class_damage_count(spec, 110).damaged_count
        32
    """
    q = _raw_probability(spec, v_real)
    mode = ROUND_CEILING if rounding == CountRounding.CEIL else ROUND_HALF_UP
    damaged = int((q * spec.count).quantize(_ONE, rounding=mode))
    damaged = max(0, min(spec.count, damaged))
    return ClassDamage(class_id=spec.class_id, q=float(quantize(q, precision)), damaged_count=damaged)


def class_damage(
    fragility: FragilitySet,
    v_real: float,
    rounding: CountRounding = CountRounding.NEAREST,
    precision: Optional[int] = 4,
) -> List[ClassDamage]:
    """Повреждения всех классов набора при скорости ветра v_real (по возрастанию class_id)."""
    return [class_damage_count(spec, v_real, rounding, precision) for spec in fragility.classes]
