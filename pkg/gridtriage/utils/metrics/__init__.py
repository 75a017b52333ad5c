"""Пакет метрик производительности GridTriage.

Время полного расчёта и развёртки по ветру входит в критерии приёмки,
поэтому основные операции сервиса декорированы track_timing, а CLI умеет
сохранять собранные метрики (--metrics metrics.json).

Основные компоненты:
- MetricsCollector: Потокобезопасный сборщик счетчиков и длительностей
- TimingMetric: Агрегированная статистика длительности операции
- track_timing: Декоратор для измерения времени выполнения
- count_calls: Декоратор для подсчета количества вызовов

Примеры:
    >>> from gridtriage.utils.metrics import MetricsCollector
    >>> metrics = MetricsCollector().get_metrics()
    >>> metrics["timings"]["run_assessment"]["avg_time"]
"""

from gridtriage.utils.metrics.collector import MetricsCollector, TimingMetric
from gridtriage.utils.metrics.decorators import count_calls, track_timing

__all__ = ["MetricsCollector", "TimingMetric", "track_timing", "count_calls"]
