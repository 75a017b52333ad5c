"""Модуль для сбора и хранения метрик производительности.

Потокобезопасный сборщик счётчиков вызовов и длительностей операций.
CLI сохраняет собранные метрики в JSON по флагу --metrics.
"""

import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from threading import Lock
from time import perf_counter, time
from typing import Any, Dict, List, Optional, Union

logger = logging.getLogger(__name__)

MAX_SAMPLES = 1000


@dataclass
class TimingMetric:
    """Статистика длительности одной именованной операции.

    Attributes:
        count: Количество проведенных измерений.
        total_time: Общее накопленное время выполнения (секунды).
        avg_time: Среднее время выполнения.
        min_time: Минимальное время выполнения.
        max_time: Максимальное время выполнения.
        last_update: Временная метка последнего обновления (Unix timestamp).
        samples: Последние значения времени выполнения (не более MAX_SAMPLES).
    """

    count: int = 0
    total_time: float = 0.0
    avg_time: float = 0.0
    min_time: float = float("inf")
    max_time: float = 0.0
    last_update: float = field(default_factory=time)
    samples: List[float] = field(default_factory=list)


class MetricsCollector:
    """Потокобезопасный сборщик метрик (Singleton).

    Examples:
        >>> collector = MetricsCollector()
        >>> token = collector.start_timer("run_assessment")
        >>> collector.stop_timer(token)
        >>> collector.increment_counter("sweep_points", 71)
        >>> collector.get_metrics()["counters"]["sweep_points"]
        71
    """

    _instance: Optional["MetricsCollector"] = None
    _instance_lock = Lock()

    def __new__(cls) -> "MetricsCollector":
        with cls._instance_lock:
            if cls._instance is None:
                instance = super().__new__(cls)
                instance._lock = Lock()
                instance._initialize()
                cls._instance = instance
            return cls._instance

    def _initialize(self) -> None:
        self._counters: Dict[str, int] = defaultdict(int)
        self._metrics: Dict[str, TimingMetric] = defaultdict(TimingMetric)
        self._timers: Dict[int, tuple[str, float]] = {}
        self._next_token = 0

    def increment_counter(self, name: str, value: int = 1) -> None:
        """Увеличивает именованный счетчик на указанное значение."""
        with self._lock:
            self._counters[name] += value

    def record_timing(self, name: str, duration: float) -> None:
        """Записывает измерение времени выполнения и обновляет агрегаты.

        Args:
            name: Имя метрики.
            duration: Продолжительность в секундах.
        """
        with self._lock:
            metric = self._metrics[name]
            metric.count += 1
            metric.total_time += duration
            metric.avg_time = metric.total_time / metric.count
            metric.min_time = min(metric.min_time, duration)
            metric.max_time = max(metric.max_time, duration)
            metric.last_update = time()
            metric.samples.append(duration)
            if len(metric.samples) > MAX_SAMPLES:
                metric.samples.pop(0)

    def start_timer(self, name: str) -> int:
        """Запускает таймер и возвращает его токен.

        Токен позволяет измерять одну и ту же операцию из нескольких потоков
        одновременно (точки развёртки по скорости ветра считаются параллельно).
        """
        with self._lock:
            token = self._next_token
            self._next_token += 1
            self._timers[token] = (name, perf_counter())
        return token

    def stop_timer(self, token: int) -> Optional[float]:
        """Останавливает таймер и записывает продолжительность.

        Returns:
            Продолжительность в секундах или None, если таймер не запускался.
        """
        with self._lock:
            entry = self._timers.pop(token, None)
        if entry is None:
            logger.warning(f"Таймер {token} не был запущен")
            return None
        name, started = entry
        duration = perf_counter() - started
        self.record_timing(name, duration)
        return duration

    def get_metrics(self) -> Dict[str, Any]:
        """Возвращает все собранные метрики в сериализуемом виде."""
        with self._lock:
            result: Dict[str, Any] = {"counters": dict(self._counters), "timings": {}}
            for name, metric in self._metrics.items():
                result["timings"][name] = {
                    "count": metric.count,
                    "total_time": metric.total_time,
                    "avg_time": metric.avg_time,
                    "min_time": metric.min_time,
                    "max_time": metric.max_time,
                    "last_update": metric.last_update,
                    "samples": metric.samples[-100:],
                }
            return result

    def save_metrics(self, file_path: Union[str, Path]) -> None:
        """Сохраняет метрики в JSON файл."""
        try:
            with open(file_path, "w", encoding="utf-8") as f:
                json.dump(self.get_metrics(), f, indent=2)
        except OSError as e:
            logger.error(f"Не удалось сохранить метрики: {e}")
            raise

    def reset(self) -> None:
        """Сбрасывает все собранные метрики и активные таймеры."""
        with self._lock:
            self._initialize()
