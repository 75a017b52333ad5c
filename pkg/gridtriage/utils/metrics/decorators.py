"""Декораторы для автоматического сбора метрик производительности."""

import logging
from functools import wraps
from typing import Any, Callable, Optional, TypeVar

from gridtriage.utils.metrics.collector import MetricsCollector

T = TypeVar("T")
logger = logging.getLogger(__name__)


def track_timing(
    name: Optional[str] = None, threshold: Optional[float] = None
) -> Callable[[Callable[..., T]], Callable[..., T]]:
    """Декоратор для отслеживания времени выполнения функций.

    Args:
        name: Имя метрики. По умолчанию используется имя функции.
        threshold: Порог в секундах; при превышении пишется предупреждение.

    Examples:
        >>> @track_timing(name="wind_sweep", threshold=1.0)
        ... def wind_sweep(model, speeds):
        ...     ...
    """

    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        metric_name = name or func.__name__

        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> T:
            collector = MetricsCollector()
            token = collector.start_timer(metric_name)
            try:
                return func(*args, **kwargs)
            finally:
                duration = collector.stop_timer(token)
                if threshold is not None and duration is not None and duration > threshold:
                    logger.warning(
                        f"Функция {func.__name__} превысила порог: {duration:.4f}s > {threshold:.4f}s"
                    )

        return wrapper

    return decorator


def count_calls(name: Optional[str] = None) -> Callable[[Callable[..., T]], Callable[..., T]]:
    """Декоратор для подсчета вызовов функций.

    Args:
        name: Имя счетчика. По умолчанию имя функции с суффиксом "_calls".
    """

    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        counter_name = name or f"{func.__name__}_calls"

        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> T:
            MetricsCollector().increment_counter(counter_name)
            return func(*args, **kwargs)

        return wrapper

    return decorator
