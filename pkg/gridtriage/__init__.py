"""GridTriage: оценка повреждений распределительной сети при урагане.

Пакет предоставляет:
- Модель радиальной сети с запросами потомков и путей от источника
- Кривые хрупкости опор по классам срока службы
- Ожидаемое число повреждённых опор и время ремонта линий
- Динамические стоимости линий, рейтинг приоритета и тепловую карту
- План ремонтных бригад для критических и важных нагрузок

Модули:
- core: Расчётное ядро
- utils: Загрузка данных, параметры сценария, отчёты, метрики
- errors: Обработка ошибок
- models: Pydantic модели
- services: Сценарии использования (оценка, развёртка по ветру)
- cli: Командная строка

Пример:
    >>> from gridtriage.services import run_assessment
    >>> from gridtriage.utils.dataset import load_dataset
    >>> report = run_assessment(load_dataset("ieee33"), StormScenario(v_real=105))
"""

# Регистрирует ContextLogger до создания логгеров модулей пакета
from gridtriage import logging as _logging  # noqa: F401

__version__ = "0.1.0"
