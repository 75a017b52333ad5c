"""Утилиты GridTriage.

Подмодули:
- dataset: Загрузка, проверка и сохранение наборов данных сети
- settings: Параметры сценария урагана (файл и флаги)
- report: Вывод отчётов в JSON, CSV, таблицы и Excel
- metrics: Сбор метрик производительности
"""
