"""Тестовый пакет GridTriage.

Организация тестов:
- core/: Тесты расчётного ядра (сеть, хрупкость, повреждения, стоимости, бригады)
- test_dataset.py: Загрузка, проверка и сохранение наборов данных
- test_settings.py: Параметры сценария урагана
- test_report.py: Форматы отчётов
- test_services.py: Полная оценка и развёртка по ветру
- test_cli.py: Команды, коды завершения, потоки вывода
- test_error_handlers.py, test_logging.py, test_metrics.py: Сквозная инфраструктура
- strategies.py: Стратегии hypothesis для тестов свойств
- test_data/: Эталонные таблицы для встроенного набора ieee33

Запуск тестов:
    $ poetry run pytest              # Запуск всех тестов
    $ poetry run pytest tests/core/  # Только расчётное ядро
    $ poetry run pytest --cov        # С отчетом о покрытии
"""
