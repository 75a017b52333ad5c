"""Тесты расчётного ядра GridTriage.

Основные тестовые модули:
- test_network.py: Построение радиальной сети, потомки и пути от источника
- test_fragility.py: Кривые хрупкости и число повреждённых опор по классам
- test_damage.py: Ожидаемые повреждения линий и время ремонта
- test_valuation.py: Стоимости нагрузок и линий, рейтинг, тепловая карта
- test_crew.py: Множество восстановления и число бригад

Тесты свойств сверяются с переборными оракулами на случайных деревьях
(tests/strategies.py).

Для запуска тестов ядра используйте:
    $ poetry run pytest tests/core/
"""
