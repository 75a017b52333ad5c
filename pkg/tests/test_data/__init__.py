"""Эталонные таблицы для тестов встроенного набора ieee33."""
