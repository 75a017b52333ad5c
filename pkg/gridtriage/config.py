"""Настройки конфигурации GridTriage.

Модуль собирает в одном месте константы расчётной модели, значения сценария
по умолчанию, имена файлов входных схем и параметры форматирования отчётов.
Остальные модули импортируют значения отсюда, а не задают их повторно.

Категории настроек:
- Константы модели: часов в году, коэффициенты важности нагрузки (CRT)
- Сценарий по умолчанию: время ремонта опоры, точность вероятности, округление
- Данные: каталог встроенных наборов, имена CSV/JSON файлов
- Отчёты: число знаков для bt и t_rep, порядок масштаба для стоимостей
- Коды предупреждений о качестве данных

Примеры:
    >>> from gridtriage.config import HOURS_PER_YEAR, CRT_FACTORS
    >>> CRT_FACTORS["critical"] * 3200
    320000
"""

from pathlib import Path

# Константы модели
# ----------------
# Число часов в году (переводит пиковую мощность в годовой эквивалент энергии)
HOURS_PER_YEAR = 8760

# Коэффициент важности нагрузки по классу потребителя
CRT_FACTORS = {
    "critical": 100,
    "important": 10,
    "ordinary": 1,
}

# Идентификатор служебного узла источника (подстанции), к которому подключена головная линия
SOURCE_NODE_ID = 0

# Сценарий по умолчанию
# ---------------------
DEFAULT_AVG_REPAIR_HOURS = 4.0
DEFAULT_Q_PRECISION = 4
DEFAULT_COUNT_ROUNDING = "nearest"

# Данные
# ------
# Встроенные наборы данных поставляются внутри пакета
DATA_DIR = Path(__file__).parent / "data"
BUNDLED_DATASETS = {"ieee33": DATA_DIR / "ieee33"}

BUSES_FILE = "buses.csv"
LINES_FILE = "lines.csv"
CLASSES_FILE = "classes.csv"
POLES_FILE = "poles.csv"

SCHEMA_COLUMNS = {
    BUSES_FILE: ["bus_id", "load_kw", "load_class", "location_tag"],
    LINES_FILE: ["line_id", "from_bus", "to_bus", "load_factor", "voll"],
    CLASSES_FILE: ["class_id", "life_min_yr", "life_max_yr", "p0", "v_th_kmh", "v_max_kmh", "count"],
    POLES_FILE: ["line_id", "class_id", "count"],
}
# Необязательные колонки схем
OPTIONAL_COLUMNS = {"location_tag"}

# Отчёты
# ------
BT_DECIMALS = 4
PROBABILITY_DECIMALS = 4
# Стоимости линий печатаются в единицах 10^13
VALUE_EXPONENT = 13


# Порог времени полного расчёта, после которого пишется предупреждение (секунды)
ASSESSMENT_TIME_BUDGET = 1.0

# Коды предупреждений
# -------------------
W_ORDERING = "W-ORDERING"
W_INVENTORY = "W-INVENTORY"
W_LIFETIME = "W-LIFETIME"
W_REFERENCE_VALUES = "W-REFERENCE-VALUES"
