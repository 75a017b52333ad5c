"""Общие фикстуры тестов GridTriage.

Фикстуры:
- ieee33: Встроенный набор данных (загружается один раз на сессию)
- scenario_105: Сценарий урагана 105 км/ч с параметрами по умолчанию
- dataset_dir: Копия встроенного набора во временной директории для изменения
- test_data_dir: Директория с эталонными таблицами
"""

import logging
import shutil
from pathlib import Path
from typing import Generator

import pytest

from gridtriage.config import BUNDLED_DATASETS
from gridtriage.logging import ROOT_LOGGER_NAME
from gridtriage.types import StormScenario
from gridtriage.utils.dataset import GridModel, load_dataset
from gridtriage.utils.metrics import MetricsCollector

TEST_DATA_DIR = Path(__file__).parent / "test_data"


@pytest.fixture(autouse=True)
def _isolated_logging_and_metrics() -> Generator[None, None, None]:
    """Возвращает логгер пакета и сборщик метрик в исходное состояние после теста.

    Note:
        setup_logging отключает распространение записей к корневому логгеру,
        после чего caplog перестаёт их видеть.
    """
    yield
    logger = logging.getLogger(ROOT_LOGGER_NAME)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    logger.propagate = True
    logger.setLevel(logging.NOTSET)
    MetricsCollector().reset()


@pytest.fixture(scope="session")
def ieee33() -> GridModel:
    """Встроенный 33-шинный набор данных."""
    return load_dataset("ieee33")


@pytest.fixture
def scenario_105() -> StormScenario:
    return StormScenario(v_real=105)


@pytest.fixture
def dataset_dir(tmp_path: Path) -> Path:
    """Копия встроенного набора ieee33, которую тест может изменять.

    Args:
        tmp_path: Временная директория pytest.

    Returns:
        Путь к каталогу с buses.csv, lines.csv, classes.csv, poles.csv.
    """
    target = tmp_path / "feeder"
    shutil.copytree(BUNDLED_DATASETS["ieee33"], target)
    return target


@pytest.fixture
def test_data_dir() -> Path:
    return TEST_DATA_DIR
