"""Тесты сервисного слоя: полная оценка, развёртка по ветру, графики.

Тест проверяет:
1. Полную оценку ieee33 при 105, 0 и 200 км/ч
2. Примечание о расхождении с эталонной таблицей стоимостей
3. Развёртку по ветру против эталонной таблицы
4. Ряд скоростей, кривые хрупкости и PNG-график
5. Время полной оценки
"""

import time

import pandas as pd
import pytest

from gridtriage.errors import InvalidScenario, UnknownBus, UnknownLine
from gridtriage.services import (
    fragility_curve_table,
    plot_sweep,
    run_assessment,
    speed_range,
    wind_sweep,
)
from gridtriage.types import CountRounding, HeatTier, StormScenario
from gridtriage.utils.dataset import load_dataset
from gridtriage.utils.metrics import MetricsCollector


def test_run_assessment_at_105(ieee33, scenario_105):
    """Проверка полной оценки встроенного набора.

    Проверяемая функция:
        gridtriage.services.run_assessment
    """
    report = run_assessment(ieee33, scenario_105)

    assert [line.line_id for line in report.lines] == list(range(1, 34))
    assert sorted(line.rank for line in report.lines) == list(range(1, 34))
    assert report.ranking()[0].line_id == 1
    assert report.line(1).tier is HeatTier.RED
    assert report.line(1).bt == pytest.approx(2.1183)
    assert [item.damaged_count for item in report.classes] == [1, 20, 44, 14]
    assert report.crew_plan is None
    assert [warning.code for warning in report.warnings] == ["W-REFERENCE-VALUES"]


def test_footnote_only_for_bundled_dataset(ieee33, scenario_105, dataset_dir):
    assert run_assessment(ieee33, scenario_105, footnotes=False).warnings == []
    assert run_assessment(load_dataset(dataset_dir), scenario_105).warnings == []


def test_run_assessment_with_targets(ieee33, scenario_105):
    report = run_assessment(ieee33, scenario_105, targets=[24, 4, 6, 4])
    assert report.crew_plan.target_buses == [4, 6, 24]
    assert report.crew_plan.total_teams == 29


def test_calm_weather_keeps_base_probability(ieee33):
    """Ниже порога скорость не влияет: отказывают опоры с базовой вероятностью p0."""
    report = run_assessment(ieee33, StormScenario(v_real=0))
    assert [item.q for item in report.classes] == [0.05, 0.07, 0.09, 0.11]
    assert [item.damaged_count for item in report.classes] == [1, 7, 9, 2]


def test_saturated_storm(ieee33):
    report = run_assessment(ieee33, StormScenario(v_real=200))
    assert [item.q for item in report.classes] == [1, 1, 1, 1]
    assert [item.damaged_count for item in report.classes] == [15, 106, 98, 21]
    for line in report.lines:
        assert line.bt == ieee33.inventories[line.line_id].total
        assert line.repair_hours == line.bt * 4


def test_unknown_override_line(ieee33):
    with pytest.raises(UnknownLine):
        run_assessment(ieee33, StormScenario(v_real=105, line_wind_overrides={99: 120}))


def test_unknown_target_bus(ieee33, scenario_105):
    with pytest.raises(UnknownBus):
        run_assessment(ieee33, scenario_105, targets=[99])


def test_assessment_time_and_metrics(ieee33, scenario_105):
    run_assessment(ieee33, scenario_105, targets=[4, 6, 24])
    metrics = MetricsCollector().get_metrics()
    assert metrics["counters"]["run_assessment_calls"] == 1
    assert metrics["timings"]["run_assessment"]["max_time"] < 1.0


def test_assessment_and_fine_sweep_time(ieee33, scenario_105):
    """Полная оценка с планом бригад и развёртка 80..150 км/ч с шагом 1 укладываются в секунду."""
    started = time.perf_counter()
    report = run_assessment(ieee33, scenario_105, targets=[4, 6, 24])
    table = wind_sweep(ieee33, speed_range(80, 150, 1))
    elapsed = time.perf_counter() - started

    assert report.crew_plan.total_teams == 29
    assert len(table) == 71
    assert elapsed < 1.0


def test_wind_sweep_matches_reference(ieee33, test_data_dir):
    expected = pd.read_csv(test_data_dir / "sweep_80_150.csv")
    table = wind_sweep(ieee33, speed_range(80, 150, 10))

    pd.testing.assert_frame_equal(table.drop(columns="total"), expected, check_dtype=False)
    assert table["total"].tolist() == expected.drop(columns="wind_kmh").sum(axis=1).tolist()


def test_wind_sweep_single_point(ieee33):
    table = wind_sweep(ieee33, [105])
    assert table[["class_1", "class_2", "class_3", "class_4", "total"]].values.tolist() == [[1, 20, 44, 14, 79]]


def test_wind_sweep_keeps_input_order(ieee33):
    speeds = [150, 80, 120, 95]
    assert wind_sweep(ieee33, speeds, max_workers=4)["wind_kmh"].tolist() == speeds


def test_wind_sweep_ceil_not_below_nearest(ieee33):
    speeds = speed_range(80, 150, 5)
    nearest = wind_sweep(ieee33, speeds)
    ceil = wind_sweep(ieee33, speeds, rounding=CountRounding.CEIL)
    assert (ceil["total"] >= nearest["total"]).all()


def test_wind_sweep_drops_negative_speeds(ieee33, caplog):
    with caplog.at_level("WARNING", logger="gridtriage"):
        table = wind_sweep(ieee33, [-10, 105])
    assert table["wind_kmh"].tolist() == [105]
    assert "Отрицательные скорости" in caplog.text


@pytest.mark.parametrize("speeds", [[], [-1, -5], [float("nan"), float("inf")]])
def test_wind_sweep_without_usable_speeds(ieee33, speeds):
    with pytest.raises(InvalidScenario):
        wind_sweep(ieee33, speeds)


def test_speed_range():
    fine = speed_range(80, 150, 0.1)
    assert len(fine) == 701
    assert fine[0] == 80
    assert fine[-1] == 150
    assert fine[1] == 80.1
    assert speed_range(80, 80, 10) == [80]
    assert speed_range(80, 155, 10)[-1] == 150


@pytest.mark.parametrize(
    "start, stop, step",
    [
        (80, 150, 0),
        (80, 150, -1),
        (150, 80, 10),
        (80, float("inf"), 10),
        (float("nan"), 150, 10),
        (80, 150, float("nan")),
        (float("-inf"), 150, 10),
    ],
)
def test_speed_range_rejects(start, stop, step):
    with pytest.raises(InvalidScenario):
        speed_range(start, stop, step)


def test_fragility_curve_table(ieee33):
    table = fragility_curve_table(ieee33.fragility, [0, 105, 200])
    assert list(table.columns) == ["wind_kmh", "class_1", "class_2", "class_3", "class_4"]
    assert table.iloc[0, 1:].tolist() == [0.05, 0.07, 0.09, 0.11]
    assert table.iloc[1]["class_1"] == 0.05
    assert table.iloc[2, 1:].tolist() == [1, 1, 1, 1]


def test_plot_sweep(ieee33, tmp_path):
    path = plot_sweep(wind_sweep(ieee33, speed_range(80, 150, 10)), tmp_path / "plots" / "sweep.png")
    assert path.exists()
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
