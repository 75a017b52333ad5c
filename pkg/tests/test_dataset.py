"""Тесты загрузки, проверки и сохранения наборов данных.

Тест проверяет:
1. Встроенный набор ieee33 загружается без предупреждений
2. Ошибки разбора, схемы и проверки указывают файл и строку
3. Запись в CSV и JSON и повторная загрузка дают ту же модель
4. Расхождение инвентаря с описанием классов даёт предупреждение
"""

import json

import pytest
from dirty_equals import IsPartialDict

from gridtriage.errors import CycleDetected, ParseError, SchemaError, ValidationError
from gridtriage.types import LoadClass
from gridtriage.utils.dataset import load_dataset, network_summary, save_dataset


def _replace_line(path, old, new):
    text = path.read_text(encoding="utf-8")
    assert old in text
    path.write_text(text.replace(old, new, 1), encoding="utf-8")


def _append(path, row):
    with open(path, "a", encoding="utf-8") as f:
        f.write(row + "\n")


def test_bundled_dataset(ieee33):
    """Проверка встроенного набора.

    Проверяемая функция:
        gridtriage.utils.dataset.load_dataset
    """
    assert len(ieee33.network.buses) == 33
    assert len(ieee33.network.lines) == 33
    assert ieee33.fragility.class_ids == [1, 2, 3, 4]
    assert ieee33.fragility.total_poles == 240
    assert sum(inventory.total for inventory in ieee33.inventories.values()) == 240
    assert ieee33.network.line(23).load_factor == 0.91
    assert ieee33.network.bus(4).load_class is LoadClass.CRITICAL
    assert ieee33.warnings == ()
    assert ieee33.is_bundled


def test_network_summary(ieee33):
    assert network_summary(ieee33) == IsPartialDict(
        dataset="ieee33",
        buses=33,
        lines=33,
        classes=4,
        poles=240,
        class_poles={1: 15, 2: 106, 3: 98, 4: 21},
        critical_buses=[4],
        important_buses=[6, 24],
        warnings=[],
    )


def test_directory_dataset_is_not_bundled(dataset_dir):
    model = load_dataset(dataset_dir)
    assert model.name == "feeder"
    assert not model.is_bundled


def test_unknown_class_in_poles(dataset_dir):
    _append(dataset_dir / "poles.csv", "5,9,1")
    with pytest.raises(SchemaError) as exc_info:
        load_dataset(dataset_dir)
    assert exc_info.value.field == "class_id"
    assert exc_info.value.row == 79


def test_unknown_line_in_poles(dataset_dir):
    _append(dataset_dir / "poles.csv", "40,1,1")
    with pytest.raises(SchemaError) as exc_info:
        load_dataset(dataset_dir)
    assert exc_info.value.field == "line_id"


def test_duplicate_pole_entry(dataset_dir):
    _append(dataset_dir / "poles.csv", "1,2,1")
    with pytest.raises(ValidationError, match="Повторная запись класса 2"):
        load_dataset(dataset_dir)


def test_non_numeric_value(dataset_dir):
    _replace_line(dataset_dir / "lines.csv", "4,3,4,0.88,3200", "4,3,4,0.88,abc")
    with pytest.raises(ParseError) as exc_info:
        load_dataset(dataset_dir)
    assert exc_info.value.details == IsPartialDict(file=str(dataset_dir / "lines.csv"), row=5, column="voll")


def test_out_of_range_value(dataset_dir):
    _replace_line(dataset_dir / "lines.csv", "4,3,4,0.88,3200", "4,3,4,1.5,3200")
    with pytest.raises(ValidationError) as exc_info:
        load_dataset(dataset_dir)
    assert exc_info.value.row == 5
    assert "load_factor" in str(exc_info.value)


def test_unknown_load_class(dataset_dir):
    _replace_line(dataset_dir / "buses.csv", "4,120,critical,", "4,120,vital,")
    with pytest.raises(ValidationError):
        load_dataset(dataset_dir)


def test_missing_column(dataset_dir):
    (dataset_dir / "classes.csv").write_text("class_id,p0\n1,0.05\n", encoding="utf-8")
    with pytest.raises(SchemaError) as exc_info:
        load_dataset(dataset_dir)
    assert exc_info.value.field == "life_min_yr"


def test_unknown_column(dataset_dir):
    _replace_line(dataset_dir / "poles.csv", "line_id,class_id,count", "line_id,class_id,count,note")
    with pytest.raises(SchemaError):
        load_dataset(dataset_dir)


def test_optional_location_tag_column(dataset_dir):
    path = dataset_dir / "buses.csv"
    rows = [line.rsplit(",", 1)[0] for line in path.read_text(encoding="utf-8").splitlines()]
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    model = load_dataset(dataset_dir)
    assert model.network.bus(4).location_tag is None


@pytest.mark.parametrize("content", ["", "line_id,class_id,count\n1,2,\"1\n"])
def test_broken_csv(dataset_dir, content):
    (dataset_dir / "poles.csv").write_text(content, encoding="utf-8")
    with pytest.raises(ParseError):
        load_dataset(dataset_dir)


def test_missing_file_and_directory(dataset_dir, tmp_path):
    (dataset_dir / "poles.csv").unlink()
    with pytest.raises(ParseError, match="poles.csv"):
        load_dataset(dataset_dir)
    with pytest.raises(ParseError):
        load_dataset(tmp_path / "nowhere")


def test_topology_error_surfaces(dataset_dir):
    _replace_line(dataset_dir / "lines.csv", "2,1,2,", "2,3,2,")
    with pytest.raises(CycleDetected) as exc_info:
        load_dataset(dataset_dir)
    assert exc_info.value.line_ids == [2, 3]


def test_duplicate_line_id(dataset_dir):
    _append(dataset_dir / "lines.csv", "4,33,34,0.9,3200")
    with pytest.raises(ValidationError) as exc_info:
        load_dataset(dataset_dir)
    assert exc_info.value.row == 35


def test_inventory_mismatch_warning(dataset_dir):
    _replace_line(dataset_dir / "classes.csv", "1,0,5,0.05,110,150,15", "1,0,5,0.05,110,150,16")
    model = load_dataset(dataset_dir)
    assert [warning.code for warning in model.warnings] == ["W-INVENTORY"]
    assert model.warnings[0].details == {"class_id": 1, "on_lines": 15, "declared": 16}


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_save_and_reload(ieee33, tmp_path, fmt):
    """Сохранённый набор загружается в модель с теми же значениями."""
    paths = save_dataset(ieee33, tmp_path / fmt, fmt=fmt)
    assert all(path.suffix == f".{fmt}" for path in paths)
    assert len(paths) == 4

    reloaded = load_dataset(tmp_path / fmt)
    assert reloaded.network.buses == ieee33.network.buses
    assert reloaded.network.lines == ieee33.network.lines
    assert reloaded.fragility.classes == ieee33.fragility.classes
    assert reloaded.inventories == ieee33.inventories
    assert reloaded.fragility.get(4).life_max is None
    assert reloaded.warnings == ieee33.warnings


def test_empty_json_poles(ieee33, tmp_path):
    save_dataset(ieee33, tmp_path, fmt="json")
    (tmp_path / "poles.json").write_text("[]", encoding="utf-8")
    model = load_dataset(tmp_path)
    assert all(inventory.total == 0 for inventory in model.inventories.values())
    assert {warning.code for warning in model.warnings} == {"W-INVENTORY"}


def test_json_must_be_list(ieee33, tmp_path):
    save_dataset(ieee33, tmp_path, fmt="json")
    (tmp_path / "buses.json").write_text('{"bus_id": 1}', encoding="utf-8")
    with pytest.raises(ParseError, match="список объектов"):
        load_dataset(tmp_path)


def test_save_rejects_unknown_format(ieee33, tmp_path):
    with pytest.raises(ValueError):
        save_dataset(ieee33, tmp_path, fmt="parquet")


def test_json_null_and_missing_cells_are_empty(ieee33, tmp_path):
    """null и отсутствующий ключ в JSON читаются как пустая ячейка CSV."""
    save_dataset(ieee33, tmp_path, fmt="json")
    buses = json.loads((tmp_path / "buses.json").read_text(encoding="utf-8"))
    buses[0]["location_tag"] = None
    del buses[1]["location_tag"]
    buses[2]["location_tag"] = "PL-3"
    (tmp_path / "buses.json").write_text(json.dumps(buses), encoding="utf-8")

    model = load_dataset(tmp_path)
    assert model.network.bus(1).location_tag is None
    assert model.network.bus(2).location_tag is None
    assert model.network.bus(3).location_tag == "PL-3"
    assert model.fragility.get(4).life_max is None
