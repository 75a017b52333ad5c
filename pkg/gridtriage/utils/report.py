"""Вывод отчётов: JSON, CSV, текстовые таблицы и Excel.

Отчёт детерминирован: фиксированный порядок полей и колонок, bt и время
ремонта с 4 знаками после запятой, стоимости линий в единицах 10^13
(как в табличном представлении результатов).

Форматы:
- json: Полный отчёт (модель AssessmentReport) или таблица записей
- csv: Основная таблица команды
- table: Все таблицы команды с заголовками и предупреждения
- xlsx: Все таблицы команды, по листу на таблицу (только в файл)
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

import pandas as pd

from gridtriage.config import BT_DECIMALS, PROBABILITY_DECIMALS, VALUE_EXPONENT
from gridtriage.types import AssessmentReport, CrewPlan, ReportFormat, ReportWarning

logger = logging.getLogger(__name__)

_VALUE_SCALE = 10.0**VALUE_EXPONENT


def format_fixed(value: float, decimals: int = BT_DECIMALS) -> str:
    """Число с фиксированным числом знаков (2.1183 -> '2.1183')."""
    return f"{value:.{decimals}f}"


def format_value(value: float) -> str:
    """Стоимость в единицах 10^13 с 4 знаками (7.72e9 -> '0.0008')."""
    return format_fixed(value / _VALUE_SCALE, BT_DECIMALS)


def class_frame(report: AssessmentReport) -> pd.DataFrame:
    """Вероятности отказа и число повреждённых опор по классам."""
    return pd.DataFrame(
        [
            {
                "class_id": item.class_id,
                "q": format_fixed(item.q, PROBABILITY_DECIMALS),
                "damaged_poles": item.damaged_count,
            }
            for item in report.classes
        ],
        columns=["class_id", "q", "damaged_poles"],
    )


def damage_frame(report: AssessmentReport) -> pd.DataFrame:
    """bt и время ремонта по линиям (по возрастанию line_id)."""
    return pd.DataFrame(
        [
            {"line_id": line.line_id, "bt": format_fixed(line.bt), "t_rep_h": format_fixed(line.repair_hours)}
            for line in report.lines
        ],
        columns=["line_id", "bt", "t_rep_h"],
    )


def ranking_frame(report: AssessmentReport) -> pd.DataFrame:
    """Линии в порядке приоритета со стоимостями и уровнем тепловой карты."""
    exponent = f"e{VALUE_EXPONENT}"
    columns = [
        "rank",
        "line_id",
        "to_bus",
        "location_tag",
        "bt",
        "t_rep_h",
        f"static_value_{exponent}",
        f"dynamic_load_value_{exponent}",
        f"dynamic_line_value_{exponent}",
        "tier",
    ]
    rows = [
        dict(
            zip(
                columns,
                [
                    line.rank,
                    line.line_id,
                    line.to_bus,
                    line.location_tag or "",
                    format_fixed(line.bt),
                    format_fixed(line.repair_hours),
                    format_value(line.static_value),
                    format_value(line.dynamic_load_value),
                    format_value(line.dynamic_line_value),
                    line.tier.value,
                ],
            )
        )
        for line in report.ranking()
    ]
    return pd.DataFrame(rows, columns=columns)


def crew_frame(plan: CrewPlan) -> pd.DataFrame:
    """Линии восстановления и число бригад; последняя строка итог."""
    rows = [{"line_id": str(entry.line_id), "bt": format_fixed(entry.bt), "teams": entry.teams} for entry in plan.entries]
    rows.append({"line_id": "total", "bt": "", "teams": plan.total_teams})
    return pd.DataFrame(rows, columns=["line_id", "bt", "teams"])


def warnings_frame(warnings: list[ReportWarning]) -> pd.DataFrame:
    return pd.DataFrame(
        [{"code": warning.code, "message": warning.message} for warning in warnings], columns=["code", "message"]
    )


def report_tables(report: AssessmentReport, command: str) -> Dict[str, pd.DataFrame]:
    """Таблицы отчёта для команды в порядке вывода (первая основная).

    Args:
        report: Отчёт оценки.
        command: "damage", "rank" или "plan".
    """
    tables: Dict[str, pd.DataFrame] = {}
    if command == "damage":
        tables["lines"] = damage_frame(report)
        tables["classes"] = class_frame(report)
    elif command == "rank":
        tables["ranking"] = ranking_frame(report)
    elif command == "plan":
        if report.crew_plan is None:
            raise ValueError("Отчёт не содержит плана бригад")
        tables["crew_plan"] = crew_frame(report.crew_plan)
        tables["ranking"] = ranking_frame(report)
    else:
        raise ValueError(f"Неизвестная команда отчёта: {command}")
    if report.warnings:
        tables["warnings"] = warnings_frame(report.warnings)
    return tables


def _dumps(data: Any) -> str:
    return json.dumps(data, indent=4, ensure_ascii=False) + "\n"


def render_tables(tables: Mapping[str, pd.DataFrame], fmt: ReportFormat) -> str:
    """Текстовое представление набора таблиц в формате json, csv или table.

    Для csv выводится только первая (основная) таблица.
    """
    if fmt == ReportFormat.JSON:
        return _dumps({name: frame.to_dict(orient="records") for name, frame in tables.items()})
    if fmt == ReportFormat.CSV:
        first = next(iter(tables.values()))
        return first.to_csv(index=False, lineterminator="\n")
    if fmt == ReportFormat.TABLE:
        blocks = []
        for name, frame in tables.items():
            body = frame.to_string(index=False) if not frame.empty else "(пусто)"
            blocks.append(f"== {name} ==\n{body}")
        return "\n\n".join(blocks) + "\n"
    raise ValueError(f"Формат {fmt.value} выводится только в файл")


def render_report(report: AssessmentReport, command: str, fmt: ReportFormat) -> str:
    """Текст отчёта оценки; JSON содержит полный отчёт."""
    if fmt == ReportFormat.JSON:
        payload = {"command": command, **report.model_dump(mode="json")}
        return _dumps(payload)
    return render_tables(report_tables(report, command), fmt)


def render_summary(summary: Mapping[str, Any], fmt: ReportFormat) -> str:
    """Текст сводки по набору данных (команда validate)."""
    if fmt == ReportFormat.JSON:
        return _dumps(dict(summary))
    rows = [
        {"key": key, "value": value}
        for key, value in summary.items()
        if key != "warnings"
    ]
    tables = {"summary": pd.DataFrame(rows, columns=["key", "value"])}
    warnings = [ReportWarning(**item) for item in summary.get("warnings", [])]
    if warnings:
        tables["warnings"] = warnings_frame(warnings)
    return render_tables(tables, fmt)


def write_xlsx(tables: Mapping[str, pd.DataFrame], path: Union[str, Path]) -> Path:
    """Записывает таблицы в книгу Excel, по листу на таблицу."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with pd.ExcelWriter(target, engine="openpyxl") as writer:
        for name, frame in tables.items():
            frame.to_excel(writer, sheet_name=name[:31], index=False)
    logger.info("Отчёт Excel записан", extra_fields={"path": str(target), "sheets": list(tables)})
    return target


def emit(text: str, out: Optional[Union[str, Path]] = None) -> None:
    """Пишет отчёт в файл out или в стандартный вывод."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(out)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    logger.info("Отчёт записан", extra_fields={"path": str(target), "bytes": len(text.encode("utf-8"))})
