"""Интерфейс командной строки GridTriage.

Команды:
    validate  Проверка набора данных и сводка
    damage    Повреждения по классам и линиям (--wind)
    rank      Рейтинг приоритета линий и тепловая карта (--wind)
    plan      План бригад для целевых шин (--wind, --targets)
    sweep     Развёртка по скорости ветра (--from, --to, --step)
    export    Запись набора данных в CSV или JSON

Отчёты пишутся в стандартный вывод или в --out, диагностика в поток ошибок.
Коды завершения: 0 успех, 1 ошибка проверки, 2 ошибка разбора.

Примеры:
    $ gridtriage rank --dataset ieee33 --wind 105 --format json
    $ gridtriage plan --wind 105 --targets 4,6,24
    $ gridtriage sweep --from 80 --to 150 --step 10 --format csv --plot sweep.png
"""

import argparse
import logging
from typing import List, Optional, Sequence

import pandas as pd

from gridtriage.config import PROBABILITY_DECIMALS
from gridtriage.core.crew import non_ordinary_buses
from gridtriage.errors import EXIT_OK, EXIT_VALIDATION, AppError, ErrorHandler, ErrorSeverity, exit_code_for
from gridtriage.logging import setup_logging
from gridtriage.services import fragility_curve_table, plot_sweep, run_assessment, speed_range, wind_sweep
from gridtriage.types import CountRounding, ReportFormat
from gridtriage.utils.dataset import GridModel, load_dataset, network_summary, save_dataset
from gridtriage.utils.metrics import MetricsCollector
from gridtriage.utils.report import (
    emit,
    format_fixed,
    render_report,
    render_summary,
    render_tables,
    report_tables,
    write_xlsx,
)
from gridtriage.utils.settings import ScenarioSettings

logger = logging.getLogger(__name__)


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--dataset", default=None, help="Встроенный набор данных (по умолчанию ieee33)")
    source.add_argument("--dir", default=None, help="Каталог с buses/lines/classes/poles (CSV или JSON)")
    parser.add_argument(
        "--format",
        default=ReportFormat.TABLE.value,
        choices=[item.value for item in ReportFormat],
        help="Формат отчёта",
    )
    parser.add_argument("--out", default=None, help="Файл отчёта (по умолчанию стандартный вывод)")
    parser.add_argument("--metrics", default=None, help="Сохранить метрики производительности в JSON")
    parser.add_argument("--log-dir", default=None, help="Директория для JSON-лога")
    parser.add_argument("--verbose", "-v", action="store_true", help="Отладочные сообщения в поток ошибок")
    return parser


def _scenario_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--wind", type=float, default=None, help="Скорость ветра, км/ч")
    parser.add_argument("--scenario", default=None, help="Файл сценария (key=value или JSON)")
    parser.add_argument("--rounding", choices=["nearest", "ceil"], default=None, help="Округление числа опор")
    parser.add_argument("--q-precision", default=None, help="Знаков вероятности отказа или none")
    parser.add_argument("--avg-repair-hours", type=float, default=None, help="Среднее время ремонта опоры, ч")
    parser.add_argument("--line-wind", default=None, help="Ветер по линиям: line:kmh,line:kmh")
    return parser


def build_parser() -> argparse.ArgumentParser:
    """Строит парсер аргументов со всеми командами."""
    common = _common_parser()
    scenario = _scenario_parser()

    parser = argparse.ArgumentParser(
        prog="gridtriage",
        description="Оценка повреждений распределительной сети при урагане и приоритеты восстановления",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("validate", parents=[common], help="Проверить набор данных")
    commands.add_parser("damage", parents=[common, scenario], help="Повреждения по классам и линиям")
    commands.add_parser("rank", parents=[common, scenario], help="Рейтинг линий и тепловая карта")

    plan = commands.add_parser("plan", parents=[common, scenario], help="План ремонтных бригад")
    plan.add_argument(
        "--targets",
        default=None,
        help="Целевые шины через запятую (по умолчанию все критические и важные)",
    )

    sweep = commands.add_parser("sweep", parents=[common], help="Развёртка по скорости ветра")
    sweep.add_argument("--from", dest="start", type=float, default=80.0, help="Начальная скорость, км/ч")
    sweep.add_argument("--to", dest="stop", type=float, default=150.0, help="Конечная скорость, км/ч")
    sweep.add_argument("--step", type=float, default=10.0, help="Шаг, км/ч")
    sweep.add_argument("--rounding", choices=["nearest", "ceil"], default="nearest", help="Округление числа опор")
    sweep.add_argument("--probabilities", action="store_true", help="Вероятности отказа вместо числа опор")
    sweep.add_argument("--plot", default=None, help="Сохранить график в PNG")

    export = commands.add_parser("export", parents=[common], help="Записать набор данных в каталог")
    export.add_argument("--to-dir", required=True, help="Целевой каталог")
    export.add_argument("--data-format", choices=["csv", "json"], default="csv", help="Формат файлов набора")
    return parser


def _load_model(args: argparse.Namespace) -> GridModel:
    return load_dataset(args.dir if args.dir else (args.dataset or "ieee33"))


def _scenario_settings(args: argparse.Namespace) -> ScenarioSettings:
    settings = ScenarioSettings(args.scenario)
    settings.apply_overrides(
        wind_kmh=args.wind,
        avg_repair_hours=args.avg_repair_hours,
        count_rounding=args.rounding,
    )
    settings.apply_text_overrides(
        q_precision=args.q_precision,
        line_wind_overrides=args.line_wind,
        targets=getattr(args, "targets", None),
    )
    return settings


def _cmd_validate(args: argparse.Namespace, fmt: ReportFormat) -> None:
    summary = network_summary(_load_model(args))
    if fmt == ReportFormat.XLSX:
        summary_frame = pd.DataFrame(
            [{"key": key, "value": str(value)} for key, value in summary.items()], columns=["key", "value"]
        )
        write_xlsx({"summary": summary_frame}, args.out)
        return
    emit(render_summary(summary, fmt), args.out)


def _cmd_assessment(args: argparse.Namespace, fmt: ReportFormat) -> None:
    model = _load_model(args)
    settings = _scenario_settings(args)
    scenario = settings.to_scenario()

    targets: Optional[List[int]] = None
    if args.command == "plan":
        targets = settings.targets
        if targets is None:
            targets = non_ordinary_buses(model.network)
            logger.info("Цели не заданы, используются критические и важные шины", extra_fields={"targets": targets})

    report = run_assessment(model, scenario, targets, footnotes=args.command != "damage")
    if fmt == ReportFormat.XLSX:
        write_xlsx(report_tables(report, args.command), args.out)
        return
    emit(render_report(report, args.command, fmt), args.out)


def _cmd_sweep(args: argparse.Namespace, fmt: ReportFormat) -> None:
    model = _load_model(args)
    speeds = speed_range(args.start, args.stop, args.step)
    if args.probabilities:
        table = fragility_curve_table(model.fragility, speeds)
        ylabel = "Вероятность отказа опоры"
    else:
        table = wind_sweep(model, speeds, rounding=CountRounding(args.rounding))
        ylabel = "Повреждённые опоры"

    if args.plot:
        plot_sweep(table, args.plot, ylabel=ylabel)

    printable = table.copy()
    if args.probabilities:
        for column in printable.columns[1:]:
            printable[column] = printable[column].map(lambda value: format_fixed(value, PROBABILITY_DECIMALS))

    if fmt == ReportFormat.XLSX:
        write_xlsx({"sweep": table}, args.out)
        return
    emit(render_tables({"sweep": printable}, fmt), args.out)


def _cmd_export(args: argparse.Namespace, fmt: ReportFormat) -> None:
    written = save_dataset(_load_model(args), args.to_dir, args.data_format)
    emit("".join(f"{path}\n" for path in written), args.out)


_COMMANDS = {
    "validate": _cmd_validate,
    "damage": _cmd_assessment,
    "rank": _cmd_assessment,
    "plan": _cmd_assessment,
    "sweep": _cmd_sweep,
    "export": _cmd_export,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Разбирает аргументы и выполняет команду.

    Args:
        argv: Аргументы командной строки (по умолчанию sys.argv[1:]).

    Returns:
        Код завершения процесса.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = ReportFormat(args.format)
    if fmt == ReportFormat.XLSX and not args.out:
        parser.error("формат xlsx требует --out")

    setup_logging(log_dir=args.log_dir, verbose=args.verbose)
    handler = ErrorHandler()
    try:
        _COMMANDS[args.command](args, fmt)
        return EXIT_OK
    except AppError as e:
        handler.handle_error(e, args.command)
        return exit_code_for(e)
    except OSError as e:
        handler.handle_error(e, args.command, ErrorSeverity.ERROR)
        return EXIT_VALIDATION
    finally:
        if args.metrics:
            MetricsCollector().save_metrics(args.metrics)
