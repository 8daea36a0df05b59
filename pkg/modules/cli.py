"""
CLI - Command-line front end for matrices, schedules, deviation and order finding
Interfaz de linea de comandos

Subcommands: matrix, schedule, deviation, orderfind, plan. Results go to
stdout (or --output), diagnostics to stderr.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from . import exporters
from .circuit import build_aqft_plan, parse_plan_text
from .contract_models import OrderFindingConfig, OutputFormat, OutputSpec
from .numerics import QubitBudgetError, SimulationError
from .orderfinding import OrderFindingError, run_shots
from .reference_transforms import (
    WidthGuardError,
    afft_matrix,
    deviation_report,
    dft_matrix,
    hadamard_matrix,
)
from .scheduler import EQUIVALENCE_WIDTH, schedule_plan, validate_schedule
from .settings_loader import SettingsPack, load_settings


logger = logging.getLogger(__name__)


def _output_spec(args: argparse.Namespace) -> OutputSpec:
    return OutputSpec(format=args.format, destination=args.output)


def _emit(content: str, args: argparse.Namespace, settings: SettingsPack) -> None:
    path = exporters.write_output(content, _output_spec(args), settings.output_dir())
    if path is not None:
        logger.info("wrote %s", path)


def _check_dense(l: int, settings: SettingsPack) -> None:
    limit = settings.get_limit("dense_width", 10)
    if l > limit:
        raise WidthGuardError(f"Dense width guard: l={l} exceeds {limit}")


def _check_qubits(count: int, settings: SettingsPack) -> None:
    limit = settings.get_limit("max_qubits", 26)
    if count > limit:
        raise QubitBudgetError(f"qubit budget exceeded: {count} > {limit}")


def _resolve_m(args: argparse.Namespace) -> int:
    return args.m if args.m is not None else args.l


# ==================== Commands ====================

def cmd_matrix(args: argparse.Namespace, settings: SettingsPack) -> int:
    """
    Export a dense reference matrix
    Exportar una matriz de referencia densa
    """
    _check_dense(args.l, settings)
    if args.kind == "fft":
        matrix = dft_matrix(args.l)
    elif args.kind == "ht":
        matrix = hadamard_matrix(args.l)
    else:
        matrix = afft_matrix(args.l, _resolve_m(args))

    digits = settings.output.get("significant_digits", exporters.SIGNIFICANT_DIGITS)
    if args.format == OutputFormat.JSON.value:
        content = exporters.matrix_to_json(matrix, digits)
    elif args.format == OutputFormat.CSV.value:
        content = exporters.matrix_to_csv(matrix, digits)
    else:
        content = exporters.matrix_to_text(matrix)
    _emit(content, args, settings)
    return 0


def cmd_schedule(args: argparse.Namespace, settings: SettingsPack) -> int:
    """
    Print the parallel layers of AQFT(m) and the depth report
    Mostrar las capas paralelas y la profundidad
    """
    _check_qubits(args.l, settings)
    m = _resolve_m(args)
    plan = build_aqft_plan(args.l, m)
    schedule = schedule_plan(plan)
    equivalence_width = settings.get_limit("schedule_equivalence_width", EQUIVALENCE_WIDTH)
    validation = validate_schedule(schedule, plan, equivalence_width)
    for issue in validation.errors:
        logger.warning("%s: %s", issue.code, issue.message)

    if args.format == OutputFormat.JSON.value:
        content = exporters.schedule_to_json(schedule, m, validation.is_valid)
    elif args.format == OutputFormat.CSV.value:
        content = exporters.schedule_to_csv(schedule)
    else:
        content = exporters.schedule_to_text(schedule)
        if validation.equivalent is None:
            content += f"matrix check: skipped (l > {equivalence_width})\n"
        else:
            content += f"matrix check: {'equal' if validation.equivalent else 'differs'}\n"
        content += f"valid: {'yes' if validation.is_valid else 'no'}\n"
    _emit(content, args, settings)
    return 0 if validation.is_valid else 1


def cmd_deviation(args: argparse.Namespace, settings: SettingsPack) -> int:
    """
    Analytic bound and, for small l, the exhaustive max phase deviation
    Cota analitica y desviacion maxima observada
    """
    if args.sweep:
        reports = [deviation_report(args.l, m) for m in range(1, args.l + 1)]
    else:
        reports = [deviation_report(args.l, _resolve_m(args))]

    if args.format == OutputFormat.CSV.value:
        content = exporters.deviation_to_csv(reports)
    elif args.format == OutputFormat.JSON.value:
        if args.sweep:
            content = exporters.deviation_sweep_to_json(reports)
        else:
            content = exporters.deviation_to_json(reports[0])
    else:
        content = "\n".join(exporters.deviation_to_text(report) for report in reports)
    _emit(content, args, settings)
    return 0


def cmd_orderfind(args: argparse.Namespace, settings: SettingsPack) -> int:
    """
    Seeded semiclassical order-finding runs with period and factor extraction
    Ejecuciones de busqueda de orden con extraccion de periodo y factores
    """
    if args.n % 2 == 0:
        raise OrderFindingError(f"n={args.n} is even; the demo targets odd composites")
    config = OrderFindingConfig.for_modulus(
        args.n,
        args.x,
        width_l=args.l,
        approx_m=args.m,
        seed=args.seed if args.seed is not None else settings.get_default("run", "seed", 0),
        q_factor=settings.get_default("orderfinding", "q_factor", 5),
    )
    _check_qubits(config.total_qubits, settings)
    shots = args.shots if args.shots is not None else settings.get_default("run", "shots", 64)
    workers = args.workers if args.workers is not None else settings.get_default("run", "workers", 1)
    summary = run_shots(config, shots, workers=workers)

    if args.format == OutputFormat.JSON.value:
        content = exporters.summary_to_json(summary)
    elif args.format == OutputFormat.CSV.value:
        content = exporters.histogram_to_csv(summary)
    else:
        content = exporters.summary_to_text(summary)
    _emit(content, args, settings)
    return 0


def cmd_plan(args: argparse.Namespace, settings: SettingsPack) -> int:
    """
    Export a plan in the line format, or read one back and report its gate counts
    Exportar o importar un plan de circuito
    """
    if args.input is not None:
        try:
            text = Path(args.input).read_text(encoding="utf-8")
        except OSError as e:
            raise SimulationError(f"Cannot read plan file {args.input}: {e.strerror}")
        plan = parse_plan_text(text)
    elif args.l is not None:
        _check_qubits(args.l, settings)
        plan = build_aqft_plan(args.l, _resolve_m(args))
    else:
        raise SimulationError("plan needs --l or --input")

    if args.format == OutputFormat.JSON.value:
        content = exporters.plan_to_json(plan)
    elif args.format == OutputFormat.CSV.value:
        raise SimulationError("plan supports text and json output only")
    else:
        content = exporters.plan_summary_text(plan)
    _emit(content, args, settings)
    return 0


# ==================== Parser ====================

def _add_common(parser: argparse.ArgumentParser, default_format: str) -> None:
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=default_format,
                        help="Output format")
    parser.add_argument("--output", type=Path, default=None,
                        help="Output file (relative paths resolve against AQFT_OUTPUT_DIR)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")


def build_parser(settings: Optional[SettingsPack] = None) -> argparse.ArgumentParser:
    """Argument parser with one subcommand per operation"""
    settings = settings or load_settings()
    default_format = settings.get_default("output", "format", OutputFormat.TEXT.value)

    parser = argparse.ArgumentParser(
        prog="aqft",
        description="AQFT statevector toolkit / Simulador de la transformada de Fourier aproximada",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    matrix = sub.add_parser("matrix", help="Dense reference matrix (l <= dense width)")
    matrix.add_argument("--kind", choices=["fft", "ht", "afft"], default="fft")
    matrix.add_argument("--l", type=int, required=True)
    matrix.add_argument("--m", type=int, default=None, help="AFFT parameter, defaults to l")
    _add_common(matrix, default_format)
    matrix.set_defaults(handler=cmd_matrix)

    schedule = sub.add_parser("schedule", help="Parallel layers of AQFT(m)")
    schedule.add_argument("--l", type=int, required=True)
    schedule.add_argument("--m", type=int, default=None)
    _add_common(schedule, default_format)
    schedule.set_defaults(handler=cmd_schedule)

    deviation = sub.add_parser("deviation", help="AFFT phase deviation against the analytic bound")
    deviation.add_argument("--l", type=int, required=True)
    deviation.add_argument("--m", type=int, default=None)
    deviation.add_argument("--sweep", action="store_true", help="Report every m from 1 to l")
    _add_common(deviation, default_format)
    deviation.set_defaults(handler=cmd_deviation)

    orderfind = sub.add_parser("orderfind", help="Semiclassical order finding and factoring")
    orderfind.add_argument("--n", type=int, required=True)
    orderfind.add_argument("--x", type=int, required=True)
    orderfind.add_argument("--l", type=int, default=None, help="Defaults to the smallest L with 2^L >= 5n^2")
    orderfind.add_argument("--m", type=int, default=None)
    orderfind.add_argument("--shots", type=int, default=None)
    orderfind.add_argument("--seed", type=int, default=None)
    orderfind.add_argument("--workers", type=int, default=None)
    _add_common(orderfind, default_format)
    orderfind.set_defaults(handler=cmd_orderfind)

    plan = sub.add_parser("plan", help="Export or import a gate plan")
    plan.add_argument("--l", type=int, default=None)
    plan.add_argument("--m", type=int, default=None)
    plan.add_argument("--input", type=Path, default=None, help="Plan file to read back")
    _add_common(plan, default_format)
    plan.set_defaults(handler=cmd_plan)

    return parser


def _first_line(message: str) -> str:
    return message.strip().splitlines()[0] if message.strip() else "unknown error"


def main(argv: Optional[List[str]] = None, settings: Optional[SettingsPack] = None) -> int:
    """
    Parse arguments, run the command and map failures to exit status 1
    Ejecutar el comando y devolver el codigo de salida
    """
    settings = settings or load_settings()
    args = build_parser(settings).parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger("modules").setLevel(logging.DEBUG if args.verbose else logging.WARNING)

    try:
        return args.handler(args, settings)
    except SimulationError as e:
        print(f"Error: {_first_line(str(e))}", file=sys.stderr)
        return 1
    except ValidationError as e:
        details = "; ".join(err["msg"] for err in e.errors())
        print(f"Error: {_first_line(details)}", file=sys.stderr)
        return 1
