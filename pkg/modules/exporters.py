"""
Exporters - Text, JSON and CSV renderings of every artifact
Exportadores de texto, JSON y CSV
"""

import io
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from .circuit import CircuitPlan, gate_counts, plan_to_text
from .contract_models import OutputSpec
from .orderfinding import RunRecord, ShotSummary
from .reference_transforms import DeviationReport, TransformMatrix
from .scheduler import Schedule, depth_report, format_schedule


SIGNIFICANT_DIGITS = 17


def format_float(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Fixed significant-digit rendering used by every exporter"""
    return f"{value:.{digits}g}"


def _frame_to_csv(frame: pd.DataFrame, digits: int = SIGNIFICANT_DIGITS) -> str:
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=f"%.{digits}g", lineterminator="\n")
    return buffer.getvalue()


# ==================== Matrices ====================

def matrix_to_text(matrix: TransformMatrix) -> str:
    """
    Omega-exponent grid, one row per frequency c
    Rejilla de exponentes de omega, una fila por frecuencia c
    """
    dim = 1 << matrix.width_l
    lines = [
        f"# kind={matrix.kind} l={matrix.width_l} m={matrix.approx_m} convention={matrix.convention}",
        f"# entry = (1/sqrt({dim})) * w^e, w = exp(2*pi*i/{dim})",
    ]
    width = len(str(dim - 1)) + 2
    for row in matrix.exponents:
        lines.append(" ".join(f"w^{int(e)}".ljust(width) for e in row).rstrip())
    return "\n".join(lines) + "\n"


def matrix_to_json(matrix: TransformMatrix, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Header plus row-major (re, im) pairs with fixed significant digits"""
    header = {
        "kind": matrix.kind,
        "l": matrix.width_l,
        "m": matrix.approx_m,
        "convention": matrix.convention,
    }
    rows = []
    for row in matrix.entries:
        pairs = ", ".join(
            f"[{format_float(v.real, digits)}, {format_float(v.imag, digits)}]" for v in row
        )
        rows.append(f"    [{pairs}]")
    head = json.dumps(header, indent=2)[:-2]
    return head + ',\n  "entries": [\n' + ",\n".join(rows) + "\n  ]\n}\n"


def matrix_to_csv(matrix: TransformMatrix, digits: int = SIGNIFICANT_DIGITS) -> str:
    dim = 1 << matrix.width_l
    records = [
        {"c": c, "a": a, "re": matrix.entries[c, a].real, "im": matrix.entries[c, a].imag}
        for c in range(dim)
        for a in range(dim)
    ]
    return _frame_to_csv(pd.DataFrame.from_records(records, columns=["c", "a", "re", "im"]), digits)


# ==================== Plans and schedules ====================

def plan_to_json(plan: CircuitPlan) -> str:
    hadamards, phases = gate_counts(plan)
    payload = {
        "l": plan.width_l,
        "m": plan.approx_m,
        "hadamard_count": hadamards,
        "controlled_phase_count": phases,
        "gates": [gate.to_line() for gate in plan.gates],
    }
    return json.dumps(payload, indent=2) + "\n"


def plan_summary_text(plan: CircuitPlan) -> str:
    hadamards, phases = gate_counts(plan)
    return plan_to_text(plan) + f"# hadamard={hadamards} controlled_phase={phases}\n"


def schedule_to_text(schedule: Schedule) -> str:
    report = depth_report(schedule)
    lines = [
        format_schedule(schedule),
        f"depth: {report['depth']}",
        f"time steps available: {report['available_steps']}",
        "empty steps: " + (" ".join(str(s) for s in report["empty_steps"]) or "none"),
    ]
    return "\n".join(lines) + "\n"


def schedule_to_json(schedule: Schedule, approx_m: int, valid: Optional[bool] = None) -> str:
    payload: Dict[str, Any] = {
        "l": schedule.width_l,
        "m": approx_m,
        "layers": [[gate.label for gate in layer] for layer in schedule.ordered_layers()],
    }
    payload.update(depth_report(schedule))
    if valid is not None:
        payload["valid"] = valid
    return json.dumps(payload, indent=2) + "\n"


def schedule_to_csv(schedule: Schedule) -> str:
    records = [
        {"step": step, "gates": " ".join(gate.label for gate in layer)}
        for step, layer in zip(schedule.time_steps, schedule.ordered_layers())
    ]
    return _frame_to_csv(pd.DataFrame.from_records(records, columns=["step", "gates"]))


# ==================== Deviation ====================

def _deviation_fields(report: DeviationReport) -> Dict[str, Any]:
    return {
        "l": report.width_l,
        "m": report.approx_m,
        "analytic_bound": report.analytic_bound,
        "max_phase_deviation": report.max_phase_deviation,
        "operator_norm_bound": report.operator_norm_bound,
        "bound_satisfied": report.bound_satisfied,
    }


def deviation_to_text(report: DeviationReport) -> str:
    observed = (
        format_float(report.max_phase_deviation, 10) if report.observed else "n/a (width guard)"
    )
    satisfied = "n/a" if report.bound_satisfied is None else ("yes" if report.bound_satisfied else "no")
    lines = [
        f"l={report.width_l} m={report.approx_m}",
        f"analytic bound: {report.analytic_bound:.6e}",
        f"observed max phase deviation: {observed}",
        f"bound satisfied: {satisfied}",
        f"operator norm bound: {report.operator_norm_bound:.6e}",
    ]
    return "\n".join(lines) + "\n"


def deviation_to_json(report: DeviationReport) -> str:
    return json.dumps(_deviation_fields(report), indent=2) + "\n"


def deviation_sweep_to_json(reports: List[DeviationReport]) -> str:
    return json.dumps([_deviation_fields(r) for r in reports], indent=2) + "\n"


def deviation_to_csv(reports: List[DeviationReport]) -> str:
    frame = pd.DataFrame.from_records([_deviation_fields(r) for r in reports])
    return _frame_to_csv(frame)


# ==================== Order finding ====================

def run_record_fields(record: RunRecord) -> Dict[str, Any]:
    return {
        "measured_bits": [
            {"pass": bit.pass_index, "bit": bit.name, "value": bit.value}
            for bit in record.measured_bits
        ],
        "frequency_estimate": record.frequency_estimate,
    }


def histogram_frame(summary: ShotSummary) -> pd.DataFrame:
    records = [
        {"outcome": outcome, "count": count, "frequency": count / summary.shots}
        for outcome, count in summary.histogram.items()
    ]
    return pd.DataFrame.from_records(records, columns=["outcome", "count", "frequency"])


def histogram_to_csv(summary: ShotSummary) -> str:
    return _frame_to_csv(histogram_frame(summary))


def summary_to_json(summary: ShotSummary) -> str:
    payload = {
        "config": summary.config.model_dump(),
        "shots": summary.shots,
        "runs": [run_record_fields(record) for record in summary.records],
        "histogram": {str(k): v for k, v in summary.histogram.items()},
        "period": summary.period,
        "factors": list(summary.factors) if summary.factors else None,
    }
    return json.dumps(payload, indent=2) + "\n"


def summary_to_text(summary: ShotSummary) -> str:
    config = summary.config
    lines = [
        f"n={config.modulus_n} x={config.base_x} l={config.width_l} m={config.approx_m} "
        f"shots={summary.shots} seed={config.seed}",
        "outcome count frequency",
    ]
    for outcome, count in summary.histogram.items():
        lines.append(f"{outcome} {count} {count / summary.shots:.6f}")
    lines.append(f"period: {summary.period if summary.period else 'none'}")
    if summary.factors:
        lines.append(f"factors: {summary.factors[0]} x {summary.factors[1]}")
    else:
        lines.append("factors: none")
    return "\n".join(lines) + "\n"


# ==================== Destinations ====================

def resolve_destination(spec: OutputSpec, default_dir: Optional[Path] = None) -> Optional[Path]:
    """Relative destinations land in default_dir when one is configured"""
    if spec.destination is None:
        return None
    if default_dir is not None and not spec.destination.is_absolute():
        return default_dir / spec.destination
    return spec.destination


def write_output(content: str, spec: OutputSpec, default_dir: Optional[Path] = None) -> Optional[Path]:
    """
    Write content to the configured destination, or stdout when none
    Escribir el contenido en el destino indicado o en la salida estandar

    Returns:
        The path written, or None for stdout
    """
    path = resolve_destination(spec, default_dir)
    if path is None:
        sys.stdout.write(content)
        return None
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(content)
    return path
