"""
Scheduler - Parallel time-step layers for a circuit plan
Planificador de capas paralelas para un plan de circuito

At time step K (run from 2L-2 down to 0) perform P_I if I+I = K and Q_IJ if
I+J = K. AQFT plans keep the step numbers of their retained gates; empty steps
are dropped from the layer list and listed in the depth report.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from .circuit import DENSE_WIDTH, CircuitPlan, GateKind, GateOp, plan_to_matrix
from .numerics import SimulationError


logger = logging.getLogger(__name__)

EQUIVALENCE_WIDTH = 7
EQUIVALENCE_TOLERANCE = 1e-10


class ScheduleError(SimulationError):
    """Exception raised when a plan cannot be scheduled"""
    pass


@dataclass(frozen=True)
class Schedule:
    """Layers of qubit-disjoint gates in execution order / Capas en orden de ejecucion"""
    width_l: int
    layers: Tuple[FrozenSet[GateOp], ...]
    time_steps: Tuple[int, ...] = ()
    empty_steps: Tuple[int, ...] = ()

    def ordered_layers(self) -> List[List[GateOp]]:
        """Layers with gates in canonical order"""
        return [sorted(layer, key=GateOp.sort_key) for layer in self.layers]

    def flattened(self) -> List[GateOp]:
        return [gate for layer in self.ordered_layers() for gate in layer]


@dataclass
class ScheduleIssue:
    """Single validation finding / Hallazgo de validacion"""
    code: str
    message: str
    layer_index: Optional[int] = None
    gates: List[str] = field(default_factory=list)


@dataclass
class ScheduleValidation:
    """Result of validate_schedule / Resultado de la validacion"""
    is_valid: bool
    errors: List[ScheduleIssue] = field(default_factory=list)
    disjoint: bool = True
    complete: bool = True
    equivalent: Optional[bool] = None
    max_matrix_error: Optional[float] = None

    def add_error(self, code: str, message: str, layer_index: Optional[int] = None, gates: Optional[List[str]] = None):
        self.errors.append(ScheduleIssue(code=code, message=message, layer_index=layer_index, gates=gates or []))
        self.is_valid = False


def time_step(gate: GateOp) -> int:
    """2I for P_I, I+J for Q_IJ"""
    if gate.kind == GateKind.HADAMARD:
        return 2 * gate.j
    return gate.j + gate.k


def schedule_plan(plan: CircuitPlan) -> Schedule:
    """
    Assign every gate to its time step and emit layers K = 2L-2, ..., 0
    Asignar cada puerta a su paso de tiempo

    Args:
        plan: Plan built by build_qft_plan / build_aqft_plan

    Returns:
        Schedule with empty steps dropped

    Raises:
        ScheduleError: If a gate exceeds the plan width
    """
    buckets: Dict[int, List[GateOp]] = {}
    for gate in plan.gates:
        if max(gate.qubits) >= plan.width_l:
            raise ScheduleError(f"Gate {gate.label} exceeds width {plan.width_l}")
        buckets.setdefault(time_step(gate), []).append(gate)

    layers: List[FrozenSet[GateOp]] = []
    steps: List[int] = []
    empty: List[int] = []
    for step in range(2 * plan.width_l - 2, -1, -1):
        if step in buckets:
            layers.append(frozenset(buckets[step]))
            steps.append(step)
        else:
            empty.append(step)

    logger.debug("scheduled l=%d m=%d into %d layers", plan.width_l, plan.approx_m, len(layers))
    return Schedule(width_l=plan.width_l, layers=tuple(layers), time_steps=tuple(steps), empty_steps=tuple(empty))


def schedule_depth(schedule: Schedule) -> int:
    """Number of non-empty layers"""
    return sum(1 for layer in schedule.layers if layer)


def depth_report(schedule: Schedule) -> Dict[str, object]:
    """Depth, available steps and the steps left empty by gate deletion"""
    return {
        "depth": schedule_depth(schedule),
        "available_steps": max(2 * schedule.width_l - 1, 1),
        "time_steps": list(schedule.time_steps),
        "empty_steps": list(schedule.empty_steps),
    }


def format_schedule(schedule: Schedule) -> str:
    """Bracket display in execution order: [P4] [Q34] [P3 Q24] ..."""
    return " ".join(
        "[" + " ".join(gate.label for gate in layer) + "]"
        for layer in schedule.ordered_layers()
    )


def validate_schedule(
    schedule: Schedule,
    plan: CircuitPlan,
    equivalence_width: int = EQUIVALENCE_WIDTH,
) -> ScheduleValidation:
    """
    Check qubit-disjointness, gate multiset equality and matrix equivalence
    Validar disyuncion de qubits, completitud y equivalencia matricial

    The matrix check runs only for widths up to equivalence_width; it confirms
    every reordering crossed only commuting gate pairs.

    Args:
        schedule: Schedule derived from plan
        plan: Source plan
        equivalence_width: Widest plan given the dense matrix check (capped at DENSE_WIDTH)

    Returns:
        ScheduleValidation listing every violation found
    """
    result = ScheduleValidation(is_valid=True)

    for index, layer in enumerate(schedule.ordered_layers()):
        usage = Counter(q for gate in layer for q in gate.qubits)
        for qubit, count in sorted(usage.items()):
            if count > 1:
                offenders = [gate.label for gate in layer if qubit in gate.qubits]
                result.disjoint = False
                result.add_error(
                    "disjointness",
                    f"Layer {index} uses qubit {qubit} in {count} gates: {' '.join(offenders)}",
                    layer_index=index,
                    gates=offenders,
                )

    scheduled = Counter(schedule.flattened())
    expected = Counter(plan.gates)
    if scheduled != expected:
        missing = sorted(g.label for g in (expected - scheduled).elements())
        extra = sorted(g.label for g in (scheduled - expected).elements())
        result.complete = False
        result.add_error(
            "completeness",
            f"Schedule gates differ from plan: missing {missing}, extra {extra}",
            gates=missing + extra,
        )

    if plan.width_l <= min(equivalence_width, DENSE_WIDTH) and result.complete:
        layered = CircuitPlan(width_l=plan.width_l, approx_m=plan.approx_m, gates=tuple(schedule.flattened()))
        error = float(np.max(np.abs(plan_to_matrix(layered) - plan_to_matrix(plan))))
        result.max_matrix_error = error
        result.equivalent = error <= EQUIVALENCE_TOLERANCE
        if not result.equivalent:
            result.add_error(
                "equivalence",
                f"Layer product differs from plan matrix by {error:.3e}",
            )

    return result
