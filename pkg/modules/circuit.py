"""
Circuit - Gate plans for the Fourier transform and AQFT(m)
Planes de puertas para la transformada de Fourier y AQFT(m)

A plan lists gates in application order (first element applied first), the
reverse of the matrix-product notation P_0 Q_01 ... P_{L-1}. Pass J runs
Q_{J,K} for K descending from min(J+m-1, L-1) to J+1, then P_J; passes run
J = L-1 down to 0. Outputs are indexed by b, the bit reversal of the
frequency c.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from .numerics import (
    MAX_QUBITS,
    BasisIndex,
    PhaseExponent,
    SimulationError,
    StateVector,
    apply_controlled_phase,
    apply_hadamard,
    new_basis_state,
)


logger = logging.getLogger(__name__)

DENSE_WIDTH = 10


class PlanError(SimulationError):
    """Exception raised for invalid plans or plan parameters"""
    pass


class GateKind(str, Enum):
    """Gate kinds / Tipos de puerta"""
    HADAMARD = "P"
    CONTROLLED_PHASE = "Q"


@dataclass(frozen=True)
class GateOp:
    """One unitary primitive: P_J or Q_JK / Una primitiva unitaria"""
    kind: GateKind
    j: int
    k: Optional[int] = None
    phase: Optional[PhaseExponent] = None

    def __post_init__(self):
        if self.j < 0:
            raise PlanError(f"Qubit index must be non-negative, got {self.j}")
        if self.kind == GateKind.CONTROLLED_PHASE:
            if self.k is None or self.phase is None:
                raise PlanError("Controlled phase gate needs k and a phase")
            if not self.j < self.k:
                raise PlanError(f"Controlled phase gate needs j < k, got j={self.j} k={self.k}")
        elif self.k is not None or self.phase is not None:
            raise PlanError("Hadamard gate takes a single qubit")

    @property
    def qubits(self) -> Tuple[int, ...]:
        if self.kind == GateKind.HADAMARD:
            return (self.j,)
        return (self.j, self.k)

    @property
    def label(self) -> str:
        """Short name as in the bracket display: P4, Q34"""
        return f"{self.kind.value}{''.join(str(q) for q in self.qubits)}"

    def sort_key(self) -> Tuple[int, int, int]:
        """Canonical order inside a layer: P before Q, then j descending"""
        return (0 if self.kind == GateKind.HADAMARD else 1, -self.j, -(self.k or 0))

    def to_line(self) -> str:
        if self.kind == GateKind.HADAMARD:
            return f"P {self.j}"
        return f"Q {self.j} {self.k} {self.phase.exponent} {self.phase.modulus_log2}"


def hadamard_gate(j: int) -> GateOp:
    """P_J"""
    return GateOp(GateKind.HADAMARD, j)


def controlled_phase_gate(j: int, k: int, width_l: int) -> GateOp:
    """
    Q_JK for a width-L transform, phase omega^(2^(L-1-K+J)) with omega = exp(2*pi*i/2^L)
    Q_JK para una transformada de ancho L
    """
    if not 0 <= j < k < width_l:
        raise PlanError(f"Q_{{JK}} needs 0 <= j < k < L, got j={j} k={k} L={width_l}")
    exponent = (1 << (width_l - 1 - k + j)) % (1 << width_l)
    return GateOp(GateKind.CONTROLLED_PHASE, j, k, PhaseExponent(exponent, width_l))


@dataclass(frozen=True)
class CircuitPlan:
    """Ordered gate list with its (L, m) provenance / Lista ordenada de puertas"""
    width_l: int
    approx_m: int
    gates: Tuple[GateOp, ...]

    def __post_init__(self):
        _check_width(self.width_l)
        if not 1 <= self.approx_m <= self.width_l:
            raise PlanError(f"Approximation degree m must be in [1, {self.width_l}], got {self.approx_m}")
        for gate in self.gates:
            if max(gate.qubits) >= self.width_l:
                raise PlanError(f"Gate {gate.label} exceeds plan width {self.width_l}")
            if gate.phase is not None and gate.phase.modulus_log2 != self.width_l:
                raise PlanError(
                    f"Gate {gate.label} carries modulus 2^{gate.phase.modulus_log2}, plan width is {self.width_l}"
                )

    def passes(self) -> List[Tuple[int, List[GateOp]]]:
        """Group consecutive gates by pass index J (the gate's j)"""
        grouped: List[Tuple[int, List[GateOp]]] = []
        for gate in self.gates:
            if grouped and grouped[-1][0] == gate.j:
                grouped[-1][1].append(gate)
            else:
                grouped.append((gate.j, [gate]))
        return grouped


def _check_width(l: int) -> None:
    if not 1 <= l <= MAX_QUBITS:
        raise PlanError(f"Register width must be in [1, {MAX_QUBITS}], got {l}")


def build_aqft_plan(l: int, m: int) -> CircuitPlan:
    """
    AQFT(m): the full plan with every Q_JK, K >= J+m, deleted
    AQFT(m): el plan completo sin las Q_JK con K >= J+m

    Args:
        l: Register width L
        m: Approximation parameter, 1 <= m <= L

    Returns:
        CircuitPlan in application order

    Raises:
        PlanError: If l or m is out of range
    """
    _check_width(l)
    if not 1 <= m <= l:
        raise PlanError(f"Approximation parameter m must be in [1, {l}], got {m}")

    gates: List[GateOp] = []
    for j in range(l - 1, -1, -1):
        for k in range(min(j + m - 1, l - 1), j, -1):
            gates.append(controlled_phase_gate(j, k, l))
        gates.append(hadamard_gate(j))

    logger.debug("built plan l=%d m=%d with %d gates", l, m, len(gates))
    return CircuitPlan(width_l=l, approx_m=m, gates=tuple(gates))


def build_qft_plan(l: int) -> CircuitPlan:
    """Exact transform: L Hadamards and L(L-1)/2 controlled phases"""
    return build_aqft_plan(l, l)


def gate_counts(plan: CircuitPlan) -> Tuple[int, int]:
    """(hadamard count, controlled-phase count)"""
    hadamards = sum(1 for gate in plan.gates if gate.kind == GateKind.HADAMARD)
    return hadamards, len(plan.gates) - hadamards


def expected_phase_count(l: int, m: int) -> int:
    """Closed form (m-1)(l-m) + m(m-1)/2 for the controlled-phase count"""
    return (m - 1) * (l - m) + m * (m - 1) // 2


def run_plan(sv: StateVector, plan: CircuitPlan) -> StateVector:
    """
    Apply the plan's gates in list order to qubits 0..L-1 (in place)
    Aplicar las puertas del plan en orden

    Raises:
        PlanError: If the register is narrower than the plan or a phase modulus
            does not match the plan width
    """
    if sv.num_qubits < plan.width_l:
        raise PlanError(f"Plan of width {plan.width_l} does not fit a {sv.num_qubits}-qubit register")
    for gate in plan.gates:
        _apply_gate(sv, gate, plan.width_l)
    return sv


def _apply_gate(sv: StateVector, gate: GateOp, width_l: int) -> None:
    if gate.kind == GateKind.HADAMARD:
        apply_hadamard(sv, gate.j)
        return
    if gate.phase.modulus_log2 != width_l:
        raise PlanError(
            f"Gate {gate.label} carries modulus 2^{gate.phase.modulus_log2}, plan width is {width_l}"
        )
    apply_controlled_phase(sv, gate.j, gate.k, gate.phase)


def apply_gate(sv: StateVector, gate: GateOp, width_l: int) -> StateVector:
    """Apply a single gate of a width-L plan"""
    _apply_gate(sv, gate, width_l)
    return sv


def pass_snapshots(sv: StateVector, plan: CircuitPlan) -> List[Tuple[int, StateVector]]:
    """
    Run the plan pass by pass, keeping a copy after each pass
    Ejecutar el plan pasada a pasada guardando cada estado intermedio

    The first entry is (L, input state), then (J, state after pass J) for
    J = L-1 down to 0: the arrays X^[L], X^[L-1], ..., X^[0].
    """
    if sv.num_qubits < plan.width_l:
        raise PlanError(f"Plan of width {plan.width_l} does not fit a {sv.num_qubits}-qubit register")
    snapshots = [(plan.width_l, sv.copy())]
    for pass_index, gates in plan.passes():
        for gate in gates:
            _apply_gate(sv, gate, plan.width_l)
        snapshots.append((pass_index, sv.copy()))
    return snapshots


def plan_to_matrix(plan: CircuitPlan) -> np.ndarray:
    """
    Dense 2^L x 2^L unitary of the plan; column a is run_plan(|a>)
    Matriz densa del plan (solo para verificacion)

    Raises:
        PlanError: If the plan width exceeds DENSE_WIDTH
    """
    if plan.width_l > DENSE_WIDTH:
        raise PlanError(f"Dense matrix limited to width {DENSE_WIDTH}, got {plan.width_l}")
    dim = 1 << plan.width_l
    matrix = np.empty((dim, dim), dtype=np.complex128)
    for a in range(dim):
        column = run_plan(new_basis_state(plan.width_l, a), plan)
        matrix[:, a] = column.amplitudes
    return matrix


def bit_reverse(index: Union[BasisIndex, int], width: Optional[int] = None) -> Union[BasisIndex, int]:
    """
    Reverse the bits of an index: output bit i is input bit width-1-i
    Invertir el orden de los bits de un indice

    Accepts a BasisIndex (returns a BasisIndex) or a plain int plus width.
    """
    if isinstance(index, BasisIndex):
        if index.width < 1:
            raise PlanError("Bit reversal needs width >= 1")
        return BasisIndex(_reverse_bits(index.value, index.width), index.width)
    if width is None or width < 1:
        raise PlanError("Bit reversal of a plain int needs width >= 1")
    if not 0 <= index < (1 << width):
        raise PlanError(f"Index {index} does not fit in {width} bits")
    return _reverse_bits(index, width)


def _reverse_bits(value: int, width: int) -> int:
    return int(format(value, f"0{width}b")[::-1], 2)


def bit_reversal_permutation(width: int) -> np.ndarray:
    """perm[c] = bit_reverse(c) for every c in [0, 2^width)"""
    values = np.arange(1 << width)
    reversed_values = np.zeros_like(values)
    for i in range(width):
        reversed_values |= ((values >> i) & 1) << (width - 1 - i)
    return reversed_values


def plan_to_text(plan: CircuitPlan) -> str:
    """
    Line-oriented plan export: `P <j>` or `Q <j> <k> <exponent> <modulus_log2>`
    Exportar el plan en formato de texto, una puerta por linea
    """
    lines = [f"# plan l={plan.width_l} m={plan.approx_m}"]
    lines.extend(gate.to_line() for gate in plan.gates)
    return "\n".join(lines) + "\n"


def parse_plan_text(text: str) -> CircuitPlan:
    """
    Parse the line format written by plan_to_text
    Leer un plan en formato de texto

    Without a header, L is taken from the Q moduli (or max j + 1) and m from
    the widest retained Q_JK.

    Raises:
        PlanError: On malformed lines or inconsistent widths
    """
    header: Dict[str, int] = {}
    gates: List[GateOp] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for token in line[1:].split():
                key, sep, value = token.partition("=")
                if sep and key in ("l", "m"):
                    try:
                        header[key] = int(value)
                    except ValueError:
                        raise PlanError(f"Line {line_number}: bad header value {token!r}")
            continue
        parts = line.split()
        try:
            if parts[0] == "P" and len(parts) == 2:
                gates.append(hadamard_gate(int(parts[1])))
            elif parts[0] == "Q" and len(parts) == 5:
                j, k, exponent, modulus_log2 = (int(p) for p in parts[1:])
                gates.append(GateOp(GateKind.CONTROLLED_PHASE, j, k, PhaseExponent(exponent, modulus_log2)))
            else:
                raise PlanError(f"Line {line_number}: unrecognized gate {line!r}")
        except PlanError:
            raise
        except ValueError as e:
            raise PlanError(f"Line {line_number}: {e}")

    if not gates:
        raise PlanError("Plan text contains no gates")

    moduli = {g.phase.modulus_log2 for g in gates if g.phase is not None}
    if len(moduli) > 1:
        raise PlanError(f"Inconsistent phase moduli in plan: {sorted(moduli)}")
    if "l" in header:
        width_l = header["l"]
    else:
        width_l = moduli.pop() if moduli else max(max(g.qubits) for g in gates) + 1
    spans = [g.k - g.j for g in gates if g.k is not None]
    if "m" in header:
        approx_m = header["m"]
    else:
        approx_m = min(max(spans) + 1, width_l) if spans else 1
    return CircuitPlan(width_l=width_l, approx_m=approx_m, gates=tuple(gates))
