"""
Order Finding - Semiclassical AQFT order finding with early measurement
Busqueda de orden semiclasica con AQFT y medicion temprana

Register layout: qubits 0..L-1 hold a (then b after the transform), qubits
L..L+w-1 hold the work register y with w = ceil(log2 n). Modular arithmetic is
classical: the controlled multiplication is a permutation of basis indices.
"""

import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .circuit import (
    CircuitPlan,
    GateOp,
    apply_gate,
    bit_reverse,
    bit_reversal_permutation,
    build_aqft_plan,
    controlled_phase_gate,
    hadamard_gate,
    run_plan,
)
from .contract_models import OrderFindingConfig
from .numerics import (
    DEGENERATE_BRANCH,
    SimulationError,
    StateVector,
    apply_hadamard,
    branch_probability,
    measure_qubit,
    new_basis_state,
    project_qubit,
)


logger = logging.getLogger(__name__)

PROBABILITY_FLOOR = 1e-14


class OrderFindingError(SimulationError):
    """Exception raised for invalid order-finding inputs"""
    pass


@dataclass(frozen=True)
class MeasuredBit:
    """One measured output bit / Un bit de salida medido"""
    pass_index: Optional[int]
    qubit: int
    value: int

    @property
    def name(self) -> str:
        return f"b{self.qubit}"


@dataclass
class RunRecord:
    """Result of one semiclassical run / Resultado de una ejecucion"""
    config: OrderFindingConfig
    measured_bits: List[MeasuredBit] = field(default_factory=list)
    b_value: int = 0
    frequency_estimate: int = 0
    # the work register is traced out and never read
    work_register_residue: str = "traced out"


@dataclass
class ShotSummary:
    """Aggregate of several seeded runs / Resumen de varias ejecuciones"""
    config: OrderFindingConfig
    shots: int
    records: List[RunRecord]
    histogram: Dict[int, int]
    period: Optional[int]
    factors: Optional[Tuple[int, int]]


@dataclass(frozen=True)
class _Step:
    action: str
    pass_index: Optional[int]
    qubit: int
    gate: Optional[GateOp] = None
    factor: int = 1


def modexp_factor(base_x: int, j: int, modulus_n: int) -> int:
    """
    x^(2^j) mod n by j repeated squarings
    x^(2^j) mod n por cuadrados sucesivos

    Raises:
        OrderFindingError: If x is not coprime to n or j < 0
    """
    if math.gcd(base_x, modulus_n) != 1:
        raise OrderFindingError(f"Base {base_x} is not coprime to {modulus_n}")
    if j < 0:
        raise OrderFindingError(f"Pass index must be non-negative, got {j}")
    value = base_x % modulus_n
    for _ in range(j):
        value = value * value % modulus_n
    return value


def multiplicative_order(base_x: int, modulus_n: int) -> int:
    """Smallest r >= 1 with x^r = 1 mod n (classical reference)"""
    if math.gcd(base_x, modulus_n) != 1:
        raise OrderFindingError(f"Base {base_x} is not coprime to {modulus_n}")
    order, value = 1, base_x % modulus_n
    while value != 1:
        value = value * base_x % modulus_n
        order += 1
    return order


def apply_controlled_modmul(sv: StateVector, control: int, factor: int, modulus_n: int, work_offset: int) -> StateVector:
    """
    If qubit `control` is 1, move amplitude at work value y to y*factor mod n
    Multiplicacion modular controlada sobre el registro de trabajo

    Work values y >= n are left in place, which keeps the map a permutation.
    """
    work_bits = sv.num_qubits - work_offset
    if not 0 <= control < work_offset or (1 << work_bits) < modulus_n:
        raise OrderFindingError(f"Register layout cannot hold control {control} and modulus {modulus_n}")
    perm = np.arange(1 << work_bits)
    perm[:modulus_n] = (np.arange(modulus_n) * factor) % modulus_n
    view = sv.amplitudes.reshape(1 << work_bits, 1 << (work_offset - control - 1), 2, 1 << control)
    branch = view[:, :, 1, :]
    moved = np.empty_like(branch)
    moved[perm] = branch
    view[:, :, 1, :] = moved
    return sv


def measurement_plan(l: int, m: int) -> List[Tuple[Optional[int], int]]:
    """
    (pass J, qubit) pairs in measurement order; residual bits carry pass None
    Orden de medicion: b_{J+m-1} tras la pasada J si J <= L-m, luego b_{m-2}..b_0
    """
    if not 1 <= m <= l:
        raise OrderFindingError(f"Measurement plan needs 1 <= m <= L, got l={l} m={m}")
    early = [(j, j + m - 1) for j in range(l - 1, -1, -1) if j <= l - m]
    residual = [(None, i) for i in range(m - 2, -1, -1)]
    return early + residual


def early_measurement_is_legal(plan: CircuitPlan) -> bool:
    """
    True when each early-measured qubit b_{J+m-1} takes part in no gate after pass J
    Comprobar que ningun bit medido vuelve a intervenir
    """
    last_pass: Dict[int, int] = {}
    for pass_index, gates in plan.passes():
        for gate in gates:
            for qubit in gate.qubits:
                last_pass[qubit] = min(last_pass.get(qubit, pass_index), pass_index)
    for pass_index, qubit in measurement_plan(plan.width_l, plan.approx_m):
        if pass_index is not None and last_pass.get(qubit, pass_index) < pass_index:
            return False
    return True


def semiclassical_steps(config: OrderFindingConfig) -> List[_Step]:
    """The rearranged loop as a flat list of steps"""
    l, m = config.width_l, config.approx_m
    early = {j: qubit for j, qubit in measurement_plan(l, m) if j is not None}
    steps: List[_Step] = []
    for j in range(l - 1, -1, -1):
        steps.append(_Step("prepare", j, j))
        steps.append(_Step("multiply", j, j, factor=modexp_factor(config.base_x, j, config.modulus_n)))
        for k in range(j + 1, min(j + m - 1, l - 1) + 1):
            steps.append(_Step("gate", j, j, gate=controlled_phase_gate(j, k, l)))
        steps.append(_Step("gate", j, j, gate=hadamard_gate(j)))
        if j in early:
            steps.append(_Step("measure", j, early[j]))
    for i in range(m - 2, -1, -1):
        steps.append(_Step("measure", None, i))
    return steps


def _initial_state(config: OrderFindingConfig) -> StateVector:
    # a = 0, y = 1
    return new_basis_state(config.total_qubits, 1 << config.width_l)


def _apply_step(sv: StateVector, step: _Step, config: OrderFindingConfig) -> None:
    if step.action == "prepare":
        apply_hadamard(sv, step.qubit)
    elif step.action == "multiply":
        apply_controlled_modmul(sv, step.qubit, step.factor, config.modulus_n, config.width_l)
    elif step.action == "gate":
        apply_gate(sv, step.gate, config.width_l)
    else:
        raise OrderFindingError(f"Unknown step {step.action}")


def run_semiclassical(config: OrderFindingConfig, rng: Optional[np.random.Generator] = None) -> RunRecord:
    """
    One run of the rearranged computation with early per-qubit measurement
    Una ejecucion del calculo reordenado con medicion temprana

    Args:
        config: Instance parameters
        rng: Generator for measurement draws; default_rng(config.seed) when absent

    Returns:
        RunRecord with L measured bits and the frequency estimate c

    Raises:
        DegenerateBranchError: Propagated from measurement
    """
    generator = rng if rng is not None else np.random.default_rng(config.seed)
    sv = _initial_state(config)
    record = RunRecord(config=config)
    for step in semiclassical_steps(config):
        if step.action == "measure":
            bit, sv = measure_qubit(sv, step.qubit, float(generator.random()))
            record.measured_bits.append(MeasuredBit(step.pass_index, step.qubit, bit))
            record.b_value |= bit << step.qubit
        else:
            _apply_step(sv, step, config)
    record.frequency_estimate = bit_reverse(record.b_value, config.width_l)
    logger.debug("run n=%d x=%d -> c=%d", config.modulus_n, config.base_x, record.frequency_estimate)
    return record


def semiclassical_distribution(config: OrderFindingConfig) -> Dict[int, float]:
    """
    Exact outcome distribution of run_semiclassical by enumerating every branch
    Distribucion exacta enumerando todas las ramas de medicion

    Branches below DEGENERATE_BRANCH are pruned.
    """
    steps = semiclassical_steps(config)
    distribution: Dict[int, float] = {}

    def descend(sv: StateVector, start: int, weight: float, b_value: int) -> None:
        for index in range(start, len(steps)):
            step = steps[index]
            if step.action != "measure":
                _apply_step(sv, step, config)
                continue
            p_one = branch_probability(sv, step.qubit)
            for bit, probability in ((0, 1.0 - p_one), (1, p_one)):
                if probability < DEGENERATE_BRANCH:
                    continue
                _, branch = project_qubit(sv.copy(), step.qubit, bit)
                descend(branch, index + 1, weight * probability, b_value | (bit << step.qubit))
            return
        c = bit_reverse(b_value, config.width_l)
        distribution[c] = distribution.get(c, 0.0) + weight

    descend(_initial_state(config), 0, 1.0, 0)
    return dict(sorted(distribution.items()))


def entangled_state(config: OrderFindingConfig) -> StateVector:
    """(1/sqrt q) sum_a |a, x^a mod n>"""
    sv = _initial_state(config)
    for j in range(config.width_l):
        apply_hadamard(sv, j)
        factor = modexp_factor(config.base_x, j, config.modulus_n)
        apply_controlled_modmul(sv, j, factor, config.modulus_n, config.width_l)
    return sv


def full_circuit_distribution(config: OrderFindingConfig, probability_floor: float = PROBABILITY_FLOOR) -> Dict[int, float]:
    """
    Measurement-free oracle: marginal Born distribution over the frequency c
    Oraculo sin medicion: distribucion marginal sobre la frecuencia c

    Builds the entangled state, applies build_aqft_plan(L, m) to the a-register,
    traces out y and un-bit-reverses the rows.

    Args:
        config: Instance parameters
        probability_floor: Entries at or below this value are left out

    Returns:
        Dict mapping c to probability
    """
    sv = run_plan(entangled_state(config), build_aqft_plan(config.width_l, config.approx_m))
    l = config.width_l
    by_b = sv.probabilities().reshape(1 << config.work_width, 1 << l).sum(axis=0)
    by_c = by_b[bit_reversal_permutation(l)]
    support = np.flatnonzero(by_c > probability_floor)
    return {int(c): float(by_c[c]) for c in support}


def convergents(numerator: int, denominator: int) -> List[Fraction]:
    """Continued-fraction convergents of numerator/denominator"""
    result: List[Fraction] = []
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    a, b = numerator, denominator
    while b:
        term, remainder = divmod(a, b)
        h_prev, h = h, term * h + h_prev
        k_prev, k = k, term * k + k_prev
        result.append(Fraction(h, k))
        a, b = b, remainder
    return result


def extract_period(
    frequency_estimates: Iterable[int],
    q: int,
    modulus_n: int,
    base_x: int,
) -> Optional[int]:
    """
    Period from the continued-fraction convergents of c/q with denominator < n
    Periodo a partir de las convergentes de c/q

    Every convergent denominator r is checked against x^r = 1 mod n and the
    least verified r is returned.

    Args:
        frequency_estimates: Measured c values
        q: 2^L
        modulus_n: n
        base_x: x, used to verify candidates

    Returns:
        The period, or None when no candidate qualifies
    """
    if q < 1 or q & (q - 1):
        raise OrderFindingError(f"q must be a power of two, got {q}")
    verified = set()
    for c in frequency_estimates:
        for fraction in convergents(int(c), q):
            r = fraction.denominator
            if r < modulus_n and pow(base_x, r, modulus_n) == 1:
                verified.add(r)
    return min(verified) if verified else None


def factor_from_period(modulus_n: int, base_x: int, period: int) -> Optional[Tuple[int, int]]:
    """
    Nontrivial factor pair from an even period with x^(r/2) != -1 mod n
    Par de factores a partir del periodo

    Raises:
        OrderFindingError: If x^r != 1 mod n
    """
    if period < 1 or pow(base_x, period, modulus_n) != 1:
        raise OrderFindingError(f"{base_x}^{period} is not 1 mod {modulus_n}")
    if period % 2:
        return None
    half = pow(base_x, period // 2, modulus_n)
    if half == modulus_n - 1:
        return None
    low, high = math.gcd(half - 1, modulus_n), math.gcd(half + 1, modulus_n)
    if 1 < low < modulus_n and 1 < high < modulus_n:
        return low, high
    return None


def run_shots(config: OrderFindingConfig, shots: int, workers: int = 1) -> ShotSummary:
    """
    Seeded multi-shot driver: one spawned generator per shot, merged in shot order
    Ejecutar varias tomas con semillas derivadas

    Args:
        config: Instance parameters (config.seed is the root seed)
        shots: Number of runs
        workers: Thread count; results do not depend on it

    Returns:
        ShotSummary with histogram, period and factors
    """
    if shots < 1:
        raise OrderFindingError(f"Shot count must be positive, got {shots}")
    children = np.random.SeedSequence(config.seed).spawn(shots)

    def one_shot(seed_sequence: np.random.SeedSequence) -> RunRecord:
        return run_semiclassical(config, rng=np.random.default_rng(seed_sequence))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(one_shot, children))
    else:
        records = [one_shot(child) for child in children]

    histogram = dict(sorted(Counter(r.frequency_estimate for r in records).items()))
    period = extract_period(histogram.keys(), config.q, config.modulus_n, config.base_x)
    factors = factor_from_period(config.modulus_n, config.base_x, period) if period else None
    logger.info(
        "n=%d x=%d L=%d m=%d: %d shots, %d distinct outcomes, period=%s",
        config.modulus_n, config.base_x, config.width_l, config.approx_m, shots, len(histogram), period,
    )
    return ShotSummary(config=config, shots=shots, records=records, histogram=histogram, period=period, factors=factors)
