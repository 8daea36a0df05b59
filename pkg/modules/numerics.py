"""
Numerics - Dense statevector storage, gate application and measurement
Almacenamiento denso del vector de estado, aplicacion de puertas y medicion

Bit ordering: qubit j carries weight 2^j in the basis index (little-endian),
so a = sum(a_j * 2^j). Every other module inherits this convention.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Tuple, Union

import numpy as np


logger = logging.getLogger(__name__)

MAX_QUBITS = 26
DEGENERATE_BRANCH = 1e-15
SQRT2_INV = 1.0 / np.sqrt(2.0)

# exp(2*pi*i*k/4) for k = 0..3, exact
_QUARTER_TURNS = np.array([1.0 + 0.0j, 0.0 + 1.0j, -1.0 + 0.0j, 0.0 - 1.0j])


class SimulationError(ValueError):
    """Base exception for the toolkit / Excepcion base del conjunto de herramientas"""
    pass


class QubitBudgetError(SimulationError):
    """Raised when a register would exceed MAX_QUBITS"""
    pass


class QubitIndexError(SimulationError):
    """Raised for a qubit index outside the register"""
    pass


class DegenerateBranchError(SimulationError):
    """Raised when a measurement selects a branch of (near) zero probability"""
    pass


@dataclass(frozen=True)
class BasisIndex:
    """Computational basis label of fixed bit width / Indice de base con ancho fijo"""
    value: int
    width: int

    def __post_init__(self):
        if self.width < 0:
            raise SimulationError(f"Basis width must be non-negative, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise SimulationError(f"Basis value {self.value} does not fit in {self.width} bits")

    def bit(self, i: int) -> int:
        return (self.value >> i) & 1


@dataclass(frozen=True)
class PhaseExponent:
    """
    Phase exp(2*pi*i*exponent / 2^modulus_log2) kept as an exact integer
    Fase guardada como entero exacto modulo 2^L
    """
    exponent: int
    modulus_log2: int

    def __post_init__(self):
        if self.modulus_log2 < 0:
            raise SimulationError(f"Phase modulus must be non-negative, got {self.modulus_log2}")
        if not 0 <= self.exponent < (1 << self.modulus_log2):
            raise SimulationError(
                f"Phase exponent {self.exponent} outside [0, 2^{self.modulus_log2})"
            )

    def value(self) -> complex:
        """Complex unit value of the phase"""
        return complex(unit_roots(np.asarray(self.exponent), self.modulus_log2))


def unit_roots(exponents: np.ndarray, modulus_log2: int) -> np.ndarray:
    """
    Map integer exponents e to exp(2*pi*i*e / 2^modulus_log2)
    Convertir exponentes enteros en raices de la unidad

    Multiples of a quarter turn come out exactly as 1, i, -1, -i.

    Args:
        exponents: Integer array (any shape)
        modulus_log2: L, the root of unity is of order 2^L

    Returns:
        Complex array of the same shape
    """
    modulus = 1 << modulus_log2
    reduced = np.mod(np.asarray(exponents, dtype=np.int64), modulus)
    values = np.exp(2j * np.pi * reduced / modulus)
    quarter = (reduced * 4) % modulus == 0
    values = np.where(quarter, _QUARTER_TURNS[(reduced * 4 // modulus) % 4], values)
    return values


@dataclass
class StateVector:
    """
    Dense register of 2^num_qubits complex amplitudes
    Registro denso de amplitudes complejas

    Gate operations in this module update `amplitudes` in place and return the
    same object; use copy() to keep an earlier state.
    """
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_budget(self.num_qubits)
        # in-place kernels need complex storage; complex128 input is kept as is
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.num_qubits,):
            raise SimulationError(
                f"Expected {1 << self.num_qubits} amplitudes, got shape {self.amplitudes.shape}"
            )

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.amplitudes)))


def _check_budget(num_qubits: int) -> None:
    if num_qubits < 0:
        raise QubitBudgetError(f"Qubit count must be non-negative, got {num_qubits}")
    if num_qubits > MAX_QUBITS:
        raise QubitBudgetError(f"qubit budget exceeded: {num_qubits} > {MAX_QUBITS}")


def _check_qubit(sv: StateVector, j: int) -> None:
    if not 0 <= j < sv.num_qubits:
        raise QubitIndexError(f"Qubit index {j} out of range for {sv.num_qubits} qubits")


def new_basis_state(num_qubits: int, index: Union[BasisIndex, int]) -> StateVector:
    """
    Computational basis state |index>
    Estado de la base computacional

    Args:
        num_qubits: Register size
        index: Basis label (BasisIndex or plain int)

    Returns:
        StateVector with a single amplitude 1

    Raises:
        QubitBudgetError: If num_qubits exceeds MAX_QUBITS
    """
    _check_budget(num_qubits)
    value = index.value if isinstance(index, BasisIndex) else int(index)
    if not 0 <= value < (1 << num_qubits):
        raise SimulationError(f"Basis index {value} does not fit in {num_qubits} qubits")
    amplitudes = np.zeros(1 << num_qubits, dtype=np.complex128)
    amplitudes[value] = 1.0
    return StateVector(num_qubits, amplitudes)


def new_uniform(num_qubits: int) -> StateVector:
    """Uniform superposition over all basis states / Superposicion uniforme"""
    _check_budget(num_qubits)
    dim = 1 << num_qubits
    amplitudes = np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128)
    return StateVector(num_qubits, amplitudes)


def apply_hadamard(sv: StateVector, j: int) -> StateVector:
    """
    Hadamard on qubit j: pairs (i0, i1) differing in bit j mix as (x+y, x-y)/sqrt(2)
    Hadamard sobre el qubit j
    """
    _check_qubit(sv, j)
    view = sv.amplitudes.reshape(-1, 2, 1 << j)
    low = view[:, 0, :].copy()
    high = view[:, 1, :]
    view[:, 0, :] = (low + high) * SQRT2_INV
    view[:, 1, :] = (low - high) * SQRT2_INV
    return sv


def apply_controlled_phase(sv: StateVector, j: int, k: int, phase: PhaseExponent) -> StateVector:
    """
    Multiply amplitudes with bits j and k both set by the phase value
    Multiplicar por la fase las amplitudes con los bits j y k a 1

    Symmetric in (j, k).

    Raises:
        QubitIndexError: If j == k or either index is out of range
    """
    _check_qubit(sv, j)
    _check_qubit(sv, k)
    if j == k:
        raise QubitIndexError(f"Controlled phase needs two distinct qubits, got {j} twice")
    if phase.exponent == 0:
        return sv
    low, high = (j, k) if j < k else (k, j)
    view = sv.amplitudes.reshape(-1, 2, 1 << (high - low - 1), 2, 1 << low)
    view[:, 1, :, 1, :] *= phase.value()
    return sv


def branch_probability(sv: StateVector, j: int) -> float:
    """Probability that qubit j reads 1 / Probabilidad de leer 1 en el qubit j"""
    _check_qubit(sv, j)
    view = sv.amplitudes.reshape(-1, 2, 1 << j)
    return float(np.sum(np.abs(view[:, 1, :]) ** 2))


def project_qubit(sv: StateVector, j: int, bit: int) -> Tuple[float, StateVector]:
    """
    Collapse qubit j onto `bit` and renormalize
    Colapsar el qubit j sobre el valor indicado y renormalizar

    Args:
        sv: State to collapse (updated in place)
        j: Qubit index
        bit: Selected outcome, 0 or 1

    Returns:
        Tuple of (branch probability, collapsed state)

    Raises:
        DegenerateBranchError: If the branch probability is below DEGENERATE_BRANCH
    """
    _check_qubit(sv, j)
    if bit not in (0, 1):
        raise SimulationError(f"Measurement outcome must be 0 or 1, got {bit}")
    p_one = branch_probability(sv, j)
    probability = p_one if bit == 1 else 1.0 - p_one
    if probability < DEGENERATE_BRANCH:
        raise DegenerateBranchError(
            f"Branch qubit {j} = {bit} has probability {probability:.3e}, below {DEGENERATE_BRANCH:g}"
        )
    view = sv.amplitudes.reshape(-1, 2, 1 << j)
    view[:, 1 - bit, :] = 0.0
    view[:, bit, :] /= np.sqrt(probability)
    return probability, sv


def measure_qubit(sv: StateVector, j: int, random_draw: float) -> Tuple[int, StateVector]:
    """
    Born-rule measurement of qubit j driven by an external draw in [0, 1)
    Medicion del qubit j con un valor aleatorio externo

    The outcome is 1 iff random_draw < P(bit j = 1).
    """
    _check_qubit(sv, j)
    if not 0.0 <= random_draw < 1.0:
        raise SimulationError(f"Random draw must lie in [0, 1), got {random_draw}")
    bit = 1 if random_draw < branch_probability(sv, j) else 0
    _, sv = project_qubit(sv, j, bit)
    logger.debug("measured qubit %d -> %d", j, bit)
    return bit, sv


def born_distribution(sv: StateVector) -> Dict[int, float]:
    """
    Outcome probabilities |amplitude_i|^2, zero entries left out
    Distribucion de Born sobre los indices de la base
    """
    probabilities = sv.probabilities()
    support = np.flatnonzero(probabilities)
    return {int(i): float(probabilities[i]) for i in support}
