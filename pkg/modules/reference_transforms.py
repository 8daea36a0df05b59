"""
Reference Transforms - Dense matrices built from the summation formulas
Matrices de referencia construidas desde las formulas de suma

Rows are indexed by the frequency c, columns by the time index a. Every entry
is 2^(-L/2) * omega^e with omega = exp(2*pi*i/2^L) and an exact integer
exponent e, so the builders keep the exponent grid next to the complex values.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .numerics import SimulationError, unit_roots


DENSE_WIDTH = 10


class WidthGuardError(SimulationError):
    """Raised when a dense builder is asked for a width above DENSE_WIDTH"""
    pass


@dataclass(frozen=True)
class TransformMatrix:
    """Dense reference transform / Transformada de referencia densa"""
    kind: str
    width_l: int
    approx_m: int
    exponents: np.ndarray
    entries: np.ndarray

    @property
    def convention(self) -> str:
        return "row=c, col=a"


@dataclass(frozen=True)
class DeviationReport:
    """AFFT vs FFT phase deviation against the analytic bound / Informe de desviacion"""
    width_l: int
    approx_m: int
    max_phase_deviation: Optional[float]
    analytic_bound: float
    operator_norm_bound: float
    bound_satisfied: Optional[bool]

    @property
    def observed(self) -> bool:
        return self.max_phase_deviation is not None


def _check_dense(l: int) -> None:
    if not 1 <= l <= DENSE_WIDTH:
        raise WidthGuardError(f"Dense width guard: l must be in [1, {DENSE_WIDTH}], got {l}")


def _check_m(l: int, m: int) -> None:
    if not 1 <= m <= l:
        raise WidthGuardError(f"Approximation parameter m must be in [1, {l}], got {m}")


def _bit_columns(l: int) -> np.ndarray:
    """bits[x, i] = bit i of x for x in [0, 2^l)"""
    values = np.arange(1 << l, dtype=np.int64)
    return (values[:, None] >> np.arange(l)) & 1


def _exponent_grid(l: int, low: int, high: int) -> np.ndarray:
    """
    E[c, a] = sum over low <= j+k <= high of a_j c_k 2^(j+k), exact int64, unreduced
    """
    bits = _bit_columns(l)
    grid = np.zeros((1 << l, 1 << l), dtype=np.int64)
    for j in range(l):
        for k in range(l):
            if low <= j + k <= high:
                grid += np.outer(bits[:, k], bits[:, j]) << (j + k)
    return grid


def _from_exponents(kind: str, l: int, m: int, grid: np.ndarray) -> TransformMatrix:
    reduced = np.mod(grid, 1 << l)
    entries = unit_roots(reduced, l) * 2.0 ** (-l / 2)
    return TransformMatrix(kind=kind, width_l=l, approx_m=m, exponents=reduced, entries=entries)


def dft_matrix(l: int) -> TransformMatrix:
    """
    Unitary DFT: entry (c, a) = 2^(-l/2) omega^(ac), terms with j+k >= l dropped
    Transformada de Fourier discreta unitaria

    Raises:
        WidthGuardError: If l exceeds DENSE_WIDTH
    """
    _check_dense(l)
    return _from_exponents("fft", l, l, _exponent_grid(l, 0, l - 1))


def hadamard_matrix(l: int) -> TransformMatrix:
    """
    Reversed-index Hadamard: entry (c, a) = 2^(-l/2) (-1)^(sum_j a_j c_{l-1-j})
    Hadamard con indices invertidos
    """
    _check_dense(l)
    bits = _bit_columns(l)
    parity = np.zeros((1 << l, 1 << l), dtype=np.int64)
    for j in range(l):
        parity ^= np.outer(bits[:, l - 1 - j], bits[:, j])
    exponents = parity << (l - 1)
    entries = np.where(parity == 1, -1.0, 1.0).astype(np.complex128) * 2.0 ** (-l / 2)
    return TransformMatrix(kind="ht", width_l=l, approx_m=1, exponents=exponents, entries=entries)


def afft_matrix(l: int, m: int) -> TransformMatrix:
    """
    AFFT(m): keep only the terms with l-m <= j+k <= l-1
    Transformada aproximada AFFT(m)

    Every phase is a multiple of 2*pi/2^m. m = l gives dft_matrix, m = 1 gives
    hadamard_matrix.
    """
    _check_dense(l)
    _check_m(l, m)
    return _from_exponents("afft", l, m, _exponent_grid(l, l - m, l - 1))


def analytic_bound(l: int, m: int) -> float:
    """2*pi*l*2^(-m), the bound on |epsilon| for every entry"""
    return 2.0 * math.pi * l * 2.0 ** (-m)


def operator_norm_bound(l: int, m: int) -> float:
    """
    Upper bound on ||AQFT(m) - QFT|| in operator norm
    Cota de la norma de operador de la diferencia

    Sum over the deleted Q_JK (K - J >= m) of |exp(i*theta) - 1| = 2 sin(theta/2),
    theta = 2*pi*2^(-(K-J)-1). Telescoping over the gate product.
    """
    total = 0.0
    for distance in range(m, l):
        theta = 2.0 * math.pi * 2.0 ** (-distance - 1)
        total += (l - distance) * 2.0 * math.sin(theta / 2.0)
    return total


def dropped_term_grid(l: int, m: int) -> np.ndarray:
    """D[c, a] = sum over j+k < l-m of a_j c_k 2^(j+k), exact integers"""
    _check_dense(l)
    _check_m(l, m)
    return _exponent_grid(l, 0, l - m - 1)


def deviation_report(l: int, m: int) -> DeviationReport:
    """
    Exhaustive max phase deviation of AFFT(m) from FFT, with the analytic bound
    Desviacion maxima de fase frente a la cota analitica

    The observed maximum is only computed for l <= DENSE_WIDTH; the analytic
    bound has no width limit.

    Args:
        l: Width L
        m: Approximation parameter

    Returns:
        DeviationReport
    """
    if l < 1:
        raise WidthGuardError(f"Width must be positive, got {l}")
    _check_m(l, m)
    bound = analytic_bound(l, m)
    observed: Optional[float] = None
    satisfied: Optional[bool] = None
    if l <= DENSE_WIDTH:
        worst = int(dropped_term_grid(l, m).max())
        observed = 2.0 * math.pi * worst / (1 << l)
        satisfied = observed <= bound
    return DeviationReport(
        width_l=l,
        approx_m=m,
        max_phase_deviation=observed,
        analytic_bound=bound,
        operator_norm_bound=operator_norm_bound(l, m),
        bound_satisfied=satisfied,
    )


def max_unitarity_error(matrix: np.ndarray) -> float:
    """Max-norm of M M^dagger - I"""
    identity = np.eye(matrix.shape[0], dtype=np.complex128)
    return float(np.max(np.abs(matrix @ matrix.conj().T - identity)))
