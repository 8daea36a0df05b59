"""
Contract Models - Pydantic models for validated inputs
Modelos Pydantic para entradas validadas
"""

import math
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .numerics import MAX_QUBITS


DEFAULT_Q_FACTOR = 5


class OutputFormat(str, Enum):
    """Export formats / Formatos de exportacion"""
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class OutputSpec(BaseModel):
    """Where and how a command writes its result / Destino y formato de salida"""
    model_config = ConfigDict(frozen=True)

    format: OutputFormat = Field(OutputFormat.TEXT, description="json, csv or text")
    destination: Optional[Path] = Field(None, description="File path; standard output when absent")


def default_width(modulus_n: int, q_factor: int = DEFAULT_Q_FACTOR) -> int:
    """Smallest L with 2^L >= q_factor * n^2 / Menor L con 2^L >= 5 n^2"""
    target = q_factor * modulus_n * modulus_n
    return max(1, (target - 1).bit_length())


def work_width(modulus_n: int) -> int:
    """ceil(log2 n) qubits for the work register"""
    return (modulus_n - 1).bit_length()


class OrderFindingConfig(BaseModel):
    """
    Parameters of one order-finding instance
    Parametros de una instancia de busqueda de orden
    """
    model_config = ConfigDict(frozen=True)

    modulus_n: int = Field(..., ge=3, description="Integer n to factor")
    base_x: int = Field(..., ge=1, description="Base coprime to n")
    width_l: int = Field(..., ge=1, description="L, with q = 2^L")
    approx_m: int = Field(..., ge=1, description="AQFT parameter m")
    seed: int = Field(0, ge=0, description="Seed for every measurement draw")

    @model_validator(mode="after")
    def _check_instance(self) -> "OrderFindingConfig":
        if math.gcd(self.base_x, self.modulus_n) != 1:
            raise ValueError(f"base_x={self.base_x} is not coprime to modulus_n={self.modulus_n}")
        if self.approx_m > self.width_l:
            raise ValueError(f"approx_m={self.approx_m} must not exceed width_l={self.width_l}")
        if self.total_qubits > MAX_QUBITS:
            raise ValueError(
                f"qubit budget exceeded: {self.width_l} + {work_width(self.modulus_n)} > {MAX_QUBITS}"
            )
        return self

    @property
    def work_width(self) -> int:
        return work_width(self.modulus_n)

    @property
    def total_qubits(self) -> int:
        return self.width_l + work_width(self.modulus_n)

    @property
    def q(self) -> int:
        return 1 << self.width_l

    @classmethod
    def for_modulus(
        cls,
        modulus_n: int,
        base_x: int,
        width_l: Optional[int] = None,
        approx_m: Optional[int] = None,
        seed: int = 0,
        q_factor: int = DEFAULT_Q_FACTOR,
    ) -> "OrderFindingConfig":
        """
        Build a config, defaulting L to the q ~ 5n^2 rule and m to L
        Construir una configuracion con valores por defecto

        Args:
            modulus_n: n
            base_x: x
            width_l: L, defaults to default_width(n)
            approx_m: m, defaults to L
            seed: RNG seed
            q_factor: Factor in the 2^L >= q_factor * n^2 rule

        Returns:
            Validated OrderFindingConfig
        """
        width = width_l if width_l is not None else default_width(modulus_n, q_factor)
        return cls(
            modulus_n=modulus_n,
            base_x=base_x,
            width_l=width,
            approx_m=approx_m if approx_m is not None else width,
            seed=seed,
        )
