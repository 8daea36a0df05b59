"""
Tests for contract models
Tests para los modelos de entrada
"""

import pytest
import sys
from pathlib import Path

from pydantic import ValidationError

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from modules.contract_models import (
    OrderFindingConfig,
    OutputFormat,
    OutputSpec,
    default_width,
    work_width,
)


class TestWidths:
    """Tests for default_width and work_width"""

    def test_default_width(self):
        assert default_width(15) == 11
        assert default_width(21) == 12
        assert default_width(3) == 6

    def test_default_width_rule(self):
        for n in range(3, 60):
            l = default_width(n)
            assert (1 << l) >= 5 * n * n
            assert (1 << (l - 1)) < 5 * n * n

    def test_q_factor(self):
        assert default_width(15, q_factor=1) == 8

    def test_work_width(self):
        assert work_width(15) == 4
        assert work_width(16) == 4
        assert work_width(17) == 5
        assert work_width(21) == 5


class TestOrderFindingConfig:
    """Tests for OrderFindingConfig validation"""

    def test_for_modulus_defaults(self):
        config = OrderFindingConfig.for_modulus(15, 7)
        assert config.width_l == 11
        assert config.approx_m == 11
        assert config.seed == 0
        assert config.total_qubits == 15
        assert config.q == 2048

    def test_explicit(self):
        config = OrderFindingConfig.for_modulus(15, 4, width_l=8, approx_m=3, seed=9)
        assert (config.width_l, config.approx_m, config.seed) == (8, 3, 9)

    def test_not_coprime(self):
        with pytest.raises(ValidationError, match="not coprime"):
            OrderFindingConfig(modulus_n=15, base_x=6, width_l=8, approx_m=8)

    def test_m_above_l(self):
        with pytest.raises(ValidationError, match="must not exceed"):
            OrderFindingConfig(modulus_n=15, base_x=7, width_l=8, approx_m=9)

    def test_qubit_budget(self):
        with pytest.raises(ValidationError, match="qubit budget exceeded"):
            OrderFindingConfig(modulus_n=15, base_x=7, width_l=23, approx_m=1)
        OrderFindingConfig(modulus_n=15, base_x=7, width_l=22, approx_m=1)

    def test_field_ranges(self):
        with pytest.raises(ValidationError):
            OrderFindingConfig(modulus_n=2, base_x=1, width_l=4, approx_m=1)
        with pytest.raises(ValidationError):
            OrderFindingConfig(modulus_n=15, base_x=7, width_l=4, approx_m=1, seed=-1)

    def test_frozen(self):
        config = OrderFindingConfig.for_modulus(15, 7)
        with pytest.raises(ValidationError):
            config.seed = 3


class TestOutputSpec:
    """Tests for OutputSpec"""

    def test_defaults(self):
        spec = OutputSpec()
        assert spec.format == OutputFormat.TEXT
        assert spec.destination is None

    def test_from_strings(self):
        spec = OutputSpec(format="csv", destination="out/table.csv")
        assert spec.format == OutputFormat.CSV
        assert spec.destination == Path("out/table.csv")

    def test_unknown_format(self):
        with pytest.raises(ValidationError):
            OutputSpec(format="xml")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
