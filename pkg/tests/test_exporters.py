"""
Tests for exporters
Tests para los exportadores
"""

import io
import json
import pytest
import sys
from pathlib import Path

import numpy as np
import pandas as pd

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from modules import exporters
from modules.circuit import build_aqft_plan, build_qft_plan
from modules.contract_models import OrderFindingConfig, OutputSpec
from modules.orderfinding import run_shots
from modules.reference_transforms import deviation_report, dft_matrix
from modules.scheduler import schedule_plan


class TestMatrixExport:
    """Matrix text, JSON and CSV"""

    def test_text_grid(self):
        lines = exporters.matrix_to_text(dft_matrix(3)).splitlines()
        assert lines[0] == "# kind=fft l=3 m=3 convention=row=c, col=a"
        assert lines[2] == "w^0 w^0 w^0 w^0 w^0 w^0 w^0 w^0"
        assert lines[3] == "w^0 w^1 w^2 w^3 w^4 w^5 w^6 w^7"
        assert lines[9] == "w^0 w^7 w^6 w^5 w^4 w^3 w^2 w^1"

    def test_json_round_values(self):
        payload = json.loads(exporters.matrix_to_json(dft_matrix(2)))
        assert payload["convention"] == "row=c, col=a"
        assert (payload["l"], payload["m"]) == (2, 2)
        entries = np.array([[complex(re, im) for re, im in row] for row in payload["entries"]])
        np.testing.assert_array_equal(entries, dft_matrix(2).entries)

    def test_json_significant_digits(self):
        text = exporters.matrix_to_json(dft_matrix(1))
        assert "0.70710678118654757" in text

    def test_csv(self):
        frame = pd.read_csv(io.StringIO(exporters.matrix_to_csv(dft_matrix(2))))
        assert list(frame.columns) == ["c", "a", "re", "im"]
        assert len(frame) == 16
        row = frame[(frame.c == 3) & (frame.a == 3)].iloc[0]
        assert row.re == pytest.approx(0.0, abs=1e-15)
        assert row.im == pytest.approx(0.5)


class TestScheduleAndPlanExport:
    """Schedule and plan renderings"""

    def test_schedule_text(self):
        text = exporters.schedule_to_text(schedule_plan(build_aqft_plan(4, 1)))
        assert text.splitlines() == [
            "[P3] [P2] [P1] [P0]",
            "depth: 4",
            "time steps available: 7",
            "empty steps: 5 3 1",
        ]

    def test_schedule_json(self):
        payload = json.loads(exporters.schedule_to_json(schedule_plan(build_qft_plan(3)), 3, True))
        assert payload["layers"] == [["P2"], ["Q12"], ["P1", "Q02"], ["Q01"], ["P0"]]
        assert payload["depth"] == 5
        assert payload["valid"] is True

    def test_schedule_csv(self):
        frame = pd.read_csv(io.StringIO(exporters.schedule_to_csv(schedule_plan(build_qft_plan(3)))))
        assert list(frame.step) == [4, 3, 2, 1, 0]
        assert frame.gates[2] == "P1 Q02"

    def test_plan_json(self):
        payload = json.loads(exporters.plan_to_json(build_aqft_plan(4, 2)))
        assert payload["hadamard_count"] == 4
        assert payload["controlled_phase_count"] == 3
        assert payload["gates"][:2] == ["P 3", "Q 2 3 4 4"]


class TestDeviationExport:
    """Deviation text, JSON and CSV"""

    def test_text_without_observation(self):
        text = exporters.deviation_to_text(deviation_report(500, 20))
        assert "analytic bound: 2.996056e-03" in text
        assert "observed max phase deviation: n/a (width guard)" in text

    def test_json(self):
        payload = json.loads(exporters.deviation_to_json(deviation_report(6, 6)))
        assert payload["max_phase_deviation"] == 0
        assert payload["bound_satisfied"] is True

    def test_sweep_csv(self):
        reports = [deviation_report(4, m) for m in range(1, 5)]
        frame = pd.read_csv(io.StringIO(exporters.deviation_to_csv(reports)))
        assert list(frame.m) == [1, 2, 3, 4]
        assert frame.max_phase_deviation.iloc[-1] == 0


@pytest.fixture(scope="module")
def summary():
    return run_shots(OrderFindingConfig(modulus_n=15, base_x=7, width_l=8, approx_m=8), 16)


class TestRunExport:
    """Order-finding summaries"""

    def test_json(self, summary):
        payload = json.loads(exporters.summary_to_json(summary))
        assert payload["config"]["modulus_n"] == 15
        assert len(payload["runs"]) == 16
        assert len(payload["runs"][0]["measured_bits"]) == 8
        assert payload["period"] == 4
        assert payload["factors"] == [3, 5]

    def test_histogram_csv(self, summary):
        frame = pd.read_csv(io.StringIO(exporters.histogram_to_csv(summary)))
        assert list(frame.columns) == ["outcome", "count", "frequency"]
        assert frame["count"].sum() == 16
        assert set(frame.outcome) <= {0, 64, 128, 192}

    def test_text(self, summary):
        text = exporters.summary_to_text(summary)
        assert "period: 4" in text
        assert "factors: 3 x 5" in text


class TestDestinations:
    """Output destinations"""

    def test_stdout(self, capsys):
        assert exporters.write_output("hello\n", OutputSpec()) is None
        assert capsys.readouterr().out == "hello\n"

    def test_relative_path_uses_default_dir(self, tmp_path):
        path = exporters.write_output("x\n", OutputSpec(destination="sub/out.txt"), tmp_path)
        assert path == tmp_path / "sub" / "out.txt"
        assert path.read_text(encoding="utf-8") == "x\n"

    def test_absolute_path_kept(self, tmp_path):
        target = tmp_path / "abs.txt"
        assert exporters.write_output("y\n", OutputSpec(destination=target), Path("/elsewhere")) == target


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
