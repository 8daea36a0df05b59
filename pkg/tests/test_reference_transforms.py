"""
Tests for reference transforms and deviation analysis
Tests para las transformadas de referencia
"""

import math
import pytest
import sys
from pathlib import Path

import numpy as np

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from modules.circuit import bit_reversal_permutation, build_aqft_plan, plan_to_matrix
from modules.reference_transforms import (
    WidthGuardError,
    afft_matrix,
    analytic_bound,
    deviation_report,
    dft_matrix,
    dropped_term_grid,
    hadamard_matrix,
    max_unitarity_error,
    operator_norm_bound,
)


class TestDftMatrix:
    """Tests for dft_matrix"""

    def test_width_one(self):
        expected = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        np.testing.assert_allclose(dft_matrix(1).entries, expected, atol=1e-15)

    def test_entry_c1_a1(self):
        entries = dft_matrix(3).entries
        assert entries[1, 1] == pytest.approx(np.exp(2j * np.pi / 8) / np.sqrt(8), abs=1e-15)

    def test_entry_c3_a3(self):
        assert dft_matrix(2).entries[3, 3] == pytest.approx(0.5j, abs=1e-15)

    def test_equals_omega_power(self):
        for l in range(1, 8):
            dim = 1 << l
            c, a = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
            expected = np.exp(2j * np.pi * (c * a % dim) / dim) / np.sqrt(dim)
            np.testing.assert_allclose(dft_matrix(l).entries, expected, atol=1e-12)

    def test_exponents_reduced(self):
        matrix = dft_matrix(4)
        assert matrix.exponents.min() >= 0
        assert matrix.exponents.max() < 16
        assert matrix.convention == "row=c, col=a"

    def test_width_guard(self):
        with pytest.raises(WidthGuardError):
            dft_matrix(11)
        with pytest.raises(WidthGuardError):
            dft_matrix(0)


class TestHadamardMatrix:
    """Tests for hadamard_matrix"""

    def test_width_one(self):
        expected = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        np.testing.assert_allclose(hadamard_matrix(1).entries, expected, atol=1e-15)

    def test_reversed_pairing(self):
        entries = hadamard_matrix(2).entries
        assert entries[1, 1] == pytest.approx(0.5)
        # a = 01, c = 10 pairs a_0 with c_1
        assert entries[2, 1] == pytest.approx(-0.5)

    def test_real_signs(self):
        entries = hadamard_matrix(5).entries
        assert np.all(entries.imag == 0)
        np.testing.assert_allclose(np.abs(entries), 2.0 ** (-2.5), atol=1e-12)


class TestAfftMatrix:
    """Tests for afft_matrix and its endpoints"""

    def test_endpoints(self):
        for l in range(1, 9):
            np.testing.assert_allclose(afft_matrix(l, l).entries, dft_matrix(l).entries, atol=1e-12)
            np.testing.assert_allclose(afft_matrix(l, 1).entries, hadamard_matrix(l).entries, atol=1e-12)

    def test_hadamard_endpoint_exact(self):
        assert np.array_equal(afft_matrix(3, 1).entries, hadamard_matrix(3).entries)

    def test_entry_c7_a7(self):
        # retained j+k in {1, 2}: 2+2 from j+k=1 and 4+4+4 from j+k=2, 16 = 0 mod 8
        entry = afft_matrix(3, 2).entries[7, 7]
        assert entry == pytest.approx(1 / np.sqrt(8), abs=1e-15)
        circuit = plan_to_matrix(build_aqft_plan(3, 2))[bit_reversal_permutation(3)]
        assert circuit[7, 7] == pytest.approx(entry, abs=1e-12)

    def test_phase_quantization(self):
        for l in range(1, 9):
            for m in range(1, l + 1):
                exponents = afft_matrix(l, m).exponents
                assert np.all(exponents % (1 << (l - m)) == 0)

    def test_m_guard(self):
        with pytest.raises(WidthGuardError):
            afft_matrix(4, 5)
        with pytest.raises(WidthGuardError):
            afft_matrix(4, 0)


class TestMatrixProperties:
    """Unitarity and magnitude invariants of every builder"""

    def test_unitary(self):
        for l in range(1, 9):
            assert max_unitarity_error(dft_matrix(l).entries) <= 1e-10
            assert max_unitarity_error(hadamard_matrix(l).entries) <= 1e-10
            for m in range(1, l + 1):
                assert max_unitarity_error(afft_matrix(l, m).entries) <= 1e-10

    def test_magnitudes(self):
        for l in range(1, 9):
            for m in range(1, l + 1):
                np.testing.assert_allclose(np.abs(afft_matrix(l, m).entries), 2.0 ** (-l / 2), atol=1e-12)

    def test_unitarity_error_detects_non_unitary(self):
        assert max_unitarity_error(np.eye(4) * 2) == pytest.approx(3.0)


class TestDeviation:
    """Tests for deviation_report and the bounds"""

    def test_large_width_bound(self):
        report = deviation_report(500, 20)
        assert report.analytic_bound == pytest.approx(2 * math.pi * 500 * 2.0 ** -20)
        assert f"{report.analytic_bound:.3e}" == "2.996e-03"
        assert report.max_phase_deviation is None
        assert report.bound_satisfied is None
        assert not report.observed

    def test_exact_transform_has_no_deviation(self):
        for l in range(1, 9):
            report = deviation_report(l, l)
            assert report.max_phase_deviation == 0
            assert report.bound_satisfied

    def test_l6_m3(self):
        # worst case a = c = 7: dropped terms sum to (t-1)*2^t + 1 with t = 3
        report = deviation_report(6, 3)
        assert report.max_phase_deviation == pytest.approx(2 * math.pi * 17 / 64)
        assert int(dropped_term_grid(6, 3).max()) == 17

    def test_bound_holds_exhaustively(self):
        for l in range(1, 9):
            for m in range(1, l + 1):
                report = deviation_report(l, m)
                assert report.bound_satisfied
                assert report.max_phase_deviation <= analytic_bound(l, m)

    def test_monotone_refinement(self):
        for l in range(2, 9):
            deviations = [deviation_report(l, m).max_phase_deviation for m in range(1, l + 1)]
            assert deviations == sorted(deviations, reverse=True)

    def test_deviation_matches_matrix_difference(self):
        l, m = 5, 3
        difference = np.angle(afft_matrix(l, m).entries / dft_matrix(l).entries)
        observed = deviation_report(l, m).max_phase_deviation
        # the dropped-term phase stays below pi here, so angle() does not wrap
        assert observed < math.pi
        assert np.max(np.abs(difference)) == pytest.approx(observed, abs=1e-9)

    def test_operator_norm_bound(self):
        assert operator_norm_bound(6, 6) == 0
        assert operator_norm_bound(6, 2) > operator_norm_bound(6, 4) > 0
        for l in range(2, 8):
            for m in range(1, l + 1):
                norm = np.linalg.norm(afft_matrix(l, m).entries - dft_matrix(l).entries, 2)
                assert norm <= operator_norm_bound(l, m) + 1e-10

    def test_guards(self):
        with pytest.raises(WidthGuardError):
            deviation_report(0, 1)
        with pytest.raises(WidthGuardError):
            deviation_report(5, 6)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
