"""
Tests for the parallel scheduler
Tests para el planificador paralelo
"""

import pytest
import sys
from pathlib import Path

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from modules.circuit import CircuitPlan, build_aqft_plan, build_qft_plan, controlled_phase_gate, hadamard_gate
from modules.scheduler import (
    Schedule,
    ScheduleError,
    depth_report,
    format_schedule,
    schedule_depth,
    schedule_plan,
    time_step,
    validate_schedule,
)


class TestSchedulePlan:
    """Tests for schedule_plan and format_schedule"""

    def test_five_qubit_layers(self):
        schedule = schedule_plan(build_qft_plan(5))
        assert format_schedule(schedule) == (
            "[P4] [Q34] [P3 Q24] [Q23 Q14] [P2 Q13 Q04] [Q12 Q03] [P1 Q02] [Q01] [P0]"
        )
        assert schedule.time_steps == (8, 7, 6, 5, 4, 3, 2, 1, 0)
        assert schedule.empty_steps == ()

    def test_single_qubit(self):
        schedule = schedule_plan(build_qft_plan(1))
        assert format_schedule(schedule) == "[P0]"
        assert schedule_depth(schedule) == 1

    def test_time_step_rule(self):
        assert time_step(hadamard_gate(3)) == 6
        assert time_step(controlled_phase_gate(1, 4, 5)) == 5

    def test_nearest_neighbour_plan(self):
        schedule = schedule_plan(build_aqft_plan(5, 2))
        assert format_schedule(schedule) == "[P4] [Q34] [P3] [Q23] [P2] [Q12] [P1] [Q01] [P0]"
        assert schedule_depth(schedule) == 9

    def test_hadamards_only(self):
        schedule = schedule_plan(build_aqft_plan(8, 1))
        assert schedule_depth(schedule) == 8
        assert schedule.time_steps == (14, 12, 10, 8, 6, 4, 2, 0)
        assert schedule.empty_steps == (13, 11, 9, 7, 5, 3, 1)

    def test_gate_beyond_width(self):
        # bypass the plan's own width check to reach the scheduler's
        plan = build_qft_plan(2)
        object.__setattr__(plan, "width_l", 1)
        with pytest.raises(ScheduleError):
            schedule_plan(plan)


class TestScheduleDepth:
    """Tests for schedule_depth and depth_report"""

    def test_two_qubits(self):
        assert schedule_depth(schedule_plan(build_qft_plan(2))) == 3

    def test_full_transform_depth(self):
        for l in range(2, 13):
            assert schedule_depth(schedule_plan(build_qft_plan(l))) == 2 * l - 1

    def test_layer_count_bound(self):
        for l in range(1, 13):
            for m in range(1, l + 1):
                assert schedule_depth(schedule_plan(build_aqft_plan(l, m))) <= 2 * l - 1

    def test_depth_report(self):
        report = depth_report(schedule_plan(build_aqft_plan(4, 1)))
        assert report["depth"] == 4
        assert report["available_steps"] == 7
        assert report["time_steps"] == [6, 4, 2, 0]
        assert report["empty_steps"] == [5, 3, 1]


class TestValidateSchedule:
    """Tests for validate_schedule"""

    def test_five_qubit_valid(self):
        plan = build_qft_plan(5)
        result = validate_schedule(schedule_plan(plan), plan)
        assert result.is_valid
        assert result.disjoint and result.complete and result.equivalent
        assert result.max_matrix_error <= 1e-10

    def test_aqft_6_3_valid(self):
        plan = build_aqft_plan(6, 3)
        assert validate_schedule(schedule_plan(plan), plan).is_valid

    def test_disjoint_and_complete_up_to_12(self):
        for l in range(1, 13):
            for m in range(1, l + 1):
                plan = build_aqft_plan(l, m)
                result = validate_schedule(schedule_plan(plan), plan)
                assert result.disjoint and result.complete, (l, m)

    def test_equivalent_up_to_7(self):
        for l in range(1, 8):
            for m in range(1, l + 1):
                plan = build_aqft_plan(l, m)
                result = validate_schedule(schedule_plan(plan), plan)
                assert result.equivalent, (l, m)

    def test_no_matrix_check_above_cap(self):
        plan = build_qft_plan(8)
        result = validate_schedule(schedule_plan(plan), plan)
        assert result.is_valid
        assert result.equivalent is None

    def test_equivalence_width_argument(self):
        plan = build_qft_plan(8)
        result = validate_schedule(schedule_plan(plan), plan, equivalence_width=8)
        assert result.equivalent
        narrow = build_qft_plan(4)
        assert validate_schedule(schedule_plan(narrow), narrow, equivalence_width=3).equivalent is None

    def test_equivalence_width_capped_at_dense_guard(self):
        plan = build_qft_plan(11)
        result = validate_schedule(schedule_plan(plan), plan, equivalence_width=20)
        assert result.is_valid
        assert result.equivalent is None

    def test_shared_qubit_reported(self):
        plan = build_qft_plan(2)
        corrupted = Schedule(
            width_l=2,
            layers=(
                frozenset({hadamard_gate(1)}),
                frozenset({hadamard_gate(0), controlled_phase_gate(0, 1, 2)}),
            ),
        )
        result = validate_schedule(corrupted, plan)
        assert not result.is_valid
        assert not result.disjoint
        issue = result.errors[0]
        assert issue.code == "disjointness"
        assert "qubit 0" in issue.message
        assert issue.layer_index == 1
        assert sorted(issue.gates) == ["P0", "Q01"]

    def test_missing_gate_reported(self):
        plan = build_qft_plan(3)
        schedule = schedule_plan(plan)
        truncated = Schedule(width_l=3, layers=schedule.layers[:-1])
        result = validate_schedule(truncated, plan)
        assert not result.complete
        assert any(issue.code == "completeness" and "P0" in issue.gates for issue in result.errors)

    def test_wrong_order_fails_equivalence(self):
        plan = build_qft_plan(2)
        reordered = Schedule(
            width_l=2,
            layers=(
                frozenset({hadamard_gate(0)}),
                frozenset({controlled_phase_gate(0, 1, 2)}),
                frozenset({hadamard_gate(1)}),
            ),
        )
        result = validate_schedule(reordered, plan)
        assert result.disjoint and result.complete
        assert result.equivalent is False
        assert not result.is_valid

    def test_flattened_order(self):
        schedule = schedule_plan(build_qft_plan(3))
        assert [gate.label for gate in schedule.flattened()] == ["P2", "Q12", "P1", "Q02", "Q01", "P0"]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
