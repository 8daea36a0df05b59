# Modules - AQFT statevector toolkit
# Componentes del simulador de la transformada de Fourier aproximada

from .settings_loader import SettingsPack, load_settings, load_yaml_file
from .numerics import (
    SimulationError,
    QubitBudgetError,
    QubitIndexError,
    DegenerateBranchError,
    BasisIndex,
    PhaseExponent,
    StateVector,
    unit_roots,
    new_basis_state,
    new_uniform,
    apply_hadamard,
    apply_controlled_phase,
    project_qubit,
    measure_qubit,
    born_distribution,
)
from .circuit import (
    PlanError,
    GateKind,
    GateOp,
    CircuitPlan,
    hadamard_gate,
    controlled_phase_gate,
    build_qft_plan,
    build_aqft_plan,
    gate_counts,
    run_plan,
    pass_snapshots,
    plan_to_matrix,
    bit_reverse,
    plan_to_text,
    parse_plan_text,
)
from .reference_transforms import (
    WidthGuardError,
    TransformMatrix,
    DeviationReport,
    dft_matrix,
    hadamard_matrix,
    afft_matrix,
    deviation_report,
    operator_norm_bound,
    max_unitarity_error,
)
from .scheduler import (
    ScheduleError,
    Schedule,
    ScheduleValidation,
    schedule_plan,
    schedule_depth,
    validate_schedule,
    format_schedule,
)
from .contract_models import OrderFindingConfig, OutputSpec, OutputFormat, default_width
from .orderfinding import (
    OrderFindingError,
    RunRecord,
    ShotSummary,
    modexp_factor,
    multiplicative_order,
    run_semiclassical,
    semiclassical_distribution,
    full_circuit_distribution,
    extract_period,
    factor_from_period,
    run_shots,
)

__all__ = [
    'SettingsPack',
    'load_settings',
    'load_yaml_file',
    'SimulationError',
    'QubitBudgetError',
    'QubitIndexError',
    'DegenerateBranchError',
    'BasisIndex',
    'PhaseExponent',
    'StateVector',
    'unit_roots',
    'new_basis_state',
    'new_uniform',
    'apply_hadamard',
    'apply_controlled_phase',
    'project_qubit',
    'measure_qubit',
    'born_distribution',
    'PlanError',
    'GateKind',
    'GateOp',
    'CircuitPlan',
    'hadamard_gate',
    'controlled_phase_gate',
    'build_qft_plan',
    'build_aqft_plan',
    'gate_counts',
    'run_plan',
    'pass_snapshots',
    'plan_to_matrix',
    'bit_reverse',
    'plan_to_text',
    'parse_plan_text',
    'WidthGuardError',
    'TransformMatrix',
    'DeviationReport',
    'dft_matrix',
    'hadamard_matrix',
    'afft_matrix',
    'deviation_report',
    'operator_norm_bound',
    'max_unitarity_error',
    'ScheduleError',
    'Schedule',
    'ScheduleValidation',
    'schedule_plan',
    'schedule_depth',
    'validate_schedule',
    'format_schedule',
    'OrderFindingConfig',
    'OutputSpec',
    'OutputFormat',
    'default_width',
    'OrderFindingError',
    'RunRecord',
    'ShotSummary',
    'modexp_factor',
    'multiplicative_order',
    'run_semiclassical',
    'semiclassical_distribution',
    'full_circuit_distribution',
    'extract_period',
    'factor_from_period',
    'run_shots',
]
