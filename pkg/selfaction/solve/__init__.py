from .mass import (
    MassSolverError,
    MassSolveResult,
    ConditionAudit,
    PAPER_MODE,
    EXACT_MODE,
    resolve_c0,
    eq29_function,
    solve_eq29,
    solve_exact_condition,
    condition_value,
    condition_audit,
    compare_modes,
    alpha_scan,
)
