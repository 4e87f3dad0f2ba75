"""Structured eigenvalue condition numbers of rational matrix functions."""

from ._rmfcond import (
    AssumptionReport,
    BadParamsError,
    ConditionReport,
    DimensionMismatchError,
    Eigentriplet,
    EqualityState,
    EqualityVerdict,
    Factors,
    GenerateParams,
    InfeasibleError,
    NoConvergenceError,
    NotSimpleError,
    ParseError,
    PerturbationTuple,
    PoleError,
    RationalMatrixFunction,
    SlopeReport,
    SolveStats,
    StructureMismatchError,
    StructureReport,
    StructureTag,
    SupOracleResult,
    TransformMode,
    UnsupportedError,
    Weight,
    alpha_weight_sum,
    check_assumptions,
    detect_structures,
    equality_predicate,
    first_order_experiment,
    generate_example,
    kappa_structured,
    kappa_unstructured,
    parse_problem,
    parse_problem_text,
    perturbed,
    problem_to_text,
    random_structured_tuple,
    refine_triplet,
    solve_all,
    solve_all_with_stats,
    spectral_norm,
    structure_factors,
    sup_oracle_sampling,
    sup_oracle_structured,
    tag_from_name,
    tag_name,
    transform_rmf,
    validate_structure,
    worst_case_perturbation,
    write_problem,
)

__all__ = [name for name in dir() if not name.startswith("_")]
