"""Finite semihypergroups built from groups: construction, checks and recovery."""

from .cube import (
    ConditionAReport,
    ConvolutionCube,
    Measure,
    StochasticMatrix,
    StructureReport,
    Violation,
    check_associativity,
    check_condition_A,
    convolve,
    left_matrix,
    new_cube,
    right_matrix,
    structure_report,
)
from .derive import DerivationResult, base_matrix, from_group
from .groups import (
    CayleyTable,
    GroupIsomorphism,
    PermutationMatrix,
    catalog,
    full_catalog,
    is_isomorphic,
    is_uniform_on_subgroup,
    left_regular,
    named,
    right_regular,
    subgroups,
    validate_cayley,
)
from .recover import (
    RecoveryResult,
    SliceRelation,
    recover_fallback,
    recover_group,
    slice_to_group,
    value_slices,
    verify_recovery,
)
from .stream import (
    AnalysisReport,
    EstimatedCube,
    EventStream,
    analyze_stream,
    estimate_cube,
    simulate,
    snap_to_rational,
)

__version__ = "0.1.0"
