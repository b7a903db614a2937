"""Fourth-order neutral difference equations with quasidifferences.

Simulation (forward and inverse recursion), finite-horizon classification of
trajectories, and machine-checkable certificates for the nonexistence of
alternating solutions and for companion-sequence bounds.
"""

from .analysis import (
    BoundCertificate,
    CheckStatus,
    ComponentSummary,
    ConditionEntry,
    ConditionReport,
    ContradictionCertificate,
    QuickDecomposition,
    QuickParity,
    SeriesProbe,
    SeriesStatus,
    SignCase,
    SignProfileReport,
    Verdict,
    VerdictKind,
    check_almost_oscillation,
    check_quick_exclusion,
    check_series_divergence,
    classify,
    companion_bound_certificate,
    component_sign_profile,
    limit_from_companion,
    sign_conflict_certificate,
)
from .document import build_equation, build_sequence, parse_equation_document
from .errors import (
    DocumentError,
    HypothesisViolation,
    NumericRangeError,
    PivotError,
    QuasidiffError,
    SequenceDomainError,
    WindowIndexError,
)
from .examples import (
    EXAMPLE_NAMES,
    example_closed_form,
    example_document,
    example_equation,
    example_summary,
)
from .model import (
    Affine,
    Combine,
    Constant,
    CustomMap,
    DerivedCoefficients,
    EquationSpec,
    Geometric,
    Nonlinearity,
    OddPowerMap,
    PowerLaw,
    SequenceSpec,
    SignedPower,
    SignumMap,
    Table,
    chain_windows,
    companion,
    derive_coefficients,
    evaluate_sequence,
    identity_map,
    max_relative_residual,
    quasidifference_chain,
    relative_residual,
    residual,
    residual_range,
    residual_scale,
)
from .numerics import DEFAULT_TOLERANCE, OddRatio, ToleranceProfile, spow, spow_inverse
from .solver import (
    Provenance,
    SeedWindow,
    Trajectory,
    forward_seed_span,
    inverse_seed_span,
    sample_trajectory,
    solve_forward,
    solve_inverse,
)
from .windows import Window

__version__ = "0.1.0"

__all__ = [
    "Affine", "BoundCertificate", "CheckStatus", "Combine", "ComponentSummary",
    "ConditionEntry", "ConditionReport", "Constant", "ContradictionCertificate",
    "CustomMap", "DEFAULT_TOLERANCE", "DerivedCoefficients", "DocumentError",
    "EXAMPLE_NAMES", "EquationSpec", "Geometric", "HypothesisViolation",
    "Nonlinearity", "NumericRangeError", "OddPowerMap", "OddRatio", "PivotError",
    "PowerLaw", "Provenance", "QuasidiffError", "QuickDecomposition", "QuickParity",
    "SeedWindow", "SequenceDomainError", "SequenceSpec", "SeriesProbe", "SeriesStatus",
    "SignCase", "SignProfileReport", "SignedPower", "SignumMap", "Table",
    "ToleranceProfile", "Trajectory", "Verdict", "VerdictKind", "Window",
    "WindowIndexError", "build_equation", "build_sequence", "chain_windows",
    "check_almost_oscillation", "check_quick_exclusion", "check_series_divergence",
    "classify", "companion", "companion_bound_certificate", "component_sign_profile",
    "derive_coefficients", "evaluate_sequence", "example_closed_form",
    "example_document", "example_equation", "example_summary", "forward_seed_span",
    "identity_map", "inverse_seed_span", "limit_from_companion",
    "max_relative_residual", "parse_equation_document", "quasidifference_chain",
    "relative_residual", "residual", "residual_range", "residual_scale",
    "sample_trajectory", "sign_conflict_certificate", "solve_forward",
    "solve_inverse", "spow", "spow_inverse",
]
