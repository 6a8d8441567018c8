"""flipaudit: proportionality auditing of post-processing debiasing flips."""

__version__ = "0.1.0"

from .frame import AuditFrame, ValidationError
from .metrics import (
    FlipKind,
    FlipSummary,
    MetricValue,
    classify_flips,
    directional_flip_ratio,
    flip_rate,
    harmful_flip_proportion,
    summarize_flips,
)
from .groups import (
    GroupFlipSummary,
    ProportionalityMetrics,
    compute_proportionality,
    disparity_index,
    flip_disparity,
    rate_difference,
    relative_disparity,
    split_by_group,
)
from .fairness import (
    FairnessResult,
    equalized_odds_difference,
    evaluate_fairness,
    statistical_parity_difference,
)
from .thresholds import Band, ThresholdConfig, ThresholdEntry, classify
from .report import (
    ProportionalityReport,
    build_report,
    parse_structured,
    render_structured,
    render_text,
)
from .scenario import (
    REFERENCE_EXAMPLE,
    GroupScenario,
    ScenarioSpec,
    generate_scenario,
)
from .debias import DebiasError, make_sp_debiaser, sp_equalizing_debiaser
from .pipeline import Decision, PipelineOutcome, run_audit_pipeline
from .tabular import ColumnMapping, frame_to_csv, ingest
from .chart import emit_chart

__all__ = [
    "AuditFrame",
    "Band",
    "ColumnMapping",
    "Decision",
    "DebiasError",
    "FairnessResult",
    "FlipKind",
    "FlipSummary",
    "GroupFlipSummary",
    "GroupScenario",
    "MetricValue",
    "REFERENCE_EXAMPLE",
    "PipelineOutcome",
    "ProportionalityMetrics",
    "ProportionalityReport",
    "ScenarioSpec",
    "ThresholdConfig",
    "ThresholdEntry",
    "ValidationError",
    "build_report",
    "classify",
    "classify_flips",
    "compute_proportionality",
    "directional_flip_ratio",
    "disparity_index",
    "emit_chart",
    "equalized_odds_difference",
    "evaluate_fairness",
    "flip_disparity",
    "flip_rate",
    "frame_to_csv",
    "generate_scenario",
    "harmful_flip_proportion",
    "ingest",
    "make_sp_debiaser",
    "parse_structured",
    "rate_difference",
    "relative_disparity",
    "render_structured",
    "render_text",
    "run_audit_pipeline",
    "sp_equalizing_debiaser",
    "split_by_group",
    "statistical_parity_difference",
    "summarize_flips",
]
