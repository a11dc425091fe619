"""Metrics, reports, ablation tables and prediction plots."""

from eduvsum.eval.metrics import (
    aggregate_segment_scores,
    mae_frame,
    mae_segment,
    top_k_accuracy,
)
from eduvsum.eval.plots import plot_prediction_curves
from eduvsum.eval.report import (
    AblationTable,
    EvaluationReport,
    PerVideoResult,
    build_ablation_table,
    evaluate_model,
)

__all__ = [
    "aggregate_segment_scores",
    "mae_frame",
    "mae_segment",
    "top_k_accuracy",
    "plot_prediction_curves",
    "AblationTable",
    "EvaluationReport",
    "PerVideoResult",
    "build_ablation_table",
    "evaluate_model",
]
