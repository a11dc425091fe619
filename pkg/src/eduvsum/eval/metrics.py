"""Frame- and segment-level metrics: Top-k accuracy and mean absolute error.

Ground truth lives per segment; predictions live per frame. For frame-level
MAE every frame inherits its segment's annotated score; for segment-level MAE
the per-frame predicted scores are averaged within each segment first (kept as
reals unless rounding is requested).
"""

from __future__ import annotations

import numpy as np

from eduvsum.core.types import AnnotationSet
from eduvsum.errors import ContractError, InvalidInputError
from eduvsum.model.network import PredictionDistribution


def top_k_accuracy(
    predictions: list[PredictionDistribution],
    labels: np.ndarray,
    k: int,
) -> float:
    """Percentage of frames whose true class is among the k most probable.

    Ties in probability rank the lower class index first.
    """
    labels = np.asarray(labels)
    if len(predictions) != len(labels):
        raise InvalidInputError(
            f"{len(predictions)} predictions vs {len(labels)} labels"
        )
    if k not in (1, 2, 3):
        raise InvalidInputError(f"k must be 1, 2 or 3, got {k}")
    if len(predictions) == 0:
        raise InvalidInputError("no predictions to score")
    hits = 0
    for dist, label in zip(predictions, labels):
        ranking = np.argsort(-dist.probs, kind="stable")[:k]
        hits += int(label in ranking)
    return 100.0 * hits / len(predictions)


def _segment_scores_for_frames(annotation: AnnotationSet, segment_indices: np.ndarray) -> np.ndarray:
    scores = np.asarray(annotation.scores, dtype=np.float64)
    segment_indices = np.asarray(segment_indices)
    if segment_indices.min() < 0 or segment_indices.max() >= len(scores):
        raise ContractError(
            f"frame maps to segment {int(segment_indices.max())} outside the "
            f"{len(scores)}-segment annotation"
        )
    return scores[segment_indices]


def mae_frame(
    predicted_scores: np.ndarray,
    annotation: AnnotationSet,
    segment_indices: np.ndarray,
) -> float:
    """Mean |predicted - ground truth| over frames, ground truth expanded
    segment-to-frame."""
    predicted_scores = np.asarray(predicted_scores, dtype=np.float64)
    segment_indices = np.asarray(segment_indices)
    if len(predicted_scores) != len(segment_indices):
        raise InvalidInputError(
            f"{len(predicted_scores)} predictions vs {len(segment_indices)} frames"
        )
    truth = _segment_scores_for_frames(annotation, segment_indices)
    return float(np.abs(predicted_scores - truth).mean())


def aggregate_segment_scores(
    predicted_scores: np.ndarray,
    segment_indices: np.ndarray,
    n_segments: int,
    round_to_int: bool = False,
) -> tuple[np.ndarray, list[int]]:
    """Per-segment mean of its frames' predicted scores.

    Values stay real-valued by default; round_to_int gives the integer
    variant. A frameless segment (only possible for a sub-third-of-a-second
    tail) inherits the previous segment's value; its index is returned so
    reports can flag it.
    """
    predicted_scores = np.asarray(predicted_scores, dtype=np.float64)
    segment_indices = np.asarray(segment_indices)
    if len(predicted_scores) != len(segment_indices):
        raise InvalidInputError("predictions and segment indices differ in length")
    if n_segments <= 0 or (len(segment_indices) and segment_indices.max() >= n_segments):
        raise InvalidInputError("segment indices exceed declared segment count")
    values = np.zeros(n_segments, dtype=np.float64)
    empty: list[int] = []
    for s in range(n_segments):
        mask = segment_indices == s
        if mask.any():
            values[s] = predicted_scores[mask].mean()
        elif s > 0:
            values[s] = values[s - 1]
            empty.append(s)
        else:
            raise InvalidInputError("segment 0 contains no frames")
    if round_to_int:
        values = np.rint(values)
    return values, empty


def mae_segment(segment_predictions: np.ndarray, annotation: AnnotationSet) -> float:
    """Mean |predicted segment value - annotated score| over segments."""
    segment_predictions = np.asarray(segment_predictions, dtype=np.float64)
    scores = np.asarray(annotation.scores, dtype=np.float64)
    if len(segment_predictions) != len(scores):
        raise InvalidInputError(
            f"{len(segment_predictions)} segment predictions vs {len(scores)} annotated segments"
        )
    return float(np.abs(segment_predictions - scores).mean())
