"""Prediction-vs-ground-truth curve plots, one chart per video."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from eduvsum.core.types import AnnotationSet
from eduvsum.errors import InvalidInputError


def plot_prediction_curves(
    annotation: AnnotationSet,
    segment_predictions: np.ndarray,
    out_path: str | Path,
    caption: str | None = None,
) -> Path:
    """Ground-truth step curve and predicted curve on a 1-10 axis over segment
    index, written as a PNG."""
    segment_predictions = np.asarray(segment_predictions, dtype=np.float64)
    truth = np.asarray(annotation.scores, dtype=np.float64)
    if len(segment_predictions) != len(truth):
        raise InvalidInputError(
            f"{len(segment_predictions)} predicted segments vs {len(truth)} annotated"
        )
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)

    x = np.arange(len(truth))
    fig, ax = plt.subplots(figsize=(10, 3.2))
    ax.step(x, truth, where="mid", label="ground truth", color="tab:blue", linewidth=1.8)
    ax.plot(x, segment_predictions, label="predicted", color="tab:orange",
            linewidth=1.4, marker=".", markersize=4)
    ax.set_xlabel("segment index")
    ax.set_ylabel("importance score")
    ax.set_ylim(0.5, 10.5)
    ax.set_yticks(range(1, 11))
    title = f"{annotation.video_id}"
    if caption:
        title += f"  ({caption})"
    ax.set_title(title)
    ax.legend(loc="upper right", fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    try:
        # an unwritable path surfaces as the underlying OSError
        fig.savefig(out_path, dpi=120)
    finally:
        plt.close(fig)
    return out_path
