"""Evaluation reports and the ablation table."""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from eduvsum.core.types import AnnotationSet
from eduvsum.errors import InvalidInputError, ValidationError
from eduvsum.eval.metrics import (
    aggregate_segment_scores,
    mae_frame,
    mae_segment,
    top_k_accuracy,
)
from eduvsum.features.bundle import FeatureBundle
from eduvsum.model.network import TrainedModel
from eduvsum.model.windows import frame_labels

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PerVideoResult:
    video_id: str
    top1: float
    mae_seg: float


@dataclass(frozen=True)
class EvaluationReport:
    model_id: str
    split_id: str
    top1: float
    top2: float
    top3: float
    mae_fra: float
    mae_seg: float
    per_video: tuple[PerVideoResult, ...]
    config: dict  # backbone, history window, modality flags, seed echo
    empty_segments: dict = field(default_factory=dict)  # video_id -> [indices]

    def __post_init__(self):
        object.__setattr__(self, "per_video", tuple(self.per_video))
        for name, v in (("top1", self.top1), ("top2", self.top2), ("top3", self.top3)):
            if not 0.0 <= v <= 100.0:
                raise ValidationError(f"{name}={v} outside [0, 100]")
        if not self.top1 <= self.top2 <= self.top3:
            raise ValidationError(
                f"top-k must be monotone: {self.top1}, {self.top2}, {self.top3}"
            )
        if self.mae_fra < 0 or self.mae_seg < 0:
            raise ValidationError("MAE values must be >= 0")

    def to_json(self, path: str | Path) -> None:
        doc = asdict(self)
        doc["per_video"] = [asdict(pv) for pv in self.per_video]
        Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")

    @classmethod
    def from_json(cls, path: str | Path) -> "EvaluationReport":
        doc = json.loads(Path(path).read_text())
        doc["per_video"] = tuple(PerVideoResult(**pv) for pv in doc["per_video"])
        return cls(**doc)


def evaluate_model(
    model: TrainedModel,
    items: list[tuple[FeatureBundle, AnnotationSet]],
    model_id: str = "model",
    split_id: str = "test",
    round_segments: bool = False,
) -> EvaluationReport:
    """Pooled and per-video metrics for one trained model on one split."""
    if not items:
        raise InvalidInputError("no videos to evaluate")
    all_dists = []
    all_labels = []
    frame_errors = []
    segment_errors = []
    per_video = []
    empty_segments = {}
    for bundle, annotation in items:
        dists = model.predict_video(bundle)
        labels = frame_labels(annotation, bundle.segment_indices)
        scores = np.array([d.predicted_score for d in dists], dtype=np.float64)
        seg_values, empty = aggregate_segment_scores(
            scores, bundle.segment_indices, len(annotation.scores),
            round_to_int=round_segments,
        )
        if empty:
            empty_segments[bundle.video_id] = empty
        all_dists.extend(dists)
        all_labels.append(labels)
        frame_errors.append(np.abs(scores - np.asarray(annotation.scores)[bundle.segment_indices]))
        segment_errors.append(np.abs(seg_values - np.asarray(annotation.scores)))
        per_video.append(
            PerVideoResult(
                video_id=bundle.video_id,
                top1=top_k_accuracy(dists, labels, 1),
                mae_seg=mae_segment(seg_values, annotation),
            )
        )
    labels = np.concatenate(all_labels)
    return EvaluationReport(
        model_id=model_id,
        split_id=split_id,
        top1=top_k_accuracy(all_dists, labels, 1),
        top2=top_k_accuracy(all_dists, labels, 2),
        top3=top_k_accuracy(all_dists, labels, 3),
        mae_fra=float(np.concatenate(frame_errors).mean()),
        mae_seg=float(np.concatenate(segment_errors).mean()),
        per_video=tuple(per_video),
        config={
            "backbone": model.config.visual_backend,
            "history_window": model.config.history_window,
            "modalities": "".join(m.value[0] for m in model.config.enabled_modalities()),
            "seed": model.config.seed,
        },
        empty_segments=empty_segments,
    )


_ABLATION_COLUMNS = (
    "backbone", "h", "top1", "top2", "top3", "mae_fra", "mae_seg", "V", "A", "T",
)


@dataclass(frozen=True)
class AblationTable:
    rows: tuple[dict, ...]

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=_ABLATION_COLUMNS)
            writer.writeheader()
            writer.writerows(self.rows)

    def to_text(self) -> str:
        widths = {
            c: max(len(c), *(len(str(r[c])) for r in self.rows)) if self.rows else len(c)
            for c in _ABLATION_COLUMNS
        }
        lines = ["  ".join(c.ljust(widths[c]) for c in _ABLATION_COLUMNS)]
        for r in self.rows:
            lines.append("  ".join(str(r[c]).ljust(widths[c]) for c in _ABLATION_COLUMNS))
        return "\n".join(lines)


def build_ablation_table(reports: list[EvaluationReport]) -> AblationTable:
    """Rows grouped by backbone; duplicate (backbone, h, modalities) keys are
    dropped with a warning."""
    if not reports:
        raise InvalidInputError("need at least one report")
    seen = {}
    for report in reports:
        key = (report.config["backbone"], report.config["history_window"],
               report.config["modalities"])
        if key in seen:
            logger.warning("duplicate ablation row for %s; keeping the first", key)
            continue
        seen[key] = report
    rows = []
    for key in sorted(seen):
        report = seen[key]
        modalities = report.config["modalities"]
        rows.append({
            "backbone": report.config["backbone"],
            "h": report.config["history_window"],
            "top1": round(report.top1, 2),
            "top2": round(report.top2, 2),
            "top3": round(report.top3, 2),
            "mae_fra": round(report.mae_fra, 2),
            "mae_seg": round(report.mae_seg, 2),
            "V": "v" in modalities,
            "A": "a" in modalities,
            "T": "t" in modalities,
        })
    return AblationTable(rows=tuple(rows))
