"""Fusion classifier over history windows, plus training and persistence."""

from eduvsum.model.config import ModelConfig
from eduvsum.model.io import load_model, save_model
from eduvsum.model.network import (
    FusionClassifier,
    PredictionDistribution,
    TrainedModel,
    expected_parameter_count,
)
from eduvsum.model.train import TrainingResult, train
from eduvsum.model.windows import WindowedExample, build_windows, frame_labels, window_indices

__all__ = [
    "ModelConfig",
    "load_model",
    "save_model",
    "FusionClassifier",
    "PredictionDistribution",
    "TrainedModel",
    "expected_parameter_count",
    "TrainingResult",
    "train",
    "WindowedExample",
    "build_windows",
    "frame_labels",
    "window_indices",
]
