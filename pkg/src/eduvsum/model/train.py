"""Training loop: categorical cross-entropy, Adam, fixed-seed reproducibility."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch
import torch.nn as nn

from eduvsum.errors import InvalidInputError, TrainingDivergedError
from eduvsum.features.backends import Modality
from eduvsum.features.bundle import FeatureBundle
from eduvsum.model.config import ModelConfig
from eduvsum.model.network import FusionClassifier, TrainedModel
from eduvsum.model.windows import build_windows


@dataclass
class TrainingResult:
    model: TrainedModel
    loss_trace: list[float]


def _resolve_dims(config: ModelConfig, bundle: FeatureBundle) -> ModelConfig:
    dims = {
        Modality.VISUAL: bundle.visual.shape[1],
        Modality.AUDIO: bundle.audio.shape[1],
        Modality.TEXT: bundle.text.shape[1],
    }
    for m in config.enabled_modalities():
        declared = config.modality_dim(m)
        if declared and declared != dims[m]:
            raise InvalidInputError(
                f"config declares {m.value} dim {declared} but bundles carry {dims[m]}"
            )
    return config.with_dims(dims[Modality.VISUAL], dims[Modality.AUDIO], dims[Modality.TEXT])


def _stack_examples(
    bundles_with_labels: list[tuple[FeatureBundle, np.ndarray]],
    config: ModelConfig,
) -> tuple[dict[str, torch.Tensor], torch.Tensor]:
    modalities = config.enabled_modalities()
    per_modality: dict[str, list[np.ndarray]] = {m.value: [] for m in modalities}
    labels: list[int] = []
    for bundle, frame_classes in bundles_with_labels:
        frame_classes = np.asarray(frame_classes)
        if frame_classes.min() < 0 or frame_classes.max() > 9:
            raise InvalidInputError("labels must be class indices in [0, 9]")
        for ex in build_windows(bundle, frame_classes, config.history_window, modalities):
            for m in modalities:
                per_modality[m.value].append(ex.sequences[m])
            labels.append(ex.label)
    tensors = {
        name: torch.from_numpy(np.stack(seqs).astype(np.float32))
        for name, seqs in per_modality.items()
    }
    return tensors, torch.from_numpy(np.array(labels, dtype=np.int64))


def train(
    config: ModelConfig,
    bundles_with_labels: list[tuple[FeatureBundle, np.ndarray]],
) -> TrainingResult:
    """Train for config.epochs; returns the model and the per-epoch loss trace.

    With a fixed seed and a single worker the loss trace is reproducible:
    parameter init, batch order and dropout all derive from config.seed.
    """
    if not bundles_with_labels:
        raise InvalidInputError("need at least one training video")
    config = _resolve_dims(config, bundles_with_labels[0][0])

    torch.manual_seed(config.seed)
    module = FusionClassifier(config)
    optimizer = torch.optim.Adam(module.parameters(), lr=config.learning_rate)
    loss_fn = nn.CrossEntropyLoss()
    inputs, labels = _stack_examples(bundles_with_labels, config)
    n = len(labels)
    shuffle_rng = np.random.default_rng(config.seed)

    loss_trace: list[float] = []
    module.train()
    for epoch in range(config.epochs):
        perm = shuffle_rng.permutation(n)
        epoch_losses: list[float] = []
        for batch_index, begin in enumerate(range(0, n, config.batch_size)):
            idx = torch.from_numpy(perm[begin : begin + config.batch_size])
            batch = {name: t[idx] for name, t in inputs.items()}
            optimizer.zero_grad()
            loss = loss_fn(module(batch), labels[idx])
            loss_value = float(loss.detach())
            if not np.isfinite(loss_value):
                raise TrainingDivergedError(config.learning_rate, epoch, batch_index)
            loss.backward()
            optimizer.step()
            epoch_losses.append(loss_value)
        loss_trace.append(float(np.mean(epoch_losses)))
    module.eval()
    return TrainingResult(model=TrainedModel(config, module), loss_trace=loss_trace)
