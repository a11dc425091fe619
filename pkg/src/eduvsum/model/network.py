"""Multimodal fusion classifier.

Per enabled modality, a bidirectional recurrent layer (64 units per direction)
encodes the (h+1)-step feature sequence into a (h+1) x 128 sequence. The
per-modality sequences are concatenated feature-wise at each time step and fed
to a shared bidirectional layer whose final state (forward last step joined
with backward first step) is reduced to one 128-d vector, then dense 32, dense
16, and a 10-way softmax over importance scores.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import torch
import torch.nn as nn

from eduvsum.errors import ContractError
from eduvsum.features.backends import Modality
from eduvsum.features.bundle import FeatureBundle
from eduvsum.model.config import ModelConfig
from eduvsum.model.windows import build_windows


@dataclass(frozen=True)
class PredictionDistribution:
    probs: np.ndarray = field(repr=False)
    predicted_score: int

    def __post_init__(self):
        if self.probs.shape != (10,):
            raise ContractError(f"expected 10 probabilities, got shape {self.probs.shape}")
        if abs(float(self.probs.sum()) - 1.0) > 1e-5 or (self.probs < 0).any():
            raise ContractError("probabilities must be non-negative and sum to 1 (±1e-5)")
        # ties break toward the lower class
        if self.predicted_score != int(np.argmax(self.probs)) + 1:
            raise ContractError("predicted_score must be argmax(probs) + 1")

    @classmethod
    def from_probs(cls, probs: np.ndarray) -> "PredictionDistribution":
        probs = np.asarray(probs, dtype=np.float64)
        return cls(probs=probs, predicted_score=int(np.argmax(probs)) + 1)


class FusionClassifier(nn.Module):
    def __init__(self, config: ModelConfig):
        super().__init__()
        self.config = config
        self.modalities = config.enabled_modalities()
        units = config.rnn_units
        self.encoders = nn.ModuleDict()
        for m in self.modalities:
            dim = config.modality_dim(m)
            if dim <= 0:
                raise ContractError(f"modality {m.value} enabled but its feature dim is unset")
            self.encoders[m.value] = nn.LSTM(dim, units, batch_first=True, bidirectional=True)
        self.fused_width = 2 * units * len(self.modalities)
        self.shared = nn.LSTM(self.fused_width, units, batch_first=True, bidirectional=True)
        self.dropout = nn.Dropout(config.dropout)
        d1, d2 = config.dense_sizes
        self.dense1 = nn.Linear(2 * units, d1)
        self.dense2 = nn.Linear(d1, d2)
        self.head = nn.Linear(d2, config.classes)
        self.relu = nn.ReLU()

    def forward(self, inputs: dict[str, torch.Tensor]) -> torch.Tensor:
        """Batched logits from {modality name: (B, h+1, d_m)} tensors."""
        expected = [m.value for m in self.modalities]
        if sorted(inputs) != sorted(expected):
            raise ContractError(
                f"inputs must cover exactly the enabled modalities {expected}, got {sorted(inputs)}"
            )
        steps = self.config.history_window + 1
        encoded = []
        for m in self.modalities:
            x = inputs[m.value]
            if x.ndim != 3 or x.shape[1] != steps or x.shape[2] != self.config.modality_dim(m):
                raise ContractError(
                    f"{m.value} input must be (B, {steps}, {self.config.modality_dim(m)}), "
                    f"got {tuple(x.shape)}"
                )
            seq, _ = self.encoders[m.value](x)
            encoded.append(self.dropout(seq))
        fused = torch.cat(encoded, dim=2)  # (B, h+1, 128 * M)
        _, (h_n, _) = self.shared(fused)
        # forward direction's last state joined with backward direction's state
        # at the first time step
        state = torch.cat([h_n[0], h_n[1]], dim=1)
        state = self.dropout(state)
        x = self.relu(self.dense1(state))
        x = self.relu(self.dense2(x))
        return self.head(x)


def expected_parameter_count(config: ModelConfig) -> int:
    """Closed-form trainable parameter count for a config with dims filled in."""

    def bilstm(input_dim: int, units: int) -> int:
        per_direction = 4 * (units * input_dim + units * units + 2 * units)
        return 2 * per_direction

    units = config.rnn_units
    total = sum(bilstm(config.modality_dim(m), units) for m in config.enabled_modalities())
    total += bilstm(2 * units * len(config.enabled_modalities()), units)
    d1, d2 = config.dense_sizes
    total += (2 * units) * d1 + d1
    total += d1 * d2 + d2
    total += d2 * config.classes + config.classes
    return total


class TrainedModel:
    """Inference wrapper: read-only module plus its config."""

    def __init__(self, config: ModelConfig, module: FusionClassifier):
        self.config = config
        self.module = module
        self.module.eval()

    def _to_tensors(self, arrays: dict[Modality, np.ndarray]) -> dict[str, torch.Tensor]:
        return {
            m.value: torch.from_numpy(np.ascontiguousarray(a[None], dtype=np.float32))
            for m, a in arrays.items()
        }

    def forward_one(self, arrays: dict[Modality, np.ndarray]) -> PredictionDistribution:
        """Distribution for a single windowed example (inference mode)."""
        with torch.no_grad():
            logits = self.module(self._to_tensors(arrays))
            probs = torch.softmax(logits, dim=1)[0].numpy()
        return PredictionDistribution.from_probs(probs)

    def predict_video(self, bundle: FeatureBundle, batch_size: int = 256) -> list[PredictionDistribution]:
        """Per-frame distributions for a whole video, in frame order."""
        enabled = set(self.config.enabled_modalities())
        missing = enabled - bundle.present_modalities
        if missing:
            raise ContractError(
                f"bundle {bundle.video_id!r} lacks enabled modalities: "
                f"{sorted(m.value for m in missing)}"
            )
        h = self.config.history_window
        examples = build_windows(bundle, np.zeros(bundle.frame_count, np.int64), h,
                                 modalities=self.config.enabled_modalities())
        out: list[PredictionDistribution] = []
        with torch.no_grad():
            for begin in range(0, len(examples), batch_size):
                chunk = examples[begin : begin + batch_size]
                batch = {
                    m.value: torch.from_numpy(
                        np.stack([ex.sequences[m] for ex in chunk]).astype(np.float32)
                    )
                    for m in self.config.enabled_modalities()
                }
                probs = torch.softmax(self.module(batch), dim=1).numpy()
                out.extend(PredictionDistribution.from_probs(p) for p in probs)
        return out

    def predicted_scores(self, bundle: FeatureBundle) -> np.ndarray:
        return np.array([d.predicted_score for d in self.predict_video(bundle)], dtype=np.int64)

    def parameter_count(self) -> int:
        return sum(p.numel() for p in self.module.parameters() if p.requires_grad)
