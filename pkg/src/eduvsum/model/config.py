"""Model configuration: architecture sizes, modality flags, training settings."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from eduvsum.errors import InvalidConfigError
from eduvsum.features.backends import Modality

# reference architecture sizes; overriding them requires allow_custom_sizes
RNN_UNITS = 64
DENSE_SIZES = (32, 16)
CLASSES = 10
DROPOUT = 0.2
EPOCHS = 50


@dataclass(frozen=True)
class ModelConfig:
    visual_backend: str = "vgg16"
    use_visual: bool = True
    use_audio: bool = True
    use_text: bool = True
    history_window: int = 2
    rnn_units: int = RNN_UNITS
    dense_sizes: tuple[int, int] = DENSE_SIZES
    classes: int = CLASSES
    dropout: float = DROPOUT
    epochs: int = EPOCHS
    optimizer: str = "adam"
    learning_rate: float = 1e-3
    batch_size: int = 64
    seed: int = 0
    # feature widths per modality; 0 means "fill in from the data at train time"
    visual_dim: int = 0
    audio_dim: int = 0
    text_dim: int = 0
    # escape hatch for non-reference layer sizes (tiny configs in tests)
    allow_custom_sizes: bool = False

    def __post_init__(self):
        if not (self.use_visual or self.use_audio or self.use_text):
            raise InvalidConfigError("at least one modality must be enabled")
        if self.history_window < 0:
            raise InvalidConfigError(f"history_window must be >= 0, got {self.history_window}")
        if not 0.0 <= self.dropout < 1.0:
            raise InvalidConfigError(f"dropout must be in [0, 1), got {self.dropout}")
        if self.epochs < 1 or self.batch_size < 1:
            raise InvalidConfigError("epochs and batch_size must be >= 1")
        if self.learning_rate <= 0:
            raise InvalidConfigError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.optimizer != "adam":
            raise InvalidConfigError(f"unsupported optimizer {self.optimizer!r}")
        if not self.allow_custom_sizes:
            if (self.rnn_units, tuple(self.dense_sizes), self.classes) != (
                RNN_UNITS, DENSE_SIZES, CLASSES,
            ):
                raise InvalidConfigError(
                    "layer sizes are fixed at 64 recurrent units, dense (32, 16) and 10 "
                    "classes; pass allow_custom_sizes=True to override"
                )
        object.__setattr__(self, "dense_sizes", tuple(self.dense_sizes))

    def enabled_modalities(self) -> tuple[Modality, ...]:
        out = []
        if self.use_visual:
            out.append(Modality.VISUAL)
        if self.use_audio:
            out.append(Modality.AUDIO)
        if self.use_text:
            out.append(Modality.TEXT)
        return tuple(out)

    def modality_dim(self, modality: Modality) -> int:
        return {
            Modality.VISUAL: self.visual_dim,
            Modality.AUDIO: self.audio_dim,
            Modality.TEXT: self.text_dim,
        }[modality]

    def with_dims(self, visual: int, audio: int, text: int) -> "ModelConfig":
        return replace(self, visual_dim=visual, audio_dim=audio, text_dim=text)
