"""Feature-extractor backends per modality.

Real backends wrap pretrained encoders (loaded lazily; a clean BackendLoadError
is raised when the package or its weights are unavailable). Stub backends are
pure functions of (content bytes, seed) with a configurable output dimension,
so the whole pipeline can run deterministically without any model weights.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum

import numpy as np

from eduvsum.errors import BackendLoadError, InvalidConfigError


class Modality(str, Enum):
    VISUAL = "visual"
    AUDIO = "audio"
    TEXT = "text"


STUB = "stub"

# Output width of each named backend; the visual dims follow from the canonical
# penultimate layer of each ImageNet architecture.
BACKEND_DIMS: dict[tuple[Modality, str], int] = {
    (Modality.VISUAL, "vgg16"): 4096,
    (Modality.VISUAL, "resnet50"): 2048,
    (Modality.VISUAL, "inceptionv3"): 2048,
    (Modality.VISUAL, "xception"): 2048,
    (Modality.TEXT, "bert-base"): 768,
    (Modality.AUDIO, "shortterm34"): 68,
}

VISUAL_BACKENDS = ("vgg16", "resnet50", "inceptionv3", "xception", STUB)
TEXT_BACKENDS = ("bert-base", STUB)
AUDIO_BACKENDS = ("shortterm34", STUB)


@dataclass(frozen=True)
class BackendSpec:
    modality: Modality
    name: str
    output_dim: int
    seed: int = 0

    def __post_init__(self):
        allowed = {
            Modality.VISUAL: VISUAL_BACKENDS,
            Modality.TEXT: TEXT_BACKENDS,
            Modality.AUDIO: AUDIO_BACKENDS,
        }[self.modality]
        if self.name not in allowed:
            raise InvalidConfigError(
                f"unknown {self.modality.value} backend {self.name!r}; choose from {allowed}"
            )
        if self.output_dim <= 0:
            raise InvalidConfigError(f"output_dim must be > 0, got {self.output_dim}")
        if self.name != STUB and self.output_dim != BACKEND_DIMS[(self.modality, self.name)]:
            raise InvalidConfigError(
                f"backend {self.name!r} has fixed output_dim "
                f"{BACKEND_DIMS[(self.modality, self.name)]}, got {self.output_dim}"
            )

    @classmethod
    def named(cls, modality: Modality, name: str, stub_dim: int = 16, seed: int = 0) -> "BackendSpec":
        if name == STUB:
            return cls(modality, STUB, stub_dim, seed)
        dim = BACKEND_DIMS.get((modality, name))
        if dim is None:
            raise InvalidConfigError(f"unknown {modality.value} backend {name!r}")
        return cls(modality, name, dim, seed)


def stub_vector(content: bytes, seed: int, dim: int) -> np.ndarray:
    """Deterministic pseudo-embedding: seeded hash of a content checksum."""
    digest = hashlib.blake2b(content, digest_size=8).digest()
    checksum = int.from_bytes(digest, "big")
    rng = np.random.default_rng((checksum, seed))
    return rng.standard_normal(dim).astype(np.float32)


def _load_torchvision_encoder(name: str):
    try:
        import torch
        import torchvision.models as tvm
    except ImportError as e:
        raise BackendLoadError(f"torchvision is required for backend {name!r}: {e}") from e
    try:
        if name == "vgg16":
            net = tvm.vgg16(weights=tvm.VGG16_Weights.IMAGENET1K_V1)
            net.classifier = torch.nn.Sequential(*list(net.classifier.children())[:-1])
            input_size = 224
        elif name == "resnet50":
            net = tvm.resnet50(weights=tvm.ResNet50_Weights.IMAGENET1K_V1)
            net.fc = torch.nn.Identity()
            input_size = 224
        elif name == "inceptionv3":
            net = tvm.inception_v3(weights=tvm.Inception_V3_Weights.IMAGENET1K_V1)
            net.fc = torch.nn.Identity()
            net.aux_logits = False
            input_size = 299
        else:
            raise BackendLoadError(f"no torchvision loader for {name!r}")
    except BackendLoadError:
        raise
    except Exception as e:
        raise BackendLoadError(f"cannot load pretrained weights for {name!r}: {e}") from e
    net.eval()
    return net, input_size


def _load_xception():
    try:
        import timm
    except ImportError as e:
        raise BackendLoadError(f"timm is required for the xception backend: {e}") from e
    try:
        net = timm.create_model("xception", pretrained=True, num_classes=0)
    except Exception as e:
        raise BackendLoadError(f"cannot load pretrained xception weights: {e}") from e
    net.eval()
    return net, 299


def load_visual_encoder(spec: BackendSpec):
    """Return (torch module emitting the penultimate embedding, input size)."""
    if spec.name == "xception":
        return _load_xception()
    return _load_torchvision_encoder(spec.name)


def load_text_encoder(spec: BackendSpec):
    """Return (tokenizer, model) for the contextual word-embedding backend."""
    try:
        from transformers import AutoModel, AutoTokenizer
    except ImportError as e:
        raise BackendLoadError(f"transformers is required for backend {spec.name!r}: {e}") from e
    try:
        tokenizer = AutoTokenizer.from_pretrained("bert-base-uncased")
        model = AutoModel.from_pretrained("bert-base-uncased")
    except Exception as e:
        raise BackendLoadError(f"cannot load pretrained weights for {spec.name!r}: {e}") from e
    model.eval()
    return tokenizer, model
