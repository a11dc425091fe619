"""Per-frame visual embeddings from an ImageNet-pretrained backbone (or stub)."""

from __future__ import annotations

from typing import Iterable

import cv2
import numpy as np

from eduvsum.errors import InvalidInputError
from eduvsum.features.backends import STUB, BackendSpec, Modality, load_visual_encoder, stub_vector
from eduvsum.ingest.video import SampledFrame

_IMAGENET_MEAN = np.array([0.485, 0.456, 0.406], np.float32)
_IMAGENET_STD = np.array([0.229, 0.224, 0.225], np.float32)

_BATCH = 16


def _check_rgb(image: np.ndarray, index: int) -> None:
    if image.ndim != 3 or image.shape[2] != 3 or image.dtype != np.uint8:
        raise InvalidInputError(
            f"frame {index}: expected an 8-bit RGB raster (H x W x 3), got "
            f"shape {image.shape} dtype {image.dtype}"
        )


def _preprocess(image: np.ndarray, input_size: int) -> np.ndarray:
    resized = cv2.resize(image, (input_size, input_size), interpolation=cv2.INTER_AREA)
    scaled = resized.astype(np.float32) / 255.0
    normalized = (scaled - _IMAGENET_MEAN) / _IMAGENET_STD
    return normalized.transpose(2, 0, 1)


def extract_visual(frames: Iterable[SampledFrame], backend: BackendSpec) -> np.ndarray:
    """Return the T x d_V embedding matrix, row t for frame t.

    Frames are consumed in streaming order (one decode batch at a time), so a
    generator over a long video never buffers every raster at once.
    """
    if backend.modality is not Modality.VISUAL:
        raise InvalidInputError(f"expected a VISUAL backend, got {backend.modality.value}")

    if backend.name == STUB:
        rows = []
        for i, f in enumerate(frames):
            _check_rgb(f.image, i)
            rows.append(stub_vector(f.image.tobytes(), backend.seed, backend.output_dim))
        if not rows:
            raise InvalidInputError("frames must be non-empty")
        return np.stack(rows)

    import torch

    encoder, input_size = load_visual_encoder(backend)
    rows: list[np.ndarray] = []
    pending: list[np.ndarray] = []
    count = 0

    def flush():
        if not pending:
            return
        with torch.no_grad():
            out = encoder(torch.from_numpy(np.stack(pending)))
        rows.append(out.numpy().astype(np.float32))
        pending.clear()

    for i, f in enumerate(frames):
        _check_rgb(f.image, i)
        pending.append(_preprocess(f.image, input_size))
        count += 1
        if len(pending) == _BATCH:
            flush()
    flush()
    if count == 0:
        raise InvalidInputError("frames must be non-empty")
    matrix = np.vstack(rows)
    if matrix.shape != (count, backend.output_dim):
        raise InvalidInputError(
            f"visual backend emitted shape {matrix.shape}, expected "
            f"({count}, {backend.output_dim})"
        )
    return matrix
