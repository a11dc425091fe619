"""Model archive: one zip holding weights, embedded config and a checksum."""

from __future__ import annotations

import dataclasses
import hashlib
import io
import json
import zipfile
from pathlib import Path

import torch

from eduvsum.errors import ModelLoadError
from eduvsum.model.config import ModelConfig
from eduvsum.model.network import FusionClassifier, TrainedModel

FORMAT_VERSION = 1


def save_model(model: TrainedModel, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    buffer = io.BytesIO()
    torch.save(model.module.state_dict(), buffer)
    weights = buffer.getvalue()
    meta = {
        "format_version": FORMAT_VERSION,
        "config": dataclasses.asdict(model.config),
        "weights_sha256": hashlib.sha256(weights).hexdigest(),
    }
    with zipfile.ZipFile(path, "w", compression=zipfile.ZIP_DEFLATED) as archive:
        archive.writestr("meta.json", json.dumps(meta, indent=2))
        archive.writestr("weights.bin", weights)


def load_model(path: str | Path) -> TrainedModel:
    path = Path(path)
    try:
        with zipfile.ZipFile(path) as archive:
            meta = json.loads(archive.read("meta.json"))
            weights = archive.read("weights.bin")
    except (zipfile.BadZipFile, KeyError, OSError, json.JSONDecodeError) as e:
        raise ModelLoadError(f"cannot read model archive {path}: {e}") from e
    if meta.get("format_version") != FORMAT_VERSION:
        raise ModelLoadError(
            f"unsupported model format version {meta.get('format_version')!r}"
        )
    if hashlib.sha256(weights).hexdigest() != meta.get("weights_sha256"):
        raise ModelLoadError(f"weights checksum mismatch in {path}; file is corrupt")
    config_dict = meta["config"]
    config_dict["dense_sizes"] = tuple(config_dict["dense_sizes"])
    config = ModelConfig(**config_dict)
    module = FusionClassifier(config)
    try:
        state = torch.load(io.BytesIO(weights), weights_only=True)
        module.load_state_dict(state, strict=True)
    except Exception as e:
        raise ModelLoadError(f"weights incompatible with embedded config: {e}") from e
    return TrainedModel(config, module)
