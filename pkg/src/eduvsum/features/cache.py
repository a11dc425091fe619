"""On-disk feature cache.

Layout: `cache/<video_id>/<modality>.<fingerprint>.bin` (raw little-endian
array bytes) with a sidecar JSON header carrying shape, dtype, fingerprint and
a content checksum. The fingerprint covers every setting that affects feature
values, so a changed config can never silently reuse stale features; any
mismatch or corruption is a cache miss and the caller recomputes.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from eduvsum.features.backends import Modality
from eduvsum.features.bundle import FeatureBundle

_TIMELINE = "frames"


def _checksum(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _write_array(path: Path, array: np.ndarray, header_extra: dict) -> None:
    data = np.ascontiguousarray(array).tobytes()
    path.write_bytes(data)
    header = {
        "shape": list(array.shape),
        "dtype": str(array.dtype),
        "checksum": _checksum(data),
        **header_extra,
    }
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(header, indent=2))


def _read_array(path: Path, fingerprint: str) -> np.ndarray | None:
    header_path = path.with_suffix(path.suffix + ".json")
    if not path.is_file() or not header_path.is_file():
        return None
    try:
        header = json.loads(header_path.read_text())
    except json.JSONDecodeError:
        return None
    if header.get("fingerprint") != fingerprint:
        return None
    data = path.read_bytes()
    if _checksum(data) != header.get("checksum"):
        return None
    try:
        return np.frombuffer(data, dtype=np.dtype(header["dtype"])).reshape(header["shape"]).copy()
    except (ValueError, TypeError, KeyError):
        return None


def cache_features(bundle: FeatureBundle, cache_dir: str | Path, fingerprint: str) -> Path:
    video_dir = Path(cache_dir) / bundle.video_id
    video_dir.mkdir(parents=True, exist_ok=True)
    present = sorted(m.value for m in bundle.present_modalities)
    for modality in Modality:
        _write_array(
            video_dir / f"{modality.value}.{fingerprint}.bin",
            bundle.matrix(modality),
            {"video_id": bundle.video_id, "modality": modality.value,
             "fingerprint": fingerprint, "present": present},
        )
    timeline = np.stack(
        [bundle.frame_timestamps.astype(np.float64),
         bundle.segment_indices.astype(np.float64)], axis=1,
    )
    _write_array(
        video_dir / f"{_TIMELINE}.{fingerprint}.bin",
        timeline,
        {"video_id": bundle.video_id, "modality": _TIMELINE, "fingerprint": fingerprint,
         "present": present},
    )
    return video_dir


def load_cached(video_id: str, fingerprint: str, cache_dir: str | Path) -> FeatureBundle | None:
    """Rebuild a bundle from cache; None on any miss, mismatch or corruption."""
    video_dir = Path(cache_dir) / video_id
    matrices = {}
    for modality in Modality:
        arr = _read_array(video_dir / f"{modality.value}.{fingerprint}.bin", fingerprint)
        if arr is None:
            return None
        matrices[modality] = arr
    timeline = _read_array(video_dir / f"{_TIMELINE}.{fingerprint}.bin", fingerprint)
    if timeline is None:
        return None
    header = json.loads(
        (video_dir / f"{_TIMELINE}.{fingerprint}.bin.json").read_text()
    )
    present = frozenset(Modality(v) for v in header.get("present", []))
    return FeatureBundle(
        video_id=video_id,
        visual=matrices[Modality.VISUAL],
        audio=matrices[Modality.AUDIO],
        text=matrices[Modality.TEXT],
        present_modalities=present,
        frame_timestamps=timeline[:, 0],
        segment_indices=timeline[:, 1].astype(np.int64),
    )
