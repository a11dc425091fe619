import dataclasses
import hashlib
from pathlib import Path

import pytest

from eduvsum.workflow import RunConfig, run_ingest

from conftest import make_toy_dataset

STUB = dict(visual_backend="stub", text_backend="stub", stub_dim=8, sample_rate=3.0)


def cache_digest(cache_dir: Path) -> dict[str, str]:
    out = {}
    for path in sorted(cache_dir.rglob("*.bin")):
        out[str(path.relative_to(cache_dir))] = hashlib.sha256(path.read_bytes()).hexdigest()
    return out


def test_ingest_independent_of_worker_count(tmp_path):
    dataset = make_toy_dataset(tmp_path / "data", n_videos=4, duration_s=10.0)
    base = RunConfig(dataset=str(dataset), **STUB)
    single = dataclasses.replace(base, cache_dir=str(tmp_path / "cache1"), jobs=1)
    parallel = dataclasses.replace(base, cache_dir=str(tmp_path / "cache4"), jobs=4)
    assert run_ingest(single).ok
    assert run_ingest(parallel).ok
    digest1 = cache_digest(tmp_path / "cache1")
    digest4 = cache_digest(tmp_path / "cache4")
    assert digest1 == digest4
    assert len(digest1) == 4 * 4  # 4 videos x (3 modalities + timeline)


def test_modality_flag_parsing():
    assert RunConfig(modalities="v,a,t").modality_flags() == (True, True, True)
    assert RunConfig(modalities="v").modality_flags() == (True, False, False)
    assert RunConfig(modalities="a,t").modality_flags() == (False, True, True)
    from eduvsum.errors import ValidationError

    with pytest.raises(ValidationError):
        RunConfig(modalities="x").modality_flags()
    with pytest.raises(ValidationError):
        RunConfig(modalities="").modality_flags()


def test_model_id_reflects_settings():
    config = RunConfig(visual_backend="stub", history_window=3, modalities="v,t")
    assert config.model_id() == "stub-h3-vt"
