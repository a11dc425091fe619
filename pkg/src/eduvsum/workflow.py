"""End-to-end pipeline steps behind the CLI: ingest, train, eval, predict, ablate.

Every artifact embeds the effective configuration, and nothing here writes
wall-clock state, so a fixed seed and a single worker reproduce artifacts
byte for byte.
"""

from __future__ import annotations

import dataclasses
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from eduvsum.core import (
    DatasetManifest,
    SplitSpec,
    load_manifest,
    manifest_from_dict,
    save_manifest,
    split_dataset,
)
from eduvsum.errors import EduvsumError, ValidationError
from eduvsum.eval import (
    aggregate_segment_scores,
    build_ablation_table,
    evaluate_model,
    plot_prediction_curves,
)
from eduvsum.features import FeatureConfig, cache_features, extract_bundle, load_cached
from eduvsum.model import ModelConfig, frame_labels, load_model, save_model, train
from eduvsum.service.store import AnnotationStore

logger = logging.getLogger(__name__)


class CacheMissingError(EduvsumError):
    """Features for a video are not in the cache; `eduvsum ingest` must run first."""


@dataclass(frozen=True)
class RunConfig:
    """Pipeline settings; the defaults reproduce the reference experimental
    setup (3 fps sampling, 5 s segments, 64/32/16/10 layers, dropout 0.2,
    50 epochs of Adam)."""

    dataset: str = "dataset.json"
    cache_dir: str = "cache"
    out_dir: str = "out"
    visual_backend: str = "vgg16"
    audio_backend: str = "shortterm34"
    text_backend: str = "bert-base"
    stub_dim: int = 16
    stub_seed: int = 0
    modalities: str = "v,a,t"
    history_window: int = 2
    epochs: int = 50
    batch_size: int = 64
    learning_rate: float = 1e-3
    dropout: float = 0.2
    seed: int = 0
    jobs: int = 1
    sample_rate: float = 3.0
    segment_length: float = 5.0
    train_fraction: float = 0.847
    audio_rate: int = 16_000
    window: float = 0.05
    step: float = 0.025
    round_segments: bool = False

    def modality_flags(self) -> tuple[bool, bool, bool]:
        parts = {p.strip() for p in self.modalities.replace(";", ",").split(",") if p.strip()}
        unknown = parts - {"v", "a", "t"}
        if unknown:
            raise ValidationError(f"unknown modality letters {sorted(unknown)}; use v, a, t")
        if not parts:
            raise ValidationError("at least one modality must be listed")
        return "v" in parts, "a" in parts, "t" in parts

    def feature_config(self) -> FeatureConfig:
        return FeatureConfig(
            visual_backend=self.visual_backend,
            audio_backend=self.audio_backend,
            text_backend=self.text_backend,
            stub_visual_dim=self.stub_dim,
            stub_audio_dim=self.stub_dim,
            stub_text_dim=self.stub_dim,
            stub_seed=self.stub_seed,
            sample_rate=self.sample_rate,
            segment_seconds=self.segment_length,
            audio_rate=self.audio_rate,
            window=self.window,
            step=self.step,
        )

    def model_config(self) -> ModelConfig:
        use_v, use_a, use_t = self.modality_flags()
        return ModelConfig(
            visual_backend=self.visual_backend,
            use_visual=use_v,
            use_audio=use_a,
            use_text=use_t,
            history_window=self.history_window,
            dropout=self.dropout,
            epochs=self.epochs,
            learning_rate=self.learning_rate,
            batch_size=self.batch_size,
            seed=self.seed,
        )

    def model_id(self) -> str:
        use_v, use_a, use_t = self.modality_flags()
        letters = "".join(l for l, on in zip("vat", (use_v, use_a, use_t)) if on)
        return f"{self.visual_backend}-h{self.history_window}-{letters}"

    def echo(self) -> dict:
        doc = dataclasses.asdict(self)
        doc["feature_fingerprint"] = self.feature_config().fingerprint()
        return doc


def write_effective_config(config: RunConfig, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "effective_config.json").write_text(
        json.dumps(config.echo(), indent=2, sort_keys=True) + "\n"
    )


# --------------------------------------------------------------------- ingest
@dataclass
class IngestSummary:
    cached: list[str] = field(default_factory=list)
    extracted: list[str] = field(default_factory=list)
    failures: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


def run_ingest(config: RunConfig) -> IngestSummary:
    """Extract and cache features for every manifest video; idempotent."""
    manifest = load_manifest(config.dataset)
    feature_config = config.feature_config()
    fingerprint = feature_config.fingerprint()
    summary = IngestSummary()

    def process(video):
        if load_cached(video.video_id, fingerprint, config.cache_dir) is not None:
            return ("cached", video.video_id, None)
        try:
            bundle = extract_bundle(video, feature_config)
            cache_features(bundle, config.cache_dir, fingerprint)
            return ("extracted", video.video_id, None)
        except Exception as e:  # per-video failures logged, not fatal
            return ("failed", video.video_id, f"{type(e).__name__}: {e}")

    with ThreadPoolExecutor(max_workers=max(1, config.jobs)) as pool:
        for status, video_id, error in pool.map(process, manifest.videos):
            if status == "cached":
                summary.cached.append(video_id)
            elif status == "extracted":
                summary.extracted.append(video_id)
            else:
                summary.failures[video_id] = error
                logger.error("ingest failed for %s: %s", video_id, error)
    return summary


# ---------------------------------------------------------------------- train
def _load_bundle_or_raise(video_id: str, fingerprint: str, cache_dir: str):
    bundle = load_cached(video_id, fingerprint, cache_dir)
    if bundle is None:
        raise CacheMissingError(
            f"no cached features for video {video_id!r} (fingerprint {fingerprint}); "
            f"run `eduvsum ingest` with the same feature settings first"
        )
    return bundle


def _labeled_bundles(manifest: DatasetManifest, video_ids, config: RunConfig):
    fingerprint = config.feature_config().fingerprint()
    out = []
    for video_id in video_ids:
        annotation = manifest.annotation_for(video_id)
        if annotation is None:
            raise ValidationError(f"video {video_id!r} has no annotation; cannot use for training/eval")
        bundle = _load_bundle_or_raise(video_id, fingerprint, config.cache_dir)
        out.append((bundle, annotation))
    return out


def save_split(split: SplitSpec, path: Path) -> None:
    path.write_text(json.dumps({
        "train_ids": list(split.train_ids),
        "test_ids": list(split.test_ids),
        "seed": split.seed,
    }, indent=2) + "\n")


def load_split(path: str | Path) -> SplitSpec:
    doc = json.loads(Path(path).read_text())
    return SplitSpec(tuple(doc["train_ids"]), tuple(doc["test_ids"]), doc["seed"])


def run_train(config: RunConfig) -> dict:
    """Split, train on the train side, write model + loss trace + split files."""
    manifest = load_manifest(config.dataset)
    out_dir = Path(config.out_dir)
    write_effective_config(config, out_dir)
    split = split_dataset(manifest, config.train_fraction, config.seed)
    save_split(split, out_dir / "split.json")

    items = _labeled_bundles(manifest, split.train_ids, config)
    train_data = [(b, frame_labels(a, b.segment_indices)) for b, a in items]
    result = train(config.model_config(), train_data)

    model_path = out_dir / "model.zip"
    save_model(result.model, model_path)
    (out_dir / "loss_trace.json").write_text(json.dumps({
        "model_id": config.model_id(),
        "config": config.echo(),
        "loss_trace": result.loss_trace,
    }, indent=2, sort_keys=True) + "\n")
    return {
        "model_path": str(model_path),
        "split_path": str(out_dir / "split.json"),
        "loss_trace": result.loss_trace,
    }


# ----------------------------------------------------------------------- eval
def run_eval(config: RunConfig, model_path: str | Path, split_path: str | Path,
             report_name: str = "report.json") -> dict:
    manifest = load_manifest(config.dataset)
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model = load_model(model_path)
    split = load_split(split_path)
    items = _labeled_bundles(manifest, split.test_ids, config)
    report = evaluate_model(model, items, model_id=config.model_id(),
                            split_id=f"seed{split.seed}",
                            round_segments=config.round_segments)
    report_path = out_dir / report_name
    report.to_json(report_path)
    return {"report_path": str(report_path), "report": report}


# -------------------------------------------------------------------- predict
def run_predict(config: RunConfig, model_path: str | Path, video_id: str) -> dict:
    manifest = load_manifest(config.dataset)
    try:
        video = manifest.video(video_id)
    except EduvsumError:
        raise ValidationError(f"video {video_id!r} not found in {config.dataset}") from None
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model = load_model(model_path)
    fingerprint = config.feature_config().fingerprint()
    bundle = _load_bundle_or_raise(video.video_id, fingerprint, config.cache_dir)

    distributions = model.predict_video(bundle)
    frame_scores = [d.predicted_score for d in distributions]
    annotation = manifest.annotation_for(video_id)
    n_segments = (len(annotation.scores) if annotation is not None
                  else int(bundle.segment_indices.max()) + 1)
    segment_values, empty = aggregate_segment_scores(
        np.array(frame_scores, dtype=np.float64), bundle.segment_indices, n_segments,
        round_to_int=config.round_segments,
    )
    doc = {
        "video_id": video_id,
        "model_id": config.model_id(),
        "config": config.echo(),
        "frame_scores": frame_scores,
        "segment_scores": [float(v) for v in segment_values],
        "empty_segments": empty,
    }
    scores_path = out_dir / f"predictions_{video_id}.json"
    scores_path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")

    plot_path = None
    if annotation is not None:
        from eduvsum.eval import top_k_accuracy

        labels = frame_labels(annotation, bundle.segment_indices)
        top1 = top_k_accuracy(distributions, labels, 1)
        plot_path = plot_prediction_curves(
            annotation, segment_values, out_dir / "curves" / f"{video_id}.png",
            caption=f"Top-1 {top1:.1f}%",
        )
    return {"scores_path": str(scores_path),
            "plot_path": str(plot_path) if plot_path else None}


# --------------------------------------------------------------------- ablate
def run_ablate(config: RunConfig, backbones: list[str], histories: list[int],
               modality_sets: list[str]) -> dict:
    """Train and evaluate the whole grid; emit ablation.csv plus one report per run."""
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    reports = []
    for backbone in backbones:
        for h in histories:
            for modalities in modality_sets:
                run = dataclasses.replace(
                    config,
                    visual_backend=backbone,
                    history_window=h,
                    modalities=modalities,
                    out_dir=str(out_dir / "runs" / f"{backbone}-h{h}-{modalities.replace(',', '')}"),
                )
                run_train(run)
                result = run_eval(run, Path(run.out_dir) / "model.zip",
                                  Path(run.out_dir) / "split.json")
                reports.append(result["report"])
    table = build_ablation_table(reports)
    csv_path = out_dir / "ablation.csv"
    table.to_csv(csv_path)
    (out_dir / "ablation.txt").write_text(table.to_text() + "\n")
    return {"csv_path": str(csv_path), "reports": reports, "table": table}


# --------------------------------------------------------------------- export
def run_export(out_path: str | Path, db_path: str | None = None,
               service_url: str | None = None, allow_partial: bool = False,
               annotator_id: str = "default") -> dict:
    """Build dataset.json from an annotation store (local DB or running service)."""
    if (db_path is None) == (service_url is None):
        raise ValidationError("exactly one of db_path or service_url is required")
    if db_path is not None:
        store = AnnotationStore(db_path)
        manifest, partial_ids = store.export_manifest(allow_partial, annotator_id)
    else:
        import urllib.parse
        import urllib.request

        query = urllib.parse.urlencode(
            {"partial": str(allow_partial).lower(), "annotator_id": annotator_id}
        )
        with urllib.request.urlopen(f"{service_url.rstrip('/')}/export?{query}") as resp:
            doc = json.loads(resp.read().decode())
        partial_ids = doc.pop("partial_videos", [])
        manifest = manifest_from_dict(doc)
    save_manifest(manifest, out_path)
    for video_id in partial_ids:
        logger.warning("video %s is only partially annotated", video_id)
    return {"out_path": str(out_path), "videos": len(manifest.videos),
            "partial": partial_ids}
