"""Command-line entry point: ingest -> train -> eval -> predict -> ablate,
plus annotation-store export and the annotation HTTP service.

Config precedence: CLI flag > --config file > built-in default. Exit codes:
0 success, 1 validation, 2 I/O, 3 training divergence.
"""

from __future__ import annotations

import dataclasses
import functools
import json
import logging
import sys
from pathlib import Path

import click

from eduvsum.errors import (
    BackendLoadError,
    ContractError,
    DecodeError,
    InvalidConfigError,
    InvalidInputError,
    ModelLoadError,
    ParseError,
    StratificationError,
    TrainingDivergedError,
    ValidationError,
)
from eduvsum.workflow import (
    CacheMissingError,
    RunConfig,
    run_ablate,
    run_eval,
    run_export,
    run_ingest,
    run_predict,
    run_train,
)

EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_DIVERGED = 3

_VALIDATION_ERRORS = (
    ValidationError, InvalidInputError, InvalidConfigError, ParseError,
    StratificationError, ContractError,
)
_IO_ERRORS = (OSError, DecodeError, ModelLoadError, CacheMissingError, BackendLoadError)

logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except TrainingDivergedError as e:
            click.echo(f"training diverged: {e}", err=True)
            sys.exit(EXIT_DIVERGED)
        except _VALIDATION_ERRORS as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_VALIDATION)
        except _IO_ERRORS as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_IO)

    return wrapper


def run_config_options(fn):
    """Options mirroring every RunConfig field (CLI flag > config file > default)."""
    options = [
        click.option("--config", "config_file", type=click.Path(), default=None,
                     help="JSON file with RunConfig fields."),
        click.option("--dataset", default=None, help="Path to dataset.json manifest."),
        click.option("--cache", "cache_dir", default=None, help="Feature cache directory."),
        click.option("--out", "out_dir", default=None, help="Output directory for artifacts."),
        click.option("--backbone", "visual_backend", default=None,
                     type=click.Choice(["vgg16", "resnet50", "inceptionv3", "xception", "stub"]),
                     help="Visual descriptor backbone."),
        click.option("--audio-backend", default=None,
                     type=click.Choice(["shortterm34", "stub"]), help="Audio feature backend."),
        click.option("--text-backend", default=None,
                     type=click.Choice(["bert-base", "stub"]), help="Text embedding backend."),
        click.option("--stub-dim", default=None, type=int, help="Output width of stub backends."),
        click.option("--stub-seed", default=None, type=int, help="Seed for stub backends."),
        click.option("--modalities", default=None,
                     help="Enabled modalities as comma-separated letters, e.g. v,a,t."),
        click.option("--history", "history_window", default=None, type=int,
                     help="History window h (preceding frames fed to the model)."),
        click.option("--epochs", default=None, type=int, help="Training epochs."),
        click.option("--batch-size", default=None, type=int, help="Training batch size."),
        click.option("--learning-rate", default=None, type=float, help="Adam learning rate."),
        click.option("--dropout", default=None, type=float, help="Dropout on recurrent layers."),
        click.option("--seed", default=None, type=int, help="Seed for split, init and batching."),
        click.option("--jobs", default=None, type=int, help="Parallel workers for ingest."),
        click.option("--sample-rate", default=None, type=float, help="Frame sampling rate (fps)."),
        click.option("--segment-length", default=None, type=float, help="Segment length in seconds."),
        click.option("--train-fraction", default=None, type=float,
                     help="Fraction of videos in the train split."),
        click.option("--audio-rate", default=None, type=int, help="Audio resample rate (Hz)."),
        click.option("--window", default=None, type=float, help="Audio analysis window (s)."),
        click.option("--step", default=None, type=float, help="Audio analysis step (s)."),
        click.option("--round-segments/--no-round-segments", "round_segments", default=None,
                     help="Round per-segment mean scores to integers before MAE."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def build_run_config(config_file: str | None, **flags) -> RunConfig:
    values = {}
    if config_file is not None:
        try:
            doc = json.loads(Path(config_file).read_text())
        except json.JSONDecodeError as e:
            raise ParseError(f"malformed config file: {e.msg}", line=e.lineno) from e
        known = {f.name for f in dataclasses.fields(RunConfig)}
        unknown = set(doc) - known
        if unknown:
            raise InvalidConfigError(f"unknown config file keys: {sorted(unknown)}")
        values.update(doc)
    values.update({k: v for k, v in flags.items() if v is not None})
    return RunConfig(**values)


@click.group()
def main():
    """Importance scoring for 5-second segments of educational videos."""


@main.command()
@run_config_options
@click.option("--save-frames", "frames_dir", default=None,
              help="Also dump sampled frames as PNGs under this directory.")
@handle_errors
def ingest(config_file, frames_dir, **flags):
    """Extract and cache features for every video in the manifest."""
    config = build_run_config(config_file, **flags)
    summary = run_ingest(config)
    if frames_dir:
        from eduvsum.core import load_manifest
        from eduvsum.ingest import iter_sampled_frames, write_frame_cache

        for video in load_manifest(config.dataset).videos:
            if video.video_id in summary.failures:
                continue
            write_frame_cache(
                video.video_id,
                iter_sampled_frames(video.media_path, config.sample_rate, config.segment_length),
                frames_dir,
            )
    click.echo(
        f"ingest: {len(summary.cached)} cache hits, {len(summary.extracted)} extracted, "
        f"{len(summary.failures)} failed"
    )
    for video_id, error in summary.failures.items():
        click.echo(f"  failed {video_id}: {error}", err=True)
    if not summary.ok:
        sys.exit(EXIT_IO)


@main.command()
@run_config_options
@handle_errors
def train(config_file, **flags):
    """Train the fusion model on the train split; write model + loss trace."""
    config = build_run_config(config_file, **flags)
    result = run_train(config)
    click.echo(f"model written to {result['model_path']}")
    click.echo(f"final epoch loss {result['loss_trace'][-1]:.4f}")


@main.command("eval")
@run_config_options
@click.option("--model", "model_path", required=True, type=click.Path(), help="Model archive.")
@click.option("--split", "split_path", default=None, type=click.Path(),
              help="split.json written by train (default: <out>/split.json).")
@handle_errors
def eval_cmd(config_file, model_path, split_path, **flags):
    """Evaluate a trained model on the test split; write report.json."""
    config = build_run_config(config_file, **flags)
    if split_path is None:
        split_path = str(Path(config.out_dir) / "split.json")
    result = run_eval(config, model_path, split_path)
    report = result["report"]
    click.echo(f"report written to {result['report_path']}")
    click.echo(
        f"Top-1 {report.top1:.2f}  Top-2 {report.top2:.2f}  Top-3 {report.top3:.2f}  "
        f"mae_fra {report.mae_fra:.3f}  mae_seg {report.mae_seg:.3f}"
    )


@main.command()
@run_config_options
@click.option("--model", "model_path", required=True, type=click.Path(), help="Model archive.")
@click.option("--video-id", required=True, help="Manifest video id to predict.")
@handle_errors
def predict(config_file, model_path, video_id, **flags):
    """Predict per-segment scores for one video; write JSON + curve plot."""
    config = build_run_config(config_file, **flags)
    result = run_predict(config, model_path, video_id)
    click.echo(f"scores written to {result['scores_path']}")
    if result["plot_path"]:
        click.echo(f"curve plot written to {result['plot_path']}")


@main.command()
@run_config_options
@click.option("--backbones", default="vgg16,resnet50,inceptionv3,xception",
              help="Comma-separated backbone grid.")
@click.option("--histories", default="1,2,3", help="Comma-separated history window grid.")
@click.option("--modality-sets", default="v,a,t;v,a;v,t",
              help="Semicolon-separated modality sets (each comma-separated).")
@handle_errors
def ablate(config_file, backbones, histories, modality_sets, **flags):
    """Sweep backbone x history x modalities; emit ablation.csv."""
    config = build_run_config(config_file, **flags)
    result = run_ablate(
        config,
        backbones=[b.strip() for b in backbones.split(",") if b.strip()],
        histories=[int(h) for h in histories.split(",") if h.strip()],
        modality_sets=[m.strip() for m in modality_sets.split(";") if m.strip()],
    )
    click.echo(f"{len(result['reports'])} runs -> {result['csv_path']}")
    click.echo(result["table"].to_text())


@main.command()
@click.option("--db", "db_path", default=None, type=click.Path(),
              help="Annotation store SQLite file.")
@click.option("--url", "service_url", default=None, help="Running annotation service URL.")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Output dataset.json.")
@click.option("--allow-partial", is_flag=True, help="Include partially annotated videos.")
@click.option("--annotator", "annotator_id", default="default", help="Annotator id to export.")
@handle_errors
def export(db_path, service_url, out_path, allow_partial, annotator_id):
    """Export the annotation store as a dataset.json manifest."""
    result = run_export(out_path, db_path=db_path, service_url=service_url,
                        allow_partial=allow_partial, annotator_id=annotator_id)
    click.echo(f"wrote {result['videos']} videos to {result['out_path']}")
    if not result["videos"]:
        click.echo("warning: store contained no fully annotated videos", err=True)
    for video_id in result["partial"]:
        click.echo(f"warning: {video_id} is only partially annotated", err=True)


@main.command()
@click.option("--db", "db_path", required=True, type=click.Path(), help="SQLite store path.")
@click.option("--port", default=8008, type=int, help="HTTP port.")
@click.option("--host", default="127.0.0.1", help="Bind address.")
@click.option("--media-root", default=".", type=click.Path(), help="Root for relative media paths.")
@click.option("--manifest", "manifest_path", default=None, type=click.Path(),
              help="Initialize the store from this manifest before serving.")
@click.option("--ui-dir", default=None, type=click.Path(), help="Static annotation UI directory.")
@handle_errors
def serve(db_path, port, host, media_root, manifest_path, ui_dir):
    """Run the annotation HTTP service."""
    import uvicorn

    from eduvsum.core import load_manifest
    from eduvsum.service import AnnotationStore, create_app

    store = AnnotationStore(db_path)
    if manifest_path is not None:
        store.init_from_manifest(load_manifest(manifest_path))
    app = create_app(store, media_root=media_root, ui_dir=ui_dir)
    click.echo(f"annotation service on http://{host}:{port} (db={db_path})")
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
