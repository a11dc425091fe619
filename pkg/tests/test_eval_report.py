import itertools
import logging

import numpy as np
import pytest

from eduvsum.errors import InvalidInputError, ValidationError
from eduvsum.eval import EvaluationReport, PerVideoResult, build_ablation_table, evaluate_model
from eduvsum.model import ModelConfig, frame_labels, train

from conftest import make_class_bundle


def make_report(backbone="vgg16", h=1, modalities="vat", top1=20.0):
    return EvaluationReport(
        model_id=f"{backbone}-h{h}-{modalities}",
        split_id="test",
        top1=top1, top2=top1 + 10, top3=top1 + 20,
        mae_fra=1.9, mae_seg=1.8,
        per_video=(PerVideoResult("v0", top1, 1.8),),
        config={"backbone": backbone, "history_window": h, "modalities": modalities, "seed": 0},
    )


@pytest.fixture(scope="module")
def trained_setup():
    items = []
    for i in range(2):
        bundle, annotation = make_class_bundle(f"v{i}", duration_s=15.0, seed=i)
        items.append((bundle, annotation))
    train_data = [(b, frame_labels(a, b.segment_indices)) for b, a in items]
    config = ModelConfig(history_window=1, epochs=15, batch_size=32, seed=0)
    result = train(config, train_data)
    return result.model, items


def test_evaluate_model_produces_valid_report(trained_setup):
    model, items = trained_setup
    report = evaluate_model(model, items, model_id="toy", split_id="train")
    assert report.top1 <= report.top2 <= report.top3
    assert report.mae_fra >= 0 and report.mae_seg >= 0
    assert len(report.per_video) == 2
    assert report.config["backbone"] == "vgg16"
    assert report.config["modalities"] == "vat"


def test_report_invariant_under_video_permutation(trained_setup):
    model, items = trained_setup
    a = evaluate_model(model, items)
    b = evaluate_model(model, list(reversed(items)))
    assert a.top1 == b.top1 and a.top2 == b.top2 and a.top3 == b.top3
    assert a.mae_fra == b.mae_fra and a.mae_seg == b.mae_seg


def test_report_json_round_trip(trained_setup, tmp_path):
    model, items = trained_setup
    report = evaluate_model(model, items)
    path = tmp_path / "report.json"
    report.to_json(path)
    assert EvaluationReport.from_json(path) == report


def test_report_validation():
    with pytest.raises(ValidationError):
        make_report(top1=150.0)
    with pytest.raises(ValidationError):
        EvaluationReport("m", "s", top1=50.0, top2=40.0, top3=60.0, mae_fra=1.0,
                         mae_seg=1.0, per_video=(), config={})


def test_ablation_table_24_rows():
    reports = []
    for backbone in ("inceptionv3", "vgg16", "xception", "resnet50"):
        combos = [(h, m) for h, m in itertools.product((1, 2, 3), ("vat", "va"))]
        for h, modalities in combos:
            reports.append(make_report(backbone, h, modalities))
    table = build_ablation_table(reports)
    assert len(table.rows) == 24
    for backbone in ("inceptionv3", "vgg16", "xception", "resnet50"):
        assert sum(1 for r in table.rows if r["backbone"] == backbone) == 6


def test_ablation_single_row(tmp_path):
    table = build_ablation_table([make_report()])
    assert len(table.rows) == 1
    csv_path = tmp_path / "ablation.csv"
    table.to_csv(csv_path)
    content = csv_path.read_text().splitlines()
    assert content[0] == "backbone,h,top1,top2,top3,mae_fra,mae_seg,V,A,T"
    assert len(content) == 2
    assert "backbone" in table.to_text()


def test_ablation_duplicates_warn(caplog):
    with caplog.at_level(logging.WARNING):
        table = build_ablation_table([make_report(), make_report()])
    assert len(table.rows) == 1
    assert any("duplicate" in r.message for r in caplog.records)


def test_ablation_requires_reports():
    with pytest.raises(InvalidInputError):
        build_ablation_table([])
