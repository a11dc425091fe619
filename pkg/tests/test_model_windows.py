import numpy as np
import pytest

from eduvsum.core import AnnotationSet
from eduvsum.errors import InvalidInputError
from eduvsum.features import Modality
from eduvsum.model import build_windows, frame_labels, window_indices

from conftest import make_class_bundle


@pytest.fixture
def bundle():
    # 5-frame bundle with recognizable per-frame feature values
    from eduvsum.features import FeatureBundle

    t = 5
    base = np.arange(t, dtype=np.float32)[:, None]
    return FeatureBundle(
        video_id="w",
        visual=base.repeat(3, axis=1),
        audio=base.repeat(68, axis=1),
        text=base.repeat(4, axis=1),
        present_modalities=frozenset(Modality),
        frame_timestamps=np.arange(t) / 3.0,
        segment_indices=np.zeros(t, np.int64),
    )


def test_h0_gives_length_one_sequences(bundle):
    examples = build_windows(bundle, np.zeros(5, np.int64), h=0)
    assert len(examples) == 5
    for t, ex in enumerate(examples):
        assert ex.sequences[Modality.VISUAL].shape == (1, 3)
        assert ex.sequences[Modality.VISUAL][0, 0] == t


def test_left_padding_repeats_frame_zero(bundle):
    examples = build_windows(bundle, np.zeros(5, np.int64), h=2)
    first = examples[0].sequences[Modality.VISUAL]
    np.testing.assert_array_equal(first[:, 0], [0.0, 0.0, 0.0])


def test_window_contents_match_index_oracle(bundle):
    h = 2
    examples = build_windows(bundle, np.arange(5) % 10, h=h)
    assert len(examples) == 5
    for t, ex in enumerate(examples):
        seq = ex.sequences[Modality.AUDIO][:, 0]
        expected = [max(0, j) for j in range(t - h, t + 1)]
        np.testing.assert_array_equal(seq, expected)
        assert len(seq) == h + 1
        assert ex.label == t % 10


def test_label_length_mismatch_rejected(bundle):
    with pytest.raises(InvalidInputError):
        build_windows(bundle, np.zeros(4, np.int64), h=1)


def test_window_indices_edges():
    assert window_indices(0, 3) == [0, 0, 0, 0]
    assert window_indices(5, 2) == [3, 4, 5]
    assert window_indices(1, 0) == [1]


def test_frame_labels_expand_scores():
    annotation = AnnotationSet("v", "a", (3, 7))
    segment_indices = np.array([0, 0, 0, 1, 1])
    np.testing.assert_array_equal(frame_labels(annotation, segment_indices), [2, 2, 2, 6, 6])


def test_frame_labels_out_of_range_segment():
    annotation = AnnotationSet("v", "a", (3,))
    with pytest.raises(InvalidInputError):
        frame_labels(annotation, np.array([0, 1]))


def test_synthetic_bundle_is_label_consistent():
    bundle, annotation = make_class_bundle("syn", duration_s=30.0, seed=4)
    labels = frame_labels(annotation, bundle.segment_indices)
    assert bundle.frame_count == 90
    assert labels.min() >= 0 and labels.max() <= 9
