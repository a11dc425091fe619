import numpy as np
import pytest

from eduvsum.features import WordVector, align_audio_to_frames, align_text_to_frames
from eduvsum.errors import MissingModalityError

WINDOW, STEP = 0.05, 0.025


def test_constant_rows_align_to_constant():
    short_term = np.full((39, 68), 3.25, np.float32)
    frames = np.array([0.0, 1 / 3, 2 / 3])
    aligned = align_audio_to_frames(short_term, frames, WINDOW, STEP)
    assert aligned.shape == (3, 68)
    np.testing.assert_allclose(aligned, 3.25)


def test_rows_per_interval_counts():
    # encode the window index in the feature value, then check which windows
    # each frame averaged by enumerating centers (independent oracle)
    n = 39
    short_term = np.arange(n, dtype=np.float64)[:, None].repeat(2, axis=1)
    frames = np.array([0.0, 1 / 3, 2 / 3])
    centers = WINDOW / 2 + STEP * np.arange(n)
    aligned = align_audio_to_frames(short_term, frames, WINDOW, STEP)

    for t in range(3):
        prev = -np.inf if t == 0 else frames[t - 1]
        members = [i for i in range(n) if prev < centers[i] <= frames[t]]
        if members:
            assert aligned[t, 0] == pytest.approx(np.mean(members))
            assert len(members) == 13
        else:
            nearest = int(np.argmin(np.abs(centers - frames[t])))
            assert aligned[t, 0] == nearest


def test_single_row_fallback():
    short_term = np.array([[7.0, 8.0]])
    frames = np.array([0.0, 1.0, 2.0])
    aligned = align_audio_to_frames(short_term, frames, WINDOW, STEP)
    for row in aligned:
        np.testing.assert_array_equal(row, [7.0, 8.0])


def test_empty_short_term_is_missing_modality():
    with pytest.raises(MissingModalityError):
        align_audio_to_frames(np.zeros((0, 68)), np.array([0.0]), WINDOW, STEP)


def _wv(ts, value, dim=4):
    return WordVector("w", ts, np.full(dim, value, np.float32))


def test_silent_region_gets_zero_rows():
    frames = np.array([0.0, 1.0, 2.0])
    aligned = align_text_to_frames([_wv(0.5, 1.0)], frames, 4)
    np.testing.assert_array_equal(aligned[0], 0.0)  # nothing at or before frame 0
    np.testing.assert_array_equal(aligned[1], 1.0)
    np.testing.assert_array_equal(aligned[2], 0.0)


def test_no_words_all_zero():
    aligned = align_text_to_frames([], np.array([0.0, 1.0]), 8)
    assert aligned.shape == (2, 8)
    np.testing.assert_array_equal(aligned, 0.0)


def test_one_word_per_interval():
    frames = np.array([1.0, 2.0, 3.0])
    words = [_wv(0.5, 2.0), _wv(1.5, 4.0), _wv(2.5, 6.0)]
    aligned = align_text_to_frames(words, frames, 4)
    np.testing.assert_array_equal(aligned[:, 0], [2.0, 4.0, 6.0])


def test_two_words_in_interval_mean():
    frames = np.array([1.0, 2.0])
    words = [
        WordVector("a", 1.2, np.array([1.0, 3.0], np.float32)),
        WordVector("b", 1.8, np.array([5.0, 1.0], np.float32)),
    ]
    aligned = align_text_to_frames(words, frames, 2)
    manual_mean = (np.array([1.0, 3.0]) + np.array([5.0, 1.0])) / 2
    np.testing.assert_allclose(aligned[1], manual_mean)


def test_words_past_last_frame_dropped():
    frames = np.array([1.0])
    aligned = align_text_to_frames([_wv(5.0, 9.0)], frames, 4)
    np.testing.assert_array_equal(aligned, 0.0)
