import numpy as np
import pytest

from eduvsum.core import AnnotationSet
from eduvsum.errors import InvalidInputError
from eduvsum.eval import plot_prediction_curves


def test_plot_written_non_empty(tmp_path):
    annotation = AnnotationSet("v1", "a", (3, 7, 10, 1, 5))
    out = plot_prediction_curves(annotation, np.array([3.2, 6.8, 9.1, 2.0, 5.0]),
                                 tmp_path / "curves" / "v1.png")
    assert out.is_file()
    assert out.stat().st_size > 0


def test_perfect_predictions_plot(tmp_path):
    annotation = AnnotationSet("v1", "a", (4, 4, 8))
    out = plot_prediction_curves(annotation, np.array([4.0, 4.0, 8.0]), tmp_path / "p.png",
                                 caption="Top-1 100.0%")
    assert out.stat().st_size > 0


def test_length_mismatch_rejected(tmp_path):
    annotation = AnnotationSet("v1", "a", (4, 4))
    with pytest.raises(InvalidInputError):
        plot_prediction_curves(annotation, np.array([4.0]), tmp_path / "x.png")


def test_unwritable_path_raises_io_error(tmp_path):
    annotation = AnnotationSet("v1", "a", (4,))
    target = tmp_path / "blocked"
    target.write_text("i am a file, not a directory")
    with pytest.raises(OSError):
        plot_prediction_curves(annotation, np.array([4.0]), target / "x.png")
