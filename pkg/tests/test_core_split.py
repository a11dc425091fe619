import itertools

import pytest
from hypothesis import given, settings, strategies as st

from eduvsum.core import DatasetManifest, VideoRecord, split_dataset
from eduvsum.errors import InvalidInputError, StratificationError


def make_manifest(topic_sizes):
    videos = []
    for topic, n in topic_sizes.items():
        for i in range(n):
            videos.append(
                VideoRecord(
                    video_id=f"{topic}-{i:03d}",
                    media_path=f"/media/{topic}-{i}.mp4",
                    duration=60.0,
                    native_fps=30.0,
                    topic=topic,
                )
            )
    return DatasetManifest(videos=tuple(videos))


def test_98_videos_paper_style_split():
    # Corpus shape: five topics (18, 18, 18, 23, 21) -> 98 videos total.
    manifest = make_manifest({"cs": 18, "python": 18, "ml": 18, "history": 23, "iot": 21})
    spec = split_dataset(manifest, 0.847, seed=1)
    assert len(spec.train_ids) == 83
    assert len(spec.test_ids) == 15
    assert set(spec.train_ids) | set(spec.test_ids) == set(manifest.video_ids)
    assert not set(spec.train_ids) & set(spec.test_ids)


def test_deterministic_for_fixed_seed():
    manifest = make_manifest({"only": 10})
    a = split_dataset(manifest, 0.8, seed=7)
    b = split_dataset(manifest, 0.8, seed=7)
    assert a == b
    c = split_dataset(manifest, 0.8, seed=8)
    assert c != a  # overwhelmingly likely for 10 videos


def test_two_topics_proportional():
    manifest = make_manifest({"a": 5, "b": 5})
    spec = split_dataset(manifest, 0.8, seed=3)
    for topic in ("a", "b"):
        train_t = [v for v in spec.train_ids if v.startswith(topic)]
        test_t = [v for v in spec.test_ids if v.startswith(topic)]
        assert len(train_t) == 4
        assert len(test_t) == 1
    # oracle: enumerate all stratified 4+4 partitions and confirm the proportion
    # bound |k_t - 5 * 0.8| <= 1 admits exactly k_t = 4 when totals must be 8
    valid = [
        (ka, kb)
        for ka, kb in itertools.product(range(6), range(6))
        if ka + kb == 8 and abs(ka - 4.0) <= 1 and abs(kb - 4.0) <= 1
    ]
    assert (4, 4) in valid
    for ka, kb in valid:
        assert abs(ka - 4) <= 1 and abs(kb - 4) <= 1


def test_small_topic_rejected():
    manifest = make_manifest({"big": 5, "tiny": 1})
    with pytest.raises(StratificationError) as exc:
        split_dataset(manifest, 0.8, seed=0)
    assert "tiny" in str(exc.value)


def test_bad_fraction_rejected():
    manifest = make_manifest({"a": 4})
    for frac in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(InvalidInputError):
            split_dataset(manifest, frac, seed=0)


@settings(max_examples=50, deadline=None)
@given(
    sizes=st.lists(st.integers(min_value=2, max_value=12), min_size=1, max_size=5),
    fraction=st.floats(min_value=0.1, max_value=0.9),
    seed=st.integers(min_value=0, max_value=2**31),
)
def test_split_is_partition_and_stratified(sizes, fraction, seed):
    manifest = make_manifest({f"t{i}": n for i, n in enumerate(sizes)})
    spec = split_dataset(manifest, fraction, seed)
    train, test = set(spec.train_ids), set(spec.test_ids)
    assert not train & test
    assert train | test == set(manifest.video_ids)
    assert len(train) == round(len(manifest.videos) * fraction)
    for i, n in enumerate(sizes):
        k = sum(1 for v in train if v.startswith(f"t{i}-"))
        assert abs(k - n * fraction) <= 1.0
