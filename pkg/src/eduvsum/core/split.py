"""Stratified train/test splitting of a dataset manifest."""

from __future__ import annotations

import random
from collections import defaultdict

from eduvsum.core.types import DatasetManifest, SplitSpec
from eduvsum.errors import InvalidInputError, StratificationError


def split_dataset(manifest: DatasetManifest, train_fraction: float, seed: int) -> SplitSpec:
    """Partition videos into train/test, stratified by topic.

    Within each topic, videos are shuffled with the given seed; topic quotas are
    allocated by largest remainder so that the total train count is
    round(N * train_fraction) and every topic stays within one video of its
    proportional share. Deterministic for a fixed (manifest, fraction, seed).
    """
    if not 0 < train_fraction < 1:
        raise InvalidInputError(f"train_fraction must be in (0, 1), got {train_fraction}")

    by_topic: dict[str, list[str]] = defaultdict(list)
    for v in manifest.videos:
        by_topic[v.topic].append(v.video_id)
    if not by_topic:
        raise InvalidInputError("manifest has no videos")
    for topic, ids in by_topic.items():
        if len(ids) < 2:
            raise StratificationError(topic, len(ids))

    total = len(manifest.videos)
    train_total = round(total * train_fraction)

    topics = sorted(by_topic)
    quotas = {t: len(by_topic[t]) * train_fraction for t in topics}
    counts = {t: int(quotas[t]) for t in topics}
    leftover = train_total - sum(counts.values())
    # Hand the leftover seats to the largest fractional remainders; never exceed
    # a topic's size. Ties resolved by topic name for determinism.
    for t in sorted(topics, key=lambda t: (-(quotas[t] - counts[t]), t)):
        if leftover <= 0:
            break
        if counts[t] < len(by_topic[t]):
            counts[t] += 1
            leftover -= 1

    rng = random.Random(seed)
    train_ids: list[str] = []
    test_ids: list[str] = []
    for t in topics:
        ids = sorted(by_topic[t])
        rng.shuffle(ids)
        train_ids.extend(ids[: counts[t]])
        test_ids.extend(ids[counts[t] :])
    return SplitSpec(train_ids=tuple(sorted(train_ids)), test_ids=tuple(sorted(test_ids)), seed=seed)
