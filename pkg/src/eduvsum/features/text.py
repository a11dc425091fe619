"""Contextual word vectors from subtitle cues, with interpolated timestamps.

Each cue is encoded as one sentence of context; one vector per
wordpiece-merged word. Subtitles carry cue-level timing only, so word
timestamps are interpolated linearly across the cue interval: word i of n
lands at start + (i + 0.5) / n * (end - start).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from eduvsum.errors import InvalidInputError
from eduvsum.features.backends import STUB, BackendSpec, Modality, load_text_encoder, stub_vector
from eduvsum.ingest.subtitles import SubtitleCue


@dataclass(frozen=True)
class WordVector:
    word: str
    timestamp: float
    vector: np.ndarray = field(repr=False)


def word_timestamps(cue: SubtitleCue) -> list[tuple[str, float]]:
    words = cue.text.split()
    span = cue.end - cue.start
    return [
        (w, cue.start + (i + 0.5) * span / len(words))
        for i, w in enumerate(words)
    ]


def _encode_cue_stub(cue: SubtitleCue, spec: BackendSpec) -> list[np.ndarray]:
    # include the full cue text in the hash so the same word in different
    # cues gets a different ("contextual") vector
    return [
        stub_vector(f"{cue.text}\x00{i}\x00{w}".encode(), spec.seed, spec.output_dim)
        for i, w in enumerate(cue.text.split())
    ]


class _BertEncoder:
    def __init__(self, spec: BackendSpec):
        self.tokenizer, self.model = load_text_encoder(spec)

    def encode_cue(self, cue: SubtitleCue) -> list[np.ndarray]:
        import torch

        words = cue.text.split()
        enc = self.tokenizer(words, is_split_into_words=True, return_tensors="pt",
                             truncation=True, max_length=512)
        with torch.no_grad():
            hidden = self.model(**enc).last_hidden_state[0]
        # average the wordpiece vectors belonging to each original word
        word_ids = enc.word_ids(0)
        buckets: dict[int, list[int]] = {}
        for pos, wid in enumerate(word_ids):
            if wid is not None:
                buckets.setdefault(wid, []).append(pos)
        vectors = []
        for i in range(len(words)):
            positions = buckets.get(i)
            if positions:
                vectors.append(hidden[positions].mean(dim=0).numpy().astype(np.float32))
            else:  # word truncated away: fall back to zeros
                vectors.append(np.zeros(hidden.shape[1], np.float32))
        return vectors


def extract_text(cues: list[SubtitleCue], backend: BackendSpec) -> list[WordVector]:
    """One vector per word across all cues, ordered by word timestamp."""
    if backend.modality is not Modality.TEXT:
        raise InvalidInputError(f"expected a TEXT backend, got {backend.modality.value}")
    if not cues:
        return []
    encoder = None if backend.name == STUB else _BertEncoder(backend)
    out: list[WordVector] = []
    for cue in cues:
        vectors = _encode_cue_stub(cue, backend) if encoder is None else encoder.encode_cue(cue)
        for (word, ts), vec in zip(word_timestamps(cue), vectors):
            if vec.shape != (backend.output_dim,):
                raise InvalidInputError(
                    f"text backend emitted dim {vec.shape}, expected ({backend.output_dim},)"
                )
            out.append(WordVector(word, ts, vec))
    out.sort(key=lambda wv: wv.timestamp)
    return out
