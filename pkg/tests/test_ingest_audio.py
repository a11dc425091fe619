import numpy as np
import pytest

from eduvsum.errors import MissingModalityError
from eduvsum.ingest import AudioTrack, extract_audio

from conftest import sine_wave, write_wav


def test_stereo_downmix_is_channel_average(tmp_path):
    rate = 16_000
    left = np.full(rate, 0.5, np.float32)
    right = np.full(rate, -0.1, np.float32)
    write_wav(tmp_path / "stereo.wav", np.stack([left, right], axis=1), rate)
    track = extract_audio(tmp_path / "stereo.wav")
    assert track.sample_rate == rate
    np.testing.assert_allclose(track.samples, 0.2, atol=1e-6)


def test_silent_clip(tmp_path):
    rate = 16_000
    write_wav(tmp_path / "silent.wav", np.zeros(rate * 2, np.float32), rate)
    track = extract_audio(tmp_path / "silent.wav")
    assert track.duration == pytest.approx(2.0)
    assert np.all(track.samples == 0.0)


def test_missing_audio_is_a_signal_not_a_crash(tmp_path):
    media = tmp_path / "clip.mp4"
    media.write_bytes(b"\x00" * 16)
    with pytest.raises(MissingModalityError) as exc:
        extract_audio(media)
    assert exc.value.modality == "audio"


def test_resampled_to_target_rate(tmp_path):
    write_wav(tmp_path / "hi.wav", sine_wave(440, 1.0, rate=48_000), rate=48_000)
    track = extract_audio(tmp_path / "hi.wav", target_rate=16_000)
    assert track.sample_rate == 16_000
    assert len(track.samples) == 16_000
    assert track.duration == pytest.approx(1.0)


def test_int16_wav_normalized(tmp_path):
    rate = 16_000
    data = (sine_wave(440, 1.0, rate) * 32767).astype(np.int16)
    write_wav(tmp_path / "int.wav", data, rate)
    track = extract_audio(tmp_path / "int.wav")
    assert float(np.abs(track.samples).max()) <= 1.0
    assert float(np.abs(track.samples).max()) == pytest.approx(0.5, rel=1e-2)


def test_duration_consistency_invariant():
    with pytest.raises(Exception):
        AudioTrack(samples=np.zeros(16_000, np.float32), sample_rate=16_000, duration=1.5)
