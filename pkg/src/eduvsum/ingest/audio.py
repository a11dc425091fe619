"""Audio track extraction: mono waveform at a fixed rate (default 16 kHz).

The embedded stream is decoded with ffmpeg when the binary is available;
otherwise a sidecar `<stem>.wav` next to the media file is accepted. Absence of
both is a missing-modality signal so audio-ablated runs keep working.
"""

from __future__ import annotations

import shutil
import subprocess
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.io import wavfile
from scipy.signal import resample_poly

from eduvsum.errors import DecodeError, MissingModalityError, ValidationError

DEFAULT_AUDIO_RATE = 16_000


@dataclass(frozen=True)
class AudioTrack:
    samples: np.ndarray = field(repr=False)
    sample_rate: int
    duration: float

    def __post_init__(self):
        if self.samples.ndim != 1:
            raise ValidationError("AudioTrack samples must be mono (1-D)")
        implied = len(self.samples) / self.sample_rate
        if abs(implied - self.duration) > 1e-3:
            raise ValidationError(
                f"duration {self.duration}s inconsistent with {len(self.samples)} samples "
                f"at {self.sample_rate} Hz ({implied:.6f}s)"
            )


def _ffmpeg() -> str | None:
    return shutil.which("ffmpeg")


def _ffprobe_has_audio(media_path: Path) -> bool:
    ffprobe = shutil.which("ffprobe")
    if ffprobe is None:
        return False
    proc = subprocess.run(
        [ffprobe, "-v", "error", "-select_streams", "a",
         "-show_entries", "stream=codec_type", "-of", "csv=p=0", str(media_path)],
        capture_output=True, text=True,
    )
    return proc.returncode == 0 and "audio" in proc.stdout


def audio_source_for(media_path: str | Path) -> tuple[str, Path] | None:
    """Locate audio for a media file: ('sidecar', wav) or ('embedded', media)."""
    media_path = Path(media_path)
    sidecar = media_path.with_suffix(".wav")
    if sidecar != media_path and sidecar.is_file():
        return ("sidecar", sidecar)
    if media_path.suffix.lower() == ".wav" and media_path.is_file():
        return ("sidecar", media_path)
    if _ffmpeg() is not None and _ffprobe_has_audio(media_path):
        return ("embedded", media_path)
    return None


def _to_float_mono(data: np.ndarray) -> np.ndarray:
    if data.dtype.kind == "i":
        scale = float(np.iinfo(data.dtype).max)
        data = data.astype(np.float64) / scale
    elif data.dtype.kind == "u":
        info = np.iinfo(data.dtype)
        data = (data.astype(np.float64) - (info.max + 1) / 2) / ((info.max + 1) / 2)
    else:
        data = data.astype(np.float64)
    if data.ndim == 2:
        data = data.mean(axis=1)
    return data


def _read_wav(path: Path) -> tuple[int, np.ndarray]:
    try:
        rate, data = wavfile.read(path)
    except Exception as e:
        raise DecodeError(f"cannot read wav file {path}: {e}") from e
    return rate, _to_float_mono(data)


def _decode_with_ffmpeg(media_path: Path, target_rate: int) -> np.ndarray:
    cmd = [
        _ffmpeg(), "-v", "error", "-i", str(media_path),
        "-f", "f32le", "-acodec", "pcm_f32le", "-ac", "1", "-ar", str(target_rate), "-",
    ]
    proc = subprocess.run(cmd, capture_output=True)
    if proc.returncode != 0:
        raise DecodeError(f"ffmpeg failed on {media_path}: {proc.stderr.decode(errors='replace')}")
    return np.frombuffer(proc.stdout, dtype=np.float32).astype(np.float64)


def extract_audio(media_path: str | Path, target_rate: int = DEFAULT_AUDIO_RATE) -> AudioTrack:
    """Return the mono waveform resampled to `target_rate`.

    Raises MissingModalityError when the video carries no audio stream and no
    sidecar wav exists.
    """
    source = audio_source_for(media_path)
    if source is None:
        raise MissingModalityError("audio", f"no audio stream or sidecar wav for {media_path}")
    kind, path = source
    if kind == "embedded":
        samples = _decode_with_ffmpeg(path, target_rate)
    else:
        rate, samples = _read_wav(path)
        if rate != target_rate:
            frac = Fraction(target_rate, rate)
            samples = resample_poly(samples, frac.numerator, frac.denominator)
    samples = samples.astype(np.float32)
    return AudioTrack(samples=samples, sample_rate=target_rate,
                      duration=len(samples) / target_rate)
