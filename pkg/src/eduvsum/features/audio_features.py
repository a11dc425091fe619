"""Short-term audio analysis: 34 base descriptors plus their first-order deltas.

Per analysis window of the mono waveform (default 50 ms window, 25 ms step):

    0      zero-crossing rate
    1      energy
    2      entropy of energy
    3      spectral centroid
    4      spectral spread
    5      spectral entropy
    6      spectral flux
    7      spectral roll-off
    8-20   13 cepstral coefficients (mel scale)
    21-32  12 chroma coefficients
    33     chroma deviation

Columns 34-67 are the frame-to-frame differences of columns 0-33, with the
first row zeroed, for a fixed total of 68 features per window.
"""

from __future__ import annotations

import numpy as np
from scipy.fftpack import dct

from eduvsum.errors import InvalidInputError, MissingModalityError
from eduvsum.ingest.audio import AudioTrack

EPS = 1e-10

N_BASE_FEATURES = 34
N_FEATURES = 68

DEFAULT_WINDOW = 0.05
DEFAULT_STEP = 0.025

_N_MFCC = 13
_N_CHROMA = 12
_N_MEL_FILTERS = 26
_ROLLOFF_FRACTION = 0.90
_ENTROPY_BLOCKS = 10


def window_count(n_samples: int, window_samples: int, step_samples: int) -> int:
    """Number of full analysis windows: floor((N - W) / S) + 1."""
    if n_samples < window_samples:
        return 0
    return (n_samples - window_samples) // step_samples + 1


def _frame_signal(x: np.ndarray, window: int, step: int) -> np.ndarray:
    n = window_count(len(x), window, step)
    idx = np.arange(window)[None, :] + step * np.arange(n)[:, None]
    return x[idx]


def _zero_crossing_rate(frames: np.ndarray) -> np.ndarray:
    signs = np.sign(frames)
    crossings = np.abs(np.diff(signs, axis=1)).sum(axis=1) / 2.0
    return crossings / (frames.shape[1] - 1)


def _energy(frames: np.ndarray) -> np.ndarray:
    return (frames**2).sum(axis=1) / frames.shape[1]


def _energy_entropy(frames: np.ndarray, n_blocks: int = _ENTROPY_BLOCKS) -> np.ndarray:
    n, width = frames.shape
    usable = (width // n_blocks) * n_blocks
    blocks = frames[:, :usable].reshape(n, n_blocks, -1)
    block_energy = (blocks**2).sum(axis=2)
    total = block_energy.sum(axis=1, keepdims=True) + EPS
    p = block_energy / total
    return -(p * np.log2(p + EPS)).sum(axis=1)


def _magnitude_spectra(frames: np.ndarray) -> np.ndarray:
    spectra = np.abs(np.fft.rfft(frames, axis=1))[:, 1:]
    return spectra / frames.shape[1]


def _spectral_centroid_spread(spectra: np.ndarray, sample_rate: int) -> tuple[np.ndarray, np.ndarray]:
    n_bins = spectra.shape[1]
    freqs = (np.arange(1, n_bins + 1)) * (sample_rate / 2.0) / n_bins
    peak = spectra.max(axis=1, keepdims=True)
    xt = spectra / (peak + EPS)
    den = xt.sum(axis=1) + EPS
    centroid = (xt * freqs).sum(axis=1) / den
    spread = np.sqrt(((freqs[None, :] - centroid[:, None]) ** 2 * xt).sum(axis=1) / den)
    half_rate = sample_rate / 2.0
    return centroid / half_rate, spread / half_rate


def _spectral_entropy(spectra: np.ndarray, n_blocks: int = _ENTROPY_BLOCKS) -> np.ndarray:
    n, width = spectra.shape
    usable = (width // n_blocks) * n_blocks
    blocks = (spectra[:, :usable] ** 2).reshape(n, n_blocks, -1).sum(axis=2)
    total = blocks.sum(axis=1, keepdims=True) + EPS
    p = blocks / total
    return -(p * np.log2(p + EPS)).sum(axis=1)


def _spectral_flux(spectra: np.ndarray) -> np.ndarray:
    normed = spectra / (spectra.sum(axis=1, keepdims=True) + EPS)
    flux = np.zeros(len(spectra))
    if len(spectra) > 1:
        flux[1:] = ((normed[1:] - normed[:-1]) ** 2).sum(axis=1)
    return flux


def _spectral_rolloff(spectra: np.ndarray, fraction: float = _ROLLOFF_FRACTION) -> np.ndarray:
    power = spectra**2
    total = power.sum(axis=1)
    cumulative = np.cumsum(power, axis=1)
    threshold = fraction * total[:, None]
    hit = cumulative >= threshold
    index = np.where(hit.any(axis=1), hit.argmax(axis=1), 0)
    rolloff = index.astype(np.float64) / power.shape[1]
    rolloff[total <= EPS] = 0.0
    return rolloff


def _hz_to_mel(hz):
    return 2595.0 * np.log10(1.0 + np.asarray(hz) / 700.0)


def _mel_to_hz(mel):
    return 700.0 * (10.0 ** (np.asarray(mel) / 2595.0) - 1.0)


def _mel_filterbank(n_bins: int, sample_rate: int, n_filters: int = _N_MEL_FILTERS) -> np.ndarray:
    # triangular filters spaced uniformly on the mel scale over (0, fs/2]
    low_mel, high_mel = _hz_to_mel(0.0), _hz_to_mel(sample_rate / 2.0)
    mel_points = np.linspace(low_mel, high_mel, n_filters + 2)
    hz_points = _mel_to_hz(mel_points)
    bin_freqs = np.arange(1, n_bins + 1) * (sample_rate / 2.0) / n_bins
    bank = np.zeros((n_filters, n_bins))
    for m in range(n_filters):
        left, center, right = hz_points[m], hz_points[m + 1], hz_points[m + 2]
        rising = (bin_freqs - left) / max(center - left, EPS)
        falling = (right - bin_freqs) / max(right - center, EPS)
        bank[m] = np.clip(np.minimum(rising, falling), 0.0, None)
    return bank


def _mfcc(spectra: np.ndarray, filterbank: np.ndarray, n_coeffs: int = _N_MFCC) -> np.ndarray:
    mel_energy = spectra @ filterbank.T
    log_energy = np.log10(mel_energy + EPS)
    return dct(log_energy, type=2, axis=1, norm="ortho")[:, :n_coeffs]


def _chroma_map(n_bins: int, sample_rate: int) -> np.ndarray:
    """Pitch class (0-11) of every positive-frequency bin."""
    freqs = np.arange(1, n_bins + 1) * (sample_rate / 2.0) / n_bins
    classes = np.round(12.0 * np.log2(freqs / 440.0)).astype(int) % 12
    return classes


def _chroma(spectra: np.ndarray, classes: np.ndarray) -> np.ndarray:
    power = spectra**2
    n = len(spectra)
    chroma = np.zeros((n, _N_CHROMA))
    for c in range(_N_CHROMA):
        mask = classes == c
        if mask.any():
            chroma[:, c] = power[:, mask].sum(axis=1)
    chroma /= power.sum(axis=1, keepdims=True) + EPS
    return chroma


_CHUNK_WINDOWS = 8192


def extract_audio_features(
    track: AudioTrack,
    window: float = DEFAULT_WINDOW,
    step: float = DEFAULT_STEP,
) -> np.ndarray:
    """Return the n_a x 68 short-term feature matrix for a mono track.

    Windows are processed in bounded chunks so hour-long tracks never
    materialize the full framed signal.
    """
    if not window > step > 0:
        raise InvalidInputError(f"need window > step > 0, got window={window}, step={step}")
    rate = track.sample_rate
    window_samples = int(round(window * rate))
    step_samples = int(round(step * rate))
    samples = track.samples.astype(np.float64)
    n_windows = window_count(len(samples), window_samples, step_samples)
    if n_windows == 0:
        raise MissingModalityError(
            "audio", f"track of {track.duration:.3f}s shorter than analysis window {window}s"
        )

    n_bins = window_samples // 2  # rfft bins minus DC
    filterbank = _mel_filterbank(n_bins, rate)
    chroma_classes = _chroma_map(n_bins, rate)

    base = np.empty((n_windows, N_BASE_FEATURES))
    prev_spectrum: np.ndarray | None = None
    for begin in range(0, n_windows, _CHUNK_WINDOWS):
        end = min(begin + _CHUNK_WINDOWS, n_windows)
        first_sample = begin * step_samples
        last_sample = (end - 1) * step_samples + window_samples
        frames = _frame_signal(samples[first_sample:last_sample], window_samples, step_samples)
        spectra = _magnitude_spectra(frames)

        block = base[begin:end]
        block[:, 0] = _zero_crossing_rate(frames)
        block[:, 1] = _energy(frames)
        block[:, 2] = _energy_entropy(frames)
        centroid, spread = _spectral_centroid_spread(spectra, rate)
        block[:, 3] = centroid
        block[:, 4] = spread
        block[:, 5] = _spectral_entropy(spectra)
        if prev_spectrum is None:
            block[:, 6] = _spectral_flux(spectra)
        else:
            block[:, 6] = _spectral_flux(np.vstack([prev_spectrum, spectra]))[1:]
        block[:, 7] = _spectral_rolloff(spectra)
        block[:, 8 : 8 + _N_MFCC] = _mfcc(spectra, filterbank)
        chroma = _chroma(spectra, chroma_classes)
        block[:, 21 : 21 + _N_CHROMA] = chroma
        block[:, 33] = chroma.std(axis=1)
        prev_spectrum = spectra[-1:]

    deltas = np.zeros_like(base)
    deltas[1:] = np.diff(base, axis=0)
    features = np.hstack([base, deltas]).astype(np.float32)
    assert features.shape[1] == N_FEATURES
    return features
