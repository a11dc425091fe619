import itertools

import numpy as np
import pytest
import torch

from eduvsum.errors import ContractError, InvalidConfigError
from eduvsum.features import Modality
from eduvsum.model import (
    FusionClassifier,
    ModelConfig,
    PredictionDistribution,
    TrainedModel,
    expected_parameter_count,
)

DIMS = {"visual": 16, "audio": 68, "text": 24}

MODALITY_SUBSETS = [
    s for r in (1, 2, 3) for s in itertools.combinations(("visual", "audio", "text"), r)
]


def make_config(subset=("visual", "audio", "text"), h=2, **kw):
    return ModelConfig(
        use_visual="visual" in subset,
        use_audio="audio" in subset,
        use_text="text" in subset,
        history_window=h,
        visual_dim=DIMS["visual"],
        audio_dim=DIMS["audio"],
        text_dim=DIMS["text"],
        **kw,
    )


def random_inputs(config, batch=4, seed=0):
    rng = np.random.default_rng(seed)
    steps = config.history_window + 1
    return {
        m.value: torch.from_numpy(
            rng.normal(size=(batch, steps, config.modality_dim(m))).astype(np.float32)
        )
        for m in config.enabled_modalities()
    }


def test_output_is_distribution_all_28_configs():
    for h in (0, 1, 2, 3):
        for subset in MODALITY_SUBSETS:
            config = make_config(subset, h)
            torch.manual_seed(0)
            module = FusionClassifier(config).eval()
            with torch.no_grad():
                logits = module(random_inputs(config))
            probs = torch.softmax(logits, dim=1).numpy()
            assert probs.shape == (4, 10)
            np.testing.assert_allclose(probs.sum(axis=1), 1.0, atol=1e-5)
            assert (probs >= 0).all()


def test_fused_width_three_modalities_h2():
    config = make_config(("visual", "audio", "text"), h=2)
    torch.manual_seed(0)
    module = FusionClassifier(config).eval()
    captured = {}

    def capture(mod, args, out):
        captured["shape"] = tuple(args[0].shape)

    module.shared.register_forward_hook(capture)
    with torch.no_grad():
        module(random_inputs(config, batch=2))
    assert captured["shape"] == (2, 3, 384)  # (h+1) x 128 * 3 per example
    assert module.fused_width == 384


def test_single_modality_h0_still_valid():
    config = make_config(("visual",), h=0)
    torch.manual_seed(0)
    module = FusionClassifier(config).eval()
    model = TrainedModel(config, module)
    dist = model.forward_one({Modality.VISUAL: np.zeros((1, 16), np.float32)})
    assert dist.probs.shape == (10,)
    assert abs(dist.probs.sum() - 1.0) <= 1e-5


# Hand-computed closed forms for DIMS above:
#   bilstm(d) = 2 * (4*64*(d + 64) + 2*4*64) = 512 d + 33792
#   dense stack = 128*32+32 + 32*16+16 + 16*10+10 = 4826
HAND_COUNTS = {
    ("visual",): (512 * 16 + 33792) + (512 * 128 + 33792) + 4826,
    ("visual", "audio"): (512 * 16 + 33792) + (512 * 68 + 33792) + (512 * 256 + 33792) + 4826,
    ("visual", "audio", "text"): (512 * 16 + 33792) + (512 * 68 + 33792) + (512 * 24 + 33792)
    + (512 * 384 + 33792) + 4826,
}


@pytest.mark.parametrize("subset", list(HAND_COUNTS))
def test_parameter_count_matches_hand_derivation(subset):
    config = make_config(subset)
    module = FusionClassifier(config)
    actual = sum(p.numel() for p in module.parameters() if p.requires_grad)
    assert actual == HAND_COUNTS[subset]
    assert actual == expected_parameter_count(config)


@pytest.mark.parametrize("subset", MODALITY_SUBSETS)
def test_parameter_count_closed_form_all_subsets(subset):
    config = make_config(subset)
    module = FusionClassifier(config)
    actual = sum(p.numel() for p in module.parameters() if p.requires_grad)
    assert actual == expected_parameter_count(config)


def test_ablation_strictly_reduces_parameters():
    full = FusionClassifier(make_config(("visual", "audio", "text")))
    count_full = sum(p.numel() for p in full.parameters())
    for subset in (("visual", "audio"), ("visual", "text"), ("audio", "text")):
        ablated = FusionClassifier(make_config(subset))
        assert sum(p.numel() for p in ablated.parameters()) < count_full


def test_inference_is_pure_function():
    config = make_config(("visual", "audio"), h=1)
    torch.manual_seed(3)
    model = TrainedModel(config, FusionClassifier(config))
    arrays = {
        Modality.VISUAL: np.random.default_rng(0).normal(size=(2, 16)).astype(np.float32),
        Modality.AUDIO: np.random.default_rng(1).normal(size=(2, 68)).astype(np.float32),
    }
    a = model.forward_one(arrays)
    b = model.forward_one(arrays)
    np.testing.assert_array_equal(a.probs, b.probs)
    assert a.predicted_score == b.predicted_score


def test_disabled_modality_input_rejected():
    config = make_config(("visual",), h=1)
    module = FusionClassifier(config)
    inputs = random_inputs(make_config(("visual", "audio"), h=1))
    with pytest.raises(ContractError):
        module(inputs)


def test_shape_mismatch_rejected():
    config = make_config(("visual",), h=1)
    module = FusionClassifier(config)
    bad = {"visual": torch.zeros(2, 3, 16)}  # h+1 should be 2
    with pytest.raises(ContractError):
        module(bad)


def test_at_least_one_modality_required():
    with pytest.raises(InvalidConfigError):
        ModelConfig(use_visual=False, use_audio=False, use_text=False)


def test_paper_sizes_locked_without_flag():
    with pytest.raises(InvalidConfigError):
        ModelConfig(rnn_units=8)
    tiny = ModelConfig(rnn_units=8, dense_sizes=(4, 3), allow_custom_sizes=True,
                       visual_dim=4, audio_dim=4, text_dim=4)
    assert tiny.rnn_units == 8


def test_prediction_distribution_tie_breaks_low():
    probs = np.zeros(10)
    probs[2] = 0.5
    probs[7] = 0.5
    dist = PredictionDistribution.from_probs(probs)
    assert dist.predicted_score == 3
