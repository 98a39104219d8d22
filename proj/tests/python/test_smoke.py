# Copyright 2026 The sppkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import numpy as np
import pytest

import sppkit


def test_stft_round_trip():
    rng = np.random.default_rng(0)
    x = rng.normal(scale=0.3, size=sppkit.SAMPLE_RATE)
    spec = sppkit.stft(x)
    assert spec.shape == (129, 124)
    y = sppkit.istft(spec)
    interior = slice(256, len(y) - 256)
    assert np.max(np.abs(y[interior] - x[interior])) < 1e-9


def test_posterior_and_target_broadcast():
    y = np.array([0.0, 1.0, 10.0])
    p = sppkit.posterior_spp(y, 1.0)
    assert p.shape == (3,)
    assert np.all((p >= 0) & (p <= 1))
    assert np.all(np.diff(p) > 0)
    xi = 3.0
    target = sppkit.target_spp(y, xi, 1.0)
    same = sppkit.posterior_spp(y, 1.0, 10 * np.log10(xi), 1 / xi)
    np.testing.assert_allclose(target, same, atol=1e-12)


def test_lsa_gain_bounds():
    g = sppkit.lsa_gain(np.logspace(-3, 3, 50), 2.0)
    assert np.all((g > 0) & (g <= 1))


def test_enhance_statistical():
    u = sppkit.make_utterance(0.0, 3, 1.0, "white")
    r = sppkit.enhance(u["noisy"])
    assert r["audio"].shape == u["noisy"].shape
    assert r["gain"].shape == r["spp"].shape == r["noise_psd"].shape
    assert np.all((r["gain"] > 0) & (r["gain"] <= 1))
    before = sppkit.segmental_snr(u["clean"], u["noisy"])
    after = sppkit.segmental_snr(u["clean"], r["audio"])
    assert after > before


def test_neural_model_round_trip(tmp_path):
    model = sppkit.random_model("attention", 3)
    assert model.variant == "attention"
    path = tmp_path / "m.sppm"
    model.save(path)
    loaded = sppkit.load_model(path)
    features = np.log(np.abs(sppkit.stft(np.ones(4000) * 0.1)) ** 2 + 1e-12)
    np.testing.assert_array_equal(model.forward(features), loaded.forward(features))
    u = sppkit.make_utterance(5.0, 1, 0.5)
    r = sppkit.enhance(u["noisy"], spp="nn", model=loaded)
    assert np.all((r["spp"] > 0) & (r["spp"] < 1))


def test_metrics_and_errors():
    assert sppkit.log_err(np.ones((2, 3)), np.ones((2, 3))) == 0.0
    assert sppkit.auc(np.array([0.9, 0.1]), np.array([1.0, 0.0])) == 1.0
    assert sppkit.kl_divergence(np.array([0.5]), np.array([0.5]), full_binary=True) == 0.0
    with pytest.raises(sppkit.InvalidConfig):
        sppkit.enhance(np.zeros(4000), spp="nn")
    with pytest.raises(sppkit.IoError):
        sppkit.load_model("/nonexistent/model.sppm")
