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

"""Speech-presence-probability toolkit."""

from ._sppkit import (  # noqa: F401
    SAMPLE_RATE,
    DomainError,
    Error,
    FormatError,
    InvalidConfig,
    IoError,
    Model,
    ShapeMismatch,
    ValidationError,
    auc,
    enhance,
    istft,
    kl_divergence,
    load_model,
    log_err,
    lsa_gain,
    make_utterance,
    posterior_spp,
    random_model,
    read_pair_file,
    segmental_snr,
    stft,
    target_spp,
)

__version__ = "0.1.0"
