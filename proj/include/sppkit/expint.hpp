// Copyright 2026 The sppkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace sppkit {

/// Exponential integral E1(v) = integral from v to infinity of exp(-t)/t dt.
/// Power series below v = 1, modified Lentz continued fraction above.
/// Absolute error below 1e-10 for all v > 0. Throws DomainError for v <= 0.
double expint_e1(double v);

}  // namespace sppkit
