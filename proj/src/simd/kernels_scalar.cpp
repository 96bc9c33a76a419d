// Copyright 2026 The ifm-resonator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstddef>

#include "ifm/simd/kernels.hpp"

namespace ifm::simd::scalar {

void gaussian_airy(std::span<const double> x, double phase_scale, double loop_gain, std::span<double> out) {
    const double half_scale = 0.5 * phase_scale;
    const double detune = 1.0 - loop_gain;
    const double base = detune * detune;
    const double four_c = 4.0 * loop_gain;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double s = std::sin(half_scale * x[i]);
        out[i] = std::exp(-x[i] * x[i]) / (base + four_c * s * s);
    }
}

}  // namespace ifm::simd::scalar
