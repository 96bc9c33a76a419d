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

#pragma once

#include <optional>
#include <span>
#include <string_view>

// Data-parallel inner loops of the wave-packet quadrature. Every kernel has a
// scalar reference implementation and, on x86-64, an AVX2 variant selected at
// runtime. The variants are equivalence-tested against the reference.

namespace ifm::simd {

enum class Level { scalar, avx2 };

std::string_view to_string(Level level) noexcept;
std::optional<Level> parse_level(std::string_view name) noexcept;

/// Best level supported by this build and CPU.
Level detected_level() noexcept;

/// Level used by the dispatching entry points. Defaults to detected_level(),
/// or to the value of the IFM_SIMD environment variable ("scalar" / "avx2")
/// when that names a supported level.
Level active_level() noexcept;

/// Throws DomainError when the level is not supported here.
void set_level(Level level);

bool supported(Level level) noexcept;

/// out[i] = exp(-x[i]^2) / ((1-c)^2 + 4c sin^2(s*x[i]/2)), with s the phase
/// scale (psi per unit detuning) and c the loop gain. This is the Gaussian
/// spectral weight over the Airy denominator. `out` must be at least as long
/// as `x`.
void gaussian_airy(std::span<const double> x, double phase_scale, double loop_gain, std::span<double> out);

namespace scalar {
void gaussian_airy(std::span<const double> x, double phase_scale, double loop_gain, std::span<double> out);
}

#if defined(IFM_HAVE_AVX2_KERNELS)
namespace avx2 {
void gaussian_airy(std::span<const double> x, double phase_scale, double loop_gain, std::span<double> out);
}
#endif

}  // namespace ifm::simd
