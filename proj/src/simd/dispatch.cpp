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

#include <atomic>
#include <cstdlib>
#include <string>

#include "ifm/error.hpp"
#include "ifm/simd/kernels.hpp"

namespace ifm::simd {

namespace {

Level initial_level() noexcept {
    if (const char *env = std::getenv("IFM_SIMD")) {
        if (auto level = parse_level(env); level && supported(*level)) {
            return *level;
        }
    }
    return detected_level();
}

std::atomic<Level> &current() noexcept {
    static std::atomic<Level> level{initial_level()};
    return level;
}

}  // namespace

std::string_view to_string(Level level) noexcept {
    switch (level) {
        case Level::scalar:
            return "scalar";
        case Level::avx2:
            return "avx2";
    }
    return "unknown";
}

std::optional<Level> parse_level(std::string_view name) noexcept {
    if (name == "scalar") {
        return Level::scalar;
    }
    if (name == "avx2") {
        return Level::avx2;
    }
    return std::nullopt;
}

bool supported(Level level) noexcept {
    switch (level) {
        case Level::scalar:
            return true;
        case Level::avx2:
#if defined(IFM_HAVE_AVX2_KERNELS)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

Level detected_level() noexcept { return supported(Level::avx2) ? Level::avx2 : Level::scalar; }

Level active_level() noexcept { return current().load(std::memory_order_relaxed); }

void set_level(Level level) {
    if (!supported(level)) {
        throw DomainError("SIMD level '" + std::string(to_string(level)) + "' is not supported on this machine");
    }
    current().store(level, std::memory_order_relaxed);
}

void gaussian_airy(std::span<const double> x, double phase_scale, double loop_gain, std::span<double> out) {
    if (out.size() < x.size()) {
        throw DomainError("gaussian_airy: output span shorter than input");
    }
#if defined(IFM_HAVE_AVX2_KERNELS)
    if (active_level() == Level::avx2) {
        avx2::gaussian_airy(x, phase_scale, loop_gain, out);
        return;
    }
#endif
    scalar::gaussian_airy(x, phase_scale, loop_gain, out);
}

}  // namespace ifm::simd
